"""
Fully connected ReLU networks with manual backpropagation.

The body is n_layers hidden layers of a fixed width; the head is either a
scalar linear readout (regression, squared loss) or a K-class linear
layer with softmax (classification, cross-entropy).  Training uses
adaptive-moment gradient descent over seed-shuffled minibatches; weight
decay adds lam * sum |W|^2 over all weight matrices (biases exempt) to
the loss.  Everything is deterministic given (data, config).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class TrainingDivergedError(RuntimeError):
    def __init__(self, epoch: int):
        super().__init__(f"loss became non-finite at epoch {epoch}")
        self.epoch = epoch


@dataclass(frozen=True)
class MLPConfig:
    hidden_layers: int = 1
    width: int = 10
    head: str = "regression"  # "regression" | "classification"
    lam: float = 0.0
    seed: int = 0
    epochs: int = 50
    batch_size: int = 256
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8


@dataclass
class MLPModel:
    weights: list[np.ndarray]  # hidden layers then head
    biases: list[np.ndarray]
    config: MLPConfig
    classes: np.ndarray | None = None  # label values, classification only

    def forward(self, X):
        """Returns (hidden preactivations, final output)."""
        h = np.asarray(X, dtype=float)
        pre = []
        for W, b in zip(self.weights[:-1], self.biases[:-1]):
            z = h @ W.T + b
            pre.append(z)
            h = np.maximum(z, 0.0)
        out = h @ self.weights[-1].T + self.biases[-1]
        return pre, out

    def predict(self, X) -> np.ndarray:
        """Numeric prediction: raw output (regression) or the class value
        with maximal softmax probability (classification)."""
        _, out = self.forward(X)
        if self.config.head == "regression":
            return out[:, 0]
        return self.classes[np.argmax(out, axis=1)]

    def probabilities(self, X) -> np.ndarray:
        _, out = self.forward(X)
        return _softmax(out)


def _softmax(logits):
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def _init_params(cfg: MLPConfig, n_in: int, n_out: int, rng):
    sizes = [n_in] + [cfg.width] * cfg.hidden_layers + [n_out]
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes, sizes[1:]):
        weights.append(rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def _loss_and_grads(model: MLPModel, X, Y_enc, *, want_input_grad=False):
    """Summed data loss, parameter gradients, and optionally per-row input
    gradients.  Y_enc: target values (regression) or class indices."""
    cfg = model.config
    h = np.asarray(X, dtype=float)
    acts = [h]
    pres = []
    for W, b in zip(model.weights[:-1], model.biases[:-1]):
        z = h @ W.T + b
        pres.append(z)
        h = np.maximum(z, 0.0)
        acts.append(h)
    out = h @ model.weights[-1].T + model.biases[-1]

    if cfg.head == "regression":
        resid = out[:, 0] - Y_enc
        loss = float(resid @ resid)
        dout = (2.0 * resid)[:, None]
    else:
        probs = _softmax(out)
        picked = probs[np.arange(len(Y_enc)), Y_enc]
        loss = float(-np.log(np.maximum(picked, 1e-300)).sum())
        dout = probs.copy()
        dout[np.arange(len(Y_enc)), Y_enc] -= 1.0

    grads_w = [None] * len(model.weights)
    grads_b = [None] * len(model.biases)
    delta = dout
    for layer in range(len(model.weights) - 1, 0, -1):
        grads_w[layer] = delta.T @ acts[layer]
        grads_b[layer] = delta.sum(axis=0)
        delta = (delta @ model.weights[layer]) * (pres[layer - 1] > 0)
    grads_w[0] = delta.T @ acts[0]
    grads_b[0] = delta.sum(axis=0)
    input_grad = delta @ model.weights[0] if want_input_grad else None
    return loss, grads_w, grads_b, input_grad, pres


def fit_mlp(X, Y, config: MLPConfig | None = None) -> MLPModel:
    cfg = config or MLPConfig()
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    n, p = X.shape
    rng = np.random.default_rng(cfg.seed)
    if cfg.head == "classification":
        classes = np.unique(Y)
        index = {v: k for k, v in enumerate(classes.tolist())}
        Y_enc = np.array([index[v] for v in Y.tolist()], dtype=int)
        n_out = len(classes)
    else:
        classes = None
        Y_enc = Y
        n_out = 1
    weights, biases = _init_params(cfg, p, n_out, rng)
    model = MLPModel(weights, biases, cfg, classes)

    mom_w = [np.zeros_like(w) for w in weights]
    vel_w = [np.zeros_like(w) for w in weights]
    mom_b = [np.zeros_like(b) for b in biases]
    vel_b = [np.zeros_like(b) for b in biases]
    step = 0
    for epoch in range(cfg.epochs):
        order = rng.permutation(n)
        epoch_loss = 0.0
        for lo in range(0, n, cfg.batch_size):
            batch = order[lo : lo + cfg.batch_size]
            loss, gw, gb, _, _ = _loss_and_grads(model, X[batch], Y_enc[batch])
            epoch_loss += loss
            scale = 1.0 / len(batch)
            step += 1
            for k in range(len(weights)):
                g = gw[k] * scale + 2.0 * cfg.lam * weights[k]
                mom_w[k] = cfg.beta1 * mom_w[k] + (1 - cfg.beta1) * g
                vel_w[k] = cfg.beta2 * vel_w[k] + (1 - cfg.beta2) * (g * g)
                mhat = mom_w[k] / (1 - cfg.beta1**step)
                vhat = vel_w[k] / (1 - cfg.beta2**step)
                weights[k] -= cfg.learning_rate * mhat / (np.sqrt(vhat) + cfg.eps)
                g = gb[k] * scale
                mom_b[k] = cfg.beta1 * mom_b[k] + (1 - cfg.beta1) * g
                vel_b[k] = cfg.beta2 * vel_b[k] + (1 - cfg.beta2) * (g * g)
                mhat = mom_b[k] / (1 - cfg.beta1**step)
                vhat = vel_b[k] / (1 - cfg.beta2**step)
                biases[k] -= cfg.learning_rate * mhat / (np.sqrt(vhat) + cfg.eps)
        if not np.isfinite(epoch_loss):
            raise TrainingDivergedError(epoch)
    return model


def input_gradients(model: MLPModel, X, Y) -> np.ndarray:
    """Per-row gradient of the per-sample loss with respect to the inputs."""
    Y = np.asarray(Y, dtype=float)
    if model.config.head == "classification":
        index = {v: k for k, v in enumerate(model.classes.tolist())}
        Y_enc = np.array([index[v] for v in Y.tolist()], dtype=int)
    else:
        Y_enc = Y
    _, _, _, grad, _ = _loss_and_grads(model, X, Y_enc, want_input_grad=True)
    return grad


def gradient_check(model: MLPModel, X, Y, epsilon: float = 1e-5) -> float:
    """Max relative error between analytic and central-difference gradients,
    over both inputs and parameters.  Rows with any hidden preactivation
    within 10*epsilon of the ReLU kink are excluded."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if model.config.head == "classification":
        index = {v: k for k, v in enumerate(model.classes.tolist())}
        Y_enc = np.array([index[v] for v in Y.tolist()], dtype=int)
    else:
        Y_enc = Y

    def full_loss(Xv):
        loss, _, _, _, _ = _loss_and_grads(model, Xv, Y_enc)
        for W in model.weights:
            loss += model.config.lam * float((W * W).sum())
        return loss

    _, gw, gb, ginp, pres = _loss_and_grads(model, X, Y_enc, want_input_grad=True)
    if pres:
        near_kink = np.zeros(len(X), dtype=bool)
        for z in pres:
            near_kink |= (np.abs(z) < 10 * epsilon).any(axis=1)
        keep = ~near_kink
        if not keep.any():
            raise ValueError("every sample sits near a ReLU kink")
        X, Y_enc = X[keep], Y_enc[keep]
        _, gw, gb, ginp, _ = _loss_and_grads(model, X, Y_enc, want_input_grad=True)

    worst = 0.0

    def compare(analytic, numeric):
        nonlocal worst
        denom = max(abs(analytic), abs(numeric), 1e-8)
        worst = max(worst, abs(analytic - numeric) / denom)

    # inputs
    for i in range(min(len(X), 4)):
        for j in range(X.shape[1]):
            Xp = X.copy()
            Xp[i, j] += epsilon
            Xm = X.copy()
            Xm[i, j] -= epsilon
            compare(ginp[i, j], (full_loss(Xp) - full_loss(Xm)) / (2 * epsilon))
    # parameters
    for k, W in enumerate(model.weights):
        flat = W.ravel()
        idxs = range(0, flat.size, max(1, flat.size // 8))
        for pos in idxs:
            saved = flat[pos]
            flat[pos] = saved + epsilon
            up = full_loss(X)
            flat[pos] = saved - epsilon
            down = full_loss(X)
            flat[pos] = saved
            analytic = gw[k].ravel()[pos] + 2 * model.config.lam * saved
            compare(analytic, (up - down) / (2 * epsilon))
    for k, b in enumerate(model.biases):
        for pos in range(0, b.size, max(1, b.size // 4)):
            saved = b[pos]
            b[pos] = saved + epsilon
            up = full_loss(X)
            b[pos] = saved - epsilon
            down = full_loss(X)
            b[pos] = saved
            compare(gb[k][pos], (up - down) / (2 * epsilon))
    return worst
