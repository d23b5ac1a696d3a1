"""
Linear models f(x) = beta . x - b, fit by least squares (closed form,
ridge optional), coordinate-descent lasso, or deterministic subgradient
descent for the robust l1-fidelity variant.

Regularized objectives are per-sample means, so the strength ``lam`` has
the same meaning at any dataset size: mean residual loss + lam * penalty
(the intercept is never penalized).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class SingularSystemError(RuntimeError):
    """Normal system is singular and lam = 0; refusing to regularize silently."""


@dataclass(frozen=True)
class LinearConfig:
    fidelity: str = "l2"  # "l2" | "l1"
    regularizer: str = "none"  # "none" | "l2" | "l1"
    lam: float = 0.0
    fit_intercept: bool = True
    epochs: int = 200  # subgradient schedule (l1 fidelity)
    step: float = 0.1
    max_sweeps: int = 500  # coordinate descent (l1 regularizer)
    tol: float = 1e-10


@dataclass
class LinearModel:
    beta: np.ndarray
    intercept: float
    config: LinearConfig = field(default_factory=LinearConfig)

    def predict(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.beta - self.intercept


def _as_arrays(X, Y):
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.ndim != 2 or Y.ndim != 1 or X.shape[0] != Y.shape[0] or X.shape[0] == 0:
        raise ValueError("expected X (N, p) and Y (N,) with N >= 1")
    return X, Y


def _fit_ridge(X, Y, cfg: LinearConfig) -> LinearModel:
    n, p = X.shape
    cols = np.hstack([X, -np.ones((n, 1))]) if cfg.fit_intercept else X
    gram = cols.T @ cols
    if cfg.lam > 0:
        penalty = np.eye(cols.shape[1]) * (n * cfg.lam)
        if cfg.fit_intercept:
            penalty[-1, -1] = 0.0
        gram = gram + penalty
    elif np.linalg.matrix_rank(cols) < cols.shape[1]:
        raise SingularSystemError(
            "rank-deficient design with lam = 0; add data or regularize"
        )
    theta = np.linalg.solve(gram, cols.T @ Y)
    if cfg.fit_intercept:
        return LinearModel(theta[:-1].copy(), float(theta[-1]), cfg)
    return LinearModel(theta, 0.0, cfg)


def _fit_lasso(X, Y, cfg: LinearConfig) -> LinearModel:
    # coordinate descent on mean (y - f)^2 + lam * |beta|_1
    n, p = X.shape
    beta = np.zeros(p)
    intercept = 0.0
    col_sq = (X * X).sum(axis=0)
    thresh = n * cfg.lam / 2.0
    resid = Y - X @ beta + intercept
    for _ in range(cfg.max_sweeps):
        biggest = 0.0
        if cfg.fit_intercept:
            # resid = Y - X beta + b is minimized over b at b - mean(resid)
            shift = float(resid.mean())
            intercept -= shift
            resid -= shift
            biggest = abs(shift)
        for j in range(p):
            if col_sq[j] == 0:
                continue
            rho = X[:, j] @ resid + col_sq[j] * beta[j]
            new = np.sign(rho) * max(abs(rho) - thresh, 0.0) / col_sq[j]
            if new != beta[j]:
                resid += X[:, j] * (beta[j] - new)
                biggest = max(biggest, abs(new - beta[j]))
                beta[j] = new
        if biggest < cfg.tol:
            break
    return LinearModel(beta, intercept, cfg)


def _l1_objective(X, Y, beta, intercept, cfg) -> float:
    resid = Y - (X @ beta - intercept)
    value = float(np.abs(resid).mean())
    if cfg.regularizer == "l1":
        value += cfg.lam * float(np.abs(beta).sum())
    elif cfg.regularizer == "l2":
        value += cfg.lam * float(beta @ beta)
    return value


def _fit_l1_fidelity(X, Y, cfg: LinearConfig) -> LinearModel:
    # deterministic full-batch subgradient descent, step c / sqrt(t)
    n, p = X.shape
    beta = np.zeros(p)
    intercept = 0.0
    best = (np.inf, beta.copy(), intercept)
    for t in range(1, cfg.epochs + 1):
        resid = Y - (X @ beta - intercept)
        sign = np.sign(resid)
        grad_beta = -(X.T @ sign) / n
        grad_b = float(sign.mean())
        if cfg.regularizer == "l1":
            grad_beta = grad_beta + cfg.lam * np.sign(beta)
        elif cfg.regularizer == "l2":
            grad_beta = grad_beta + 2.0 * cfg.lam * beta
        eta = cfg.step / np.sqrt(t)
        beta = beta - eta * grad_beta
        if cfg.fit_intercept:
            intercept = intercept - eta * grad_b
        value = _l1_objective(X, Y, beta, intercept, cfg)
        if value < best[0]:
            best = (value, beta.copy(), intercept)
    return LinearModel(best[1], best[2], cfg)


def fit_linear(X, Y, config: LinearConfig | None = None) -> LinearModel:
    """Deterministic fit; the solver is picked by (fidelity, regularizer)."""
    cfg = config or LinearConfig()
    X, Y = _as_arrays(X, Y)
    if cfg.fidelity == "l2" and cfg.regularizer in ("none", "l2"):
        return _fit_ridge(X, Y, cfg)
    if cfg.fidelity == "l2" and cfg.regularizer == "l1":
        return _fit_lasso(X, Y, cfg)
    if cfg.fidelity == "l1":
        return _fit_l1_fidelity(X, Y, cfg)
    raise ValueError(f"unsupported config {cfg}")
