"""
Evaluation metrics and feature-importance reports.

Accuracy rounds regression outputs to the nearest integer, compares
argmax classes for classifiers, and signs for +-1 separators; mean error
is the mean absolute difference between labels and the model's numeric
prediction.  Saliency for networks is the mean absolute input-gradient
of the loss per feature; linear models report |beta| directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .linear import LinearModel
from .mlp import MLPModel, input_gradients
from .svm import SVMModel


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    mean_error: float


def predict_value(model, X) -> np.ndarray:
    """The model's numeric prediction per row."""
    X = np.asarray(X, dtype=float)
    if isinstance(model, SVMModel):
        return model.predict(X)
    return model.predict(X)


def evaluate(model, X, Y) -> Metrics:
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    pred = predict_value(model, X)
    if isinstance(model, MLPModel) and model.config.head == "classification":
        acc = float(np.mean(pred == Y))
    elif isinstance(model, SVMModel):
        acc = float(np.mean(pred == Y))
    else:
        acc = float(np.mean(np.round(pred) == Y))
    return Metrics(accuracy=acc, mean_error=float(np.mean(np.abs(Y - pred))))


def sensitivity(model, X, Y) -> np.ndarray:
    """Per-feature importance: mean |dL/dx_j| for networks, |beta| for the
    linear families (their coefficient reports)."""
    if isinstance(model, MLPModel):
        return np.abs(input_gradients(model, X, Y)).mean(axis=0)
    if isinstance(model, (LinearModel, SVMModel)):
        return np.abs(model.beta)
    raise TypeError(f"no sensitivity for {type(model)!r}")


def averaged_sensitivity(
    train: Callable[[int], object], X, Y, seeds: Sequence[int]
) -> np.ndarray:
    """Retrain per seed and average the saliency vectors."""
    total = None
    for seed in seeds:
        vec = sensitivity(train(seed), X, Y)
        total = vec if total is None else total + vec
    return total / len(seeds)


def coefficient_table(names: Sequence[str], values) -> str:
    """Two-column plain-text table, values to 2 decimals."""
    width = max(len(n) for n in names)
    lines = [f"{n.ljust(width)}  {v:+.2f}" for n, v in zip(names, values)]
    return "\n".join(lines)
