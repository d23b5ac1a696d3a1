"""
Linear SVM on +-1 labels: classify by the sign of beta . x - b, trained
by epoch-based subgradient descent on mean hinge loss + lam * |beta|^2
with a seed-fixed shuffle and step c / sqrt(epoch).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np


class SingleClassError(ValueError):
    """Training data contains only one label."""


@dataclass(frozen=True)
class SVMConfig:
    lam: float = 0.0
    epochs: int = 200
    step: float = 0.1
    seed: int = 0


@dataclass
class SVMModel:
    beta: np.ndarray
    b: float
    config: SVMConfig = field(default_factory=SVMConfig)

    def decision(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.beta - self.b

    def predict(self, X) -> np.ndarray:
        score = self.decision(X)
        return np.where(score >= 0, 1.0, -1.0)


def hinge_loss(y, score) -> np.ndarray:
    return np.maximum(0.0, 1.0 - np.asarray(y) * np.asarray(score))


def fit_svm(X, Y, lam: float = 0.0, config: SVMConfig | None = None) -> SVMModel:
    cfg = config or SVMConfig(lam=lam)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if set(np.unique(Y)) - {1.0, -1.0}:
        raise ValueError("SVM labels must be +1/-1")
    if len(set(Y.tolist())) < 2:
        raise SingleClassError("need both classes to fit a separator")
    n, p = X.shape
    beta = np.zeros(p)
    b = 0.0
    rng = random.Random(cfg.seed)
    order = list(range(n))
    for epoch in range(1, cfg.epochs + 1):
        eta = cfg.step / np.sqrt(epoch)
        rng.shuffle(order)
        for i in order:
            margin = Y[i] * (X[i] @ beta - b)
            beta *= 1.0 - 2.0 * eta * cfg.lam
            if margin < 1.0:
                beta += eta * Y[i] * X[i]
                b -= eta * Y[i]
    return SVMModel(beta, b, cfg)
