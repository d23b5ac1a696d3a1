"""
Versioned JSON serialization for the three model families; weights are
plain decimal float64 renderings, so save/load round-trips exactly.
"""

from __future__ import annotations

import json
from dataclasses import asdict

import numpy as np

from .linear import LinearConfig, LinearModel
from .mlp import MLPConfig, MLPModel
from .svm import SVMConfig, SVMModel

FORMAT = "adlvlab.model"
VERSION = 1


def model_to_dict(model) -> dict:
    if isinstance(model, LinearModel):
        body = {
            "family": "linear",
            "beta": model.beta.tolist(),
            "intercept": model.intercept,
            "config": asdict(model.config),
        }
    elif isinstance(model, SVMModel):
        body = {
            "family": "svm",
            "beta": model.beta.tolist(),
            "b": model.b,
            "config": asdict(model.config),
        }
    elif isinstance(model, MLPModel):
        body = {
            "family": "mlp",
            "weights": [w.tolist() for w in model.weights],
            "biases": [b.tolist() for b in model.biases],
            "classes": None if model.classes is None else model.classes.tolist(),
            "config": asdict(model.config),
        }
    else:
        raise TypeError(f"cannot serialize {type(model)!r}")
    return {"format": FORMAT, "version": VERSION, **body}


def model_from_dict(doc: dict):
    if doc.get("format") != FORMAT or doc.get("version") != VERSION:
        raise ValueError("not an adlvlab model document")
    family = doc["family"]
    if family == "linear":
        return LinearModel(
            np.array(doc["beta"], dtype=float),
            float(doc["intercept"]),
            LinearConfig(**doc["config"]),
        )
    if family == "svm":
        return SVMModel(
            np.array(doc["beta"], dtype=float), float(doc["b"]), SVMConfig(**doc["config"])
        )
    if family == "mlp":
        return MLPModel(
            [np.array(w, dtype=float) for w in doc["weights"]],
            [np.array(b, dtype=float) for b in doc["biases"]],
            MLPConfig(**doc["config"]),
            None if doc["classes"] is None else np.array(doc["classes"], dtype=float),
        )
    raise ValueError(f"unknown family {family!r}")


def save_model(path: str, model, meta: dict | None = None) -> None:
    doc = model_to_dict(model)
    if meta:
        doc["meta"] = meta
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_model(path: str):
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
