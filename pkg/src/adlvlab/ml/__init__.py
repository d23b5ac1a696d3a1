from .linear import LinearConfig, LinearModel, SingularSystemError, fit_linear
from .metrics import (
    Metrics,
    averaged_sensitivity,
    coefficient_table,
    evaluate,
    predict_value,
    sensitivity,
)
from .mlp import (
    MLPConfig,
    MLPModel,
    TrainingDivergedError,
    fit_mlp,
    gradient_check,
    input_gradients,
)
from .serialize import load_model, model_from_dict, model_to_dict, save_model
from .svm import SingleClassError, SVMConfig, SVMModel, fit_svm, hinge_loss

__all__ = [
    "LinearConfig",
    "LinearModel",
    "SingularSystemError",
    "fit_linear",
    "Metrics",
    "averaged_sensitivity",
    "coefficient_table",
    "evaluate",
    "predict_value",
    "sensitivity",
    "MLPConfig",
    "MLPModel",
    "TrainingDivergedError",
    "fit_mlp",
    "gradient_check",
    "input_gradients",
    "save_model",
    "load_model",
    "model_to_dict",
    "model_from_dict",
    "SingleClassError",
    "SVMConfig",
    "SVMModel",
    "fit_svm",
    "hinge_loss",
]
