"""Native predictors: model families, tuning, ensembles, and importance."""

from .artifact import KIND_ENSEMBLE, KIND_RL, KIND_SINGLE, ModelArtifact
from .binning import (
    BinMetric,
    BinScheme,
    TARGET_COLUMN_FOR,
    bin_midpoints,
    bin_targets,
    gap_scheme,
    memory_scheme,
    scheme_for,
    time_scheme,
)
from .data import classification_data, fit_scheme, input_matrix, regression_data
from .ensemble import Ensemble, build_ensemble, ensemble_predict
from .importance import permutation_importance
from .metrics import evaluate_classification, evaluate_regression
from .models import CLASSIFY, REGRESS
from .pipeline import AUTO_FAMILY, RL_FAMILIES, train_target
from .standardize import Standardizer
from .tuning import FAMILIES, GRIDS, TrainedPredictor, grid_candidates, train_model

__all__ = [
    "AUTO_FAMILY",
    "BinMetric",
    "BinScheme",
    "CLASSIFY",
    "Ensemble",
    "FAMILIES",
    "GRIDS",
    "KIND_ENSEMBLE",
    "KIND_RL",
    "KIND_SINGLE",
    "ModelArtifact",
    "REGRESS",
    "RL_FAMILIES",
    "Standardizer",
    "TARGET_COLUMN_FOR",
    "TrainedPredictor",
    "bin_midpoints",
    "bin_targets",
    "build_ensemble",
    "classification_data",
    "ensemble_predict",
    "evaluate_classification",
    "evaluate_regression",
    "fit_scheme",
    "gap_scheme",
    "grid_candidates",
    "input_matrix",
    "memory_scheme",
    "permutation_importance",
    "regression_data",
    "scheme_for",
    "time_scheme",
    "train_model",
    "train_target",
]
