from .crossval import cross_val_predict, cross_validate, stratified_folds
from .metrics import (
    ClassMetrics,
    ConfusionMatrix,
    ErrorSums,
    Prediction,
    accuracy,
    confusion_matrix,
    error_metrics,
    error_sums,
    kappa,
    per_class_metrics,
    roc_area,
    weighted_average,
)
from .report import EvalReport, build_report, format_report

__all__ = [
    "ClassMetrics",
    "ConfusionMatrix",
    "ErrorSums",
    "EvalReport",
    "Prediction",
    "accuracy",
    "build_report",
    "confusion_matrix",
    "cross_val_predict",
    "cross_validate",
    "error_metrics",
    "error_sums",
    "format_report",
    "kappa",
    "per_class_metrics",
    "roc_area",
    "stratified_folds",
    "weighted_average",
]
