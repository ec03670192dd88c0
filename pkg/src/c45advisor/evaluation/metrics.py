"""Classifier evaluation metrics over weighted, probabilistic predictions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..dataset import ClassFrequency
from ..exceptions import DataError

WEIGHTED_AVG = "Weighted Avg."


@dataclass(frozen=True)
class Prediction:
    true_class: str
    predicted_class: str
    distribution: Mapping[str, float]
    weight: float = 1.0


@dataclass(frozen=True)
class ConfusionMatrix:
    """``cells[i][j]`` is the weight of true class ``i`` predicted as ``j``."""

    classes: tuple[str, ...]
    cells: np.ndarray

    @property
    def total(self) -> float:
        return float(self.cells.sum())

    @property
    def support(self) -> np.ndarray:
        return self.cells.sum(axis=1)

    @property
    def predicted(self) -> np.ndarray:
        return self.cells.sum(axis=0)

    @property
    def correct(self) -> float:
        return float(np.trace(self.cells))


def confusion_matrix(preds: Sequence[Prediction], classes: Sequence[str]) -> ConfusionMatrix:
    classes = tuple(classes)
    pos = {c: i for i, c in enumerate(classes)}
    cells = np.zeros((len(classes), len(classes)))
    for p in preds:
        try:
            cells[pos[p.true_class], pos[p.predicted_class]] += p.weight
        except KeyError as exc:
            raise DataError(f"unknown class label {exc.args[0]!r}") from None
    return ConfusionMatrix(classes, cells)


def _require_total(cm: ConfusionMatrix) -> float:
    total = cm.total
    if total <= 0:
        raise DataError("empty confusion matrix")
    return total


def accuracy(cm: ConfusionMatrix) -> float:
    """Percentage of the evaluated weight that is correctly classified."""
    return 100.0 * cm.correct / _require_total(cm)


def kappa(cm: ConfusionMatrix) -> float:
    """Cohen's kappa; 0 when chance agreement is already perfect."""
    total = _require_total(cm)
    # (p_o - p_e) / (1 - p_e) scaled by total**2: one division, exact on counts
    chance = float(np.dot(cm.support, cm.predicted))
    denom = total * total - chance
    if denom <= 0:
        return 0.0
    return (cm.correct * total - chance) / denom


# --------------------------------------------------------------------------
# probability-vector errors


@dataclass
class ErrorSums:
    """Weighted error sums; instances of this class add up across folds."""

    n_classes: int
    weight: float = 0.0
    abs_err: float = 0.0
    sq_err: float = 0.0
    prior_abs_err: float = 0.0
    prior_sq_err: float = 0.0

    def __add__(self, other: "ErrorSums") -> "ErrorSums":
        return ErrorSums(
            self.n_classes,
            self.weight + other.weight,
            self.abs_err + other.abs_err,
            self.sq_err + other.sq_err,
            self.prior_abs_err + other.prior_abs_err,
            self.prior_sq_err + other.prior_sq_err,
        )

    def metrics(self) -> tuple[float, float, float | None, float | None]:
        """``(mae, rmse, rae_pct, rrse_pct)``; relative errors are ``None`` if undefined."""
        if self.weight <= 0:
            raise DataError("no predictions to score")
        denom = self.weight * self.n_classes
        mae = self.abs_err / denom
        rmse = math.sqrt(self.sq_err / denom)
        rae = 100.0 * self.abs_err / self.prior_abs_err if self.prior_abs_err > 0 else None
        rrse = (
            100.0 * math.sqrt(self.sq_err / self.prior_sq_err) if self.prior_sq_err > 0 else None
        )
        return mae, rmse, rae, rrse


def _prior_vector(prior, classes: Sequence[str]) -> np.ndarray:
    if isinstance(prior, ClassFrequency):
        vec = np.array([prior.per_class.get(c, 0.0) for c in classes], dtype=float)
    elif isinstance(prior, Mapping):
        vec = np.array([prior.get(c, 0.0) for c in classes], dtype=float)
    else:
        vec = np.asarray(prior, dtype=float)
    if vec.sum() <= 0:
        raise DataError("prior class weights sum to zero")
    return vec / vec.sum()


def error_sums(preds: Sequence[Prediction], prior, classes: Sequence[str]) -> ErrorSums:
    q = _prior_vector(prior, classes)
    k = len(classes)
    pos = {c: i for i, c in enumerate(classes)}
    out = ErrorSums(k)
    for p in preds:
        actual = np.zeros(k)
        actual[pos[p.true_class]] = 1.0
        dist = np.array([p.distribution.get(c, 0.0) for c in classes])
        out.weight += p.weight
        out.abs_err += p.weight * float(np.abs(dist - actual).sum())
        out.sq_err += p.weight * float(((dist - actual) ** 2).sum())
        out.prior_abs_err += p.weight * float(np.abs(q - actual).sum())
        out.prior_sq_err += p.weight * float(((q - actual) ** 2).sum())
    return out


def error_metrics(
    preds: Sequence[Prediction], train_prior, classes: Sequence[str] | None = None
) -> tuple[float, float, float | None, float | None]:
    """Mean absolute, root mean squared, relative absolute and root relative squared error.

    Parameters
    ----------
    preds : sequence of Prediction
    train_prior : ClassFrequency, mapping or array
        Class weights of the training data. The relative errors compare
        against a predictor that always outputs these proportions.
    classes : sequence of str, optional
        Class order; defaults to the order of ``train_prior``.

    Returns
    -------
    (mae, rmse, rae_pct, rrse_pct)
        Absolute and squared errors are averaged over instances and classes.
        ``rae_pct`` and ``rrse_pct`` are ``None`` when the baseline makes no
        error at all.
    """
    if not preds:
        raise DataError("no predictions to score")
    if classes is None:
        if isinstance(train_prior, ClassFrequency):
            classes = list(train_prior.per_class)
        elif isinstance(train_prior, Mapping):
            classes = list(train_prior)
        else:
            raise ValueError("classes must be given with an array prior")
    return error_sums(preds, train_prior, classes).metrics()


# --------------------------------------------------------------------------
# ROC


def roc_area(preds: Sequence[Prediction], positive: str) -> float | None:
    """One-vs-rest area under the ROC curve, by the weighted rank statistic.

    The score of an instance is the probability it assigns to ``positive``.
    Tied positive/negative pairs count one half. Returns ``None`` when there
    is no positive or no negative weight.
    """
    scores = np.array([p.distribution.get(positive, 0.0) for p in preds], dtype=float)
    w = np.array([p.weight for p in preds], dtype=float)
    is_pos = np.array([p.true_class == positive for p in preds], dtype=bool)
    w_pos, w_neg = w[is_pos].sum(), w[~is_pos].sum()
    if w_pos <= 0 or w_neg <= 0:
        return None
    uniq, group = np.unique(scores, return_inverse=True)
    pos_at = np.bincount(group, weights=np.where(is_pos, w, 0.0), minlength=uniq.size)
    neg_at = np.bincount(group, weights=np.where(is_pos, 0.0, w), minlength=uniq.size)
    neg_below = np.cumsum(neg_at) - neg_at
    concordant = float(np.dot(pos_at, neg_below + 0.5 * neg_at))
    return concordant / (w_pos * w_neg)


# --------------------------------------------------------------------------
# per-class table


@dataclass(frozen=True)
class ClassMetrics:
    """One row of the detailed-accuracy table.

    ``undefined`` names the fields whose denominator was zero; those fields
    hold 0 (or ``None`` for the ROC area).
    """

    label: str
    support: float
    tp_rate: float
    fp_rate: float
    precision: float
    recall: float
    f_measure: float
    roc_area: float | None
    undefined: tuple[str, ...] = field(default=())

    FIELDS = ("tp_rate", "fp_rate", "precision", "recall", "f_measure", "roc_area")


def _ratio(num: float, den: float) -> float | None:
    return num / den if den > 0 else None


def per_class_metrics(
    cm: ConfusionMatrix, preds: Sequence[Prediction]
) -> tuple[list[ClassMetrics], ClassMetrics]:
    """Per-class rates plus their support-weighted average row.

    Classes without support keep a row but get zero weight in the average;
    the ROC average additionally skips classes whose area is undefined.
    """
    total = _require_total(cm)
    rows = []
    for i, c in enumerate(cm.classes):
        tp = cm.cells[i, i]
        fn = cm.support[i] - tp
        fp = cm.predicted[i] - tp
        tn = total - tp - fn - fp
        undefined = []
        recall = _ratio(tp, tp + fn)
        fp_rate = _ratio(fp, fp + tn)
        precision = _ratio(tp, tp + fp)
        for name, v in (("tp_rate", recall), ("recall", recall),
                        ("fp_rate", fp_rate), ("precision", precision)):
            if v is None:
                undefined.append(name)
        r, p = recall or 0.0, precision or 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        if p + r <= 0:
            undefined.append("f_measure")
        auc = roc_area(preds, c)
        if auc is None:
            undefined.append("roc_area")
        rows.append(ClassMetrics(
            c, float(cm.support[i]), r, fp_rate or 0.0, p, r, f, auc,
            tuple(sorted(set(undefined), key=ClassMetrics.FIELDS.index)),
        ))
    return rows, weighted_average(rows)


def weighted_average(rows: Sequence[ClassMetrics]) -> ClassMetrics:
    support = np.array([r.support for r in rows])
    total = support.sum()

    def avg(name):
        vals = np.array([getattr(r, name) for r in rows], dtype=float)
        return float(np.dot(support, vals) / total) if total > 0 else 0.0

    roc_rows = [r for r in rows if r.roc_area is not None and r.support > 0]
    roc_w = sum(r.support for r in roc_rows)
    roc = sum(r.support * r.roc_area for r in roc_rows) / roc_w if roc_w > 0 else None
    return ClassMetrics(
        WEIGHTED_AVG, float(total), avg("tp_rate"), avg("fp_rate"), avg("precision"),
        avg("recall"), avg("f_measure"), roc, () if roc is not None else ("roc_area",),
    )
