"""Evaluation report: overall measures, detailed per-class accuracy, text and JSON output."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .metrics import (
    ClassMetrics,
    ConfusionMatrix,
    ErrorSums,
    Prediction,
    accuracy,
    confusion_matrix,
    error_sums,
    kappa,
    per_class_metrics,
)

UNDEFINED = "?"


@dataclass(frozen=True)
class EvalReport:
    accuracy_pct: float
    kappa: float
    mae: float
    rmse: float
    rae_pct: float | None
    rrse_pct: float | None
    per_class: tuple[ClassMetrics, ...]
    weighted_avg: ClassMetrics
    confusion: ConfusionMatrix

    @property
    def n_instances(self) -> float:
        return self.confusion.total

    def to_dict(self) -> dict:
        def row(m: ClassMetrics) -> dict:
            return {
                "class": m.label,
                "support": m.support,
                "tp_rate": m.tp_rate,
                "fp_rate": m.fp_rate,
                "precision": m.precision,
                "recall": m.recall,
                "f_measure": m.f_measure,
                "roc_area": m.roc_area,
                "undefined": list(m.undefined),
            }

        return {
            "instances": self.n_instances,
            "accuracy_pct": self.accuracy_pct,
            "kappa": self.kappa,
            "mae": self.mae,
            "rmse": self.rmse,
            "rae_pct": self.rae_pct,
            "rrse_pct": self.rrse_pct,
            "per_class": [row(m) for m in self.per_class],
            "weighted_avg": row(self.weighted_avg),
            "confusion_matrix": {
                "classes": list(self.confusion.classes),
                "cells": self.confusion.cells.tolist(),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        return format_report(self)


def build_report(
    preds: Sequence[Prediction], classes: Sequence[str], sums: ErrorSums | None = None, prior=None
) -> EvalReport:
    """Score pooled predictions.

    Either precomputed error ``sums`` or a training ``prior`` must be given
    for the error measures.
    """
    cm = confusion_matrix(preds, classes)
    if sums is None:
        if prior is None:
            raise ValueError("need error sums or a training prior")
        sums = error_sums(preds, prior, classes)
    mae, rmse, rae, rrse = sums.metrics()
    rows, avg = per_class_metrics(cm, preds)
    return EvalReport(accuracy(cm), kappa(cm), mae, rmse, rae, rrse, tuple(rows), avg, cm)


def _fmt(value: float | None, spec: str, suffix: str = "") -> str:
    return UNDEFINED if value is None else format(value, spec) + suffix


def format_report(report: EvalReport) -> str:
    overall = [
        ("Correctly Classified Instances %", _fmt(report.accuracy_pct, ".3f", " %")),
        ("Kappa statistic", _fmt(report.kappa, ".4f")),
        ("Mean absolute error", _fmt(report.mae, ".4f")),
        ("Root mean squared error", _fmt(report.rmse, ".4f")),
        ("Relative absolute error %", _fmt(report.rae_pct, ".4f", " %")),
        ("Root relative squared error %", _fmt(report.rrse_pct, ".4f", " %")),
    ]
    widths = [max(len(h), len(v)) for h, v in overall]
    lines = [
        "=== Performance measures ===",
        "",
        "  ".join(h.ljust(w) for (h, _), w in zip(overall, widths)).rstrip(),
        "  ".join(v.ljust(w) for (_, v), w in zip(overall, widths)).rstrip(),
        "",
        "=== Detailed Accuracy By Class ===",
        "",
    ]
    heads = ["TP Rate", "FP Rate", "Precision", "Recall", "F-Measure", "ROC Area", "Class"]
    table = [heads]
    for m in list(report.per_class) + [report.weighted_avg]:
        table.append([
            _fmt(m.tp_rate, ".3f"), _fmt(m.fp_rate, ".3f"), _fmt(m.precision, ".3f"),
            _fmt(m.recall, ".3f"), _fmt(m.f_measure, ".3f"), _fmt(m.roc_area, ".3f"), m.label,
        ])
    cw = [max(len(r[i]) for r in table) for i in range(len(heads))]
    for r in table:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, cw)).rstrip())

    lines += ["", "=== Confusion Matrix ===", ""]
    cm = report.confusion
    letters = [_column_tag(i) for i in range(len(cm.classes))]
    cells = [[f"{v:g}" for v in row] for row in cm.cells]
    width = max([len(t) for t in letters] + [len(c) for row in cells for c in row])
    lines.append(" ".join(t.rjust(width) for t in letters) + "   <-- classified as")
    for tag, cls, row in zip(letters, cm.classes, cells):
        lines.append(" ".join(c.rjust(width) for c in row) + f" | {tag} = {cls}")
    return "\n".join(lines) + "\n"


def _column_tag(i: int) -> str:
    tag = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        tag = chr(ord("a") + r) + tag
    return tag
