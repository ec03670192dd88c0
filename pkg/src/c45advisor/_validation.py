"""Input validation helpers for the scikit-learn style estimator."""
from __future__ import annotations

import numbers

import numpy as np

from .dataset import MISSING, AttributeSpec, Dataset, Instance, nominal, numeric
from .model import InductionParams

TARGET = "__target__"


def check_params(min_cases, confidence_factor, prune) -> InductionParams:
    if not isinstance(min_cases, numbers.Real) or isinstance(min_cases, bool):
        raise TypeError(f"min_cases must be a real number, got {type(min_cases).__name__}")
    if not isinstance(confidence_factor, numbers.Real):
        raise TypeError("confidence_factor must be a real number")
    return InductionParams(float(min_cases), float(confidence_factor), bool(prune))


def _is_missing(v) -> bool:
    if v is None:
        return True
    if isinstance(v, str):
        return v == MISSING
    try:
        return bool(np.isnan(v))
    except TypeError:
        return False


def _columns(X):
    """Column names and a list of per-column object arrays."""
    if hasattr(X, "columns") and hasattr(X, "iloc"):
        names = [str(c) for c in X.columns]
        cols = [X.iloc[:, j].to_numpy(dtype=object) for j in range(X.shape[1])]
        kinds = [
            str(X.dtypes.iloc[j]) in ("object", "category", "bool", "string")
            for j in range(X.shape[1])
        ]
        return names, cols, kinds
    arr = np.asarray(X, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected 2-D input, got array of shape {arr.shape}")
    names = [f"x{j}" for j in range(arr.shape[1])]
    return names, [arr[:, j] for j in range(arr.shape[1])], [False] * arr.shape[1]


def _numeric_column(col) -> bool:
    for v in col:
        if _is_missing(v):
            continue
        if isinstance(v, (bool, np.bool_)) or not isinstance(v, (numbers.Real, np.number)):
            return False
    return True


def _resolve_nominal(nominal_features, names) -> set[int]:
    if nominal_features is None:
        return set()
    out = set()
    for f in nominal_features:
        if isinstance(f, (int, np.integer)) and not isinstance(f, bool):
            if not 0 <= f < len(names):
                raise ValueError(f"nominal feature index {f} out of range")
            out.add(int(f))
        elif str(f) in names:
            out.add(names.index(str(f)))
        else:
            raise ValueError(f"unknown nominal feature {f!r}")
    return out


def infer_schema(X, nominal_features=None) -> list[AttributeSpec]:
    """Feature specs for ``X``: nominal if listed, non-numeric, or of a categorical dtype.

    Nominal values are sorted by their text.
    """
    names, cols, categorical = _columns(X)
    forced = _resolve_nominal(nominal_features, names)
    specs = []
    for j, (name, col) in enumerate(zip(names, cols)):
        if j in forced or categorical[j] or not _numeric_column(col):
            values = sorted({_text(v) for v in col if not _is_missing(v)})
            specs.append(nominal(name, values or [MISSING], j))
        else:
            specs.append(numeric(name, j))
    return specs


def _text(v) -> str:
    if isinstance(v, (float, np.floating)) and float(v).is_integer():
        return str(int(v))
    return str(v)


def encode_features(X, specs: list[AttributeSpec], extra_cells: int = 0) -> list[tuple]:
    """Encode rows of ``X`` against ``specs``; unknown nominal values become missing."""
    names, cols, _ = _columns(X)
    if len(cols) != len(specs):
        raise ValueError(f"X has {len(cols)} features, expected {len(specs)}")
    encoded = []
    for spec, col in zip(specs, cols):
        if spec.is_nominal:
            lookup = {v: i for i, v in enumerate(spec.values)}
            encoded.append([None if _is_missing(v) else lookup.get(_text(v)) for v in col])
        else:
            try:
                encoded.append([None if _is_missing(v) else float(v) for v in col])
            except (TypeError, ValueError):
                raise ValueError(f"feature {spec.name!r} must be numeric") from None
    n = len(cols[0]) if cols else 0
    pad = (None,) * extra_cells
    return [tuple(c[i] for c in encoded) + pad for i in range(n)]


def training_dataset(X, y, nominal_features=None, sample_weight=None):
    """Build the training :class:`Dataset` and the sorted class labels."""
    specs = infer_schema(X, nominal_features)
    y = np.asarray(y, dtype=object).ravel()
    rows = encode_features(X, specs)
    if len(rows) != len(y):
        raise ValueError(f"X has {len(rows)} rows but y has {len(y)}")
    if len(rows) == 0:
        raise ValueError("cannot fit on an empty dataset")
    if any(_is_missing(v) for v in y):
        raise ValueError("y contains missing labels")
    classes = np.unique(y.astype(str)) if y.dtype == object and not _numeric_column(y) else np.unique(y)
    labels = [_text(c) for c in classes]
    lookup = {lab: i for i, lab in enumerate(labels)}
    if sample_weight is None:
        weights = np.ones(len(rows))
    else:
        weights = np.asarray(sample_weight, dtype=float).ravel()
        if weights.shape != (len(rows),) or (weights < 0).any():
            raise ValueError("sample_weight must be nonnegative with one entry per row")
    names = {s.name for s in specs}
    target = TARGET
    while target in names:
        target += "_"
    schema = specs + [nominal(target, labels, len(specs))]
    instances = [
        Instance(row + (lookup[_text(label)],), float(w))
        for row, label, w in zip(rows, y, weights)
    ]
    return Dataset(tuple(schema), tuple(instances), target), classes
