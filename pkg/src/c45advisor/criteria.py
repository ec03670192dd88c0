"""Split criteria: entropy, information gain, split information and gain ratio.

The public functions take a :class:`~c45advisor.dataset.Dataset`; the
underscore helpers work on raw arrays (one column of cells, class codes and
weights) so the tree grower can call them on weighted row subsets without
materializing intermediate datasets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .dataset import ClassFrequency, Dataset
from .exceptions import DataError
from .model import InductionParams, SplitTest

#: Gains at or below this are treated as zero.
MIN_GAIN = 1e-10
#: Slack for comparing floating point gains and weights.
TOL = 1e-12


def _entropy_rows(counts: np.ndarray) -> np.ndarray:
    """Entropy in bits of each row of a (rows, classes) weight matrix."""
    counts = np.atleast_2d(np.asarray(counts, dtype=float))
    totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(totals > 0, counts / totals, 0.0)
        terms = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return terms.sum(axis=1)


def entropy(freq: ClassFrequency | Sequence[float]) -> float:
    """Class entropy in bits; zero for an empty or single-class frequency."""
    counts = freq.as_array() if isinstance(freq, ClassFrequency) else np.asarray(freq, float)
    if (counts < 0).any():
        raise ValueError("class weights must be nonnegative")
    return float(_entropy_rows(counts)[0]) if counts.sum() > 0 else 0.0


def split_info(partition_weights: Iterable[float]) -> float:
    """Entropy of the partition sizes themselves."""
    w = np.asarray(list(partition_weights), dtype=float)
    if (w < 0).any():
        raise ValueError("partition weights must be nonnegative")
    if w.sum() <= 0:
        raise ValueError("split information is undefined for an all-zero partition")
    return float(_entropy_rows(w)[0])


# --------------------------------------------------------------------------
# array-level helpers


def _branch_counts(col, y, w, k, test: SplitTest):
    """(branches x classes) weight matrix over known cells, plus missing class weights."""
    known = ~np.isnan(col)
    missing = np.bincount(y[~known], weights=w[~known], minlength=k)
    if test.is_numeric:
        b = (col[known] > test.threshold).astype(np.intp)
    else:
        b = col[known].astype(np.intp)
    flat = np.bincount(b * k + y[known], weights=w[known], minlength=test.arity * k)
    return flat.reshape(test.arity, k), missing


def _gain_from_counts(branches: np.ndarray, missing_weight: float) -> float:
    known_counts = branches.sum(axis=0)
    known = known_counts.sum()
    if known <= 0:
        return 0.0
    sizes = branches.sum(axis=1)
    info_children = float(np.dot(sizes, _entropy_rows(branches))) / known
    gain = float(_entropy_rows(known_counts)[0]) - info_children
    return (known / (known + missing_weight)) * gain


def _split_parts(branches: np.ndarray, missing_weight: float) -> list[float]:
    parts = list(branches.sum(axis=1))
    if missing_weight > 0:
        parts.append(missing_weight)
    return parts


@dataclass(frozen=True)
class Candidate:
    test: SplitTest
    gain: float
    split_info: float

    @property
    def ratio(self) -> float:
        return self.gain / self.split_info


def _threshold_scan(col, y, w, k, min_cases):
    """Best ``<=`` cut of one numeric column.

    Returns ``(threshold, gain, split_info)`` or ``None``. Every boundary
    between consecutive distinct known values is a candidate; the reported
    threshold is the lower of the two values, which induces the same
    partition as the midpoint.
    """
    known = ~np.isnan(col)
    xs = col[known]
    if xs.size < 2:
        return None
    order = np.argsort(xs, kind="stable")
    xs = xs[order]
    ys = y[known][order]
    ws = w[known][order]
    cuts = np.flatnonzero(xs[1:] > xs[:-1])
    if cuts.size == 0:
        return None
    onehot = np.zeros((xs.size, k))
    onehot[np.arange(xs.size), ys] = ws
    cum = np.cumsum(onehot, axis=0)
    total_counts = cum[-1]
    known_w = total_counts.sum()
    missing_w = float(w[~known].sum())
    left = cum[cuts]
    right = total_counts - left
    left_w = left.sum(axis=1)
    right_w = known_w - left_w
    ok = (left_w >= min_cases - TOL) & (right_w >= min_cases - TOL)
    if not ok.any():
        return None
    info_children = (left_w * _entropy_rows(left) + right_w * _entropy_rows(right)) / known_w
    gains = (known_w / (known_w + missing_w)) * (
        float(_entropy_rows(total_counts)[0]) - info_children
    )
    gains = np.where(ok, gains, -np.inf)
    best = gains.max()
    i = int(np.flatnonzero(gains >= best - TOL)[0])
    parts = [left_w[i], right_w[i]] + ([missing_w] if missing_w > 0 else [])
    return float(xs[cuts[i]]), float(gains[i]), split_info(parts)


def _candidates(
    X, y, w, schema, class_index, k, min_cases, min_gain=MIN_GAIN
) -> list[Candidate]:
    """Admissible tests at a node: gain above ``min_gain`` and two or more
    branches of weight >= min_cases."""
    found = []
    for spec in schema:
        if spec.index == class_index:
            continue
        col = X[:, spec.index]
        if spec.is_nominal:
            test = SplitTest.nominal(spec)
            branches, missing = _branch_counts(col, y, w, k, test)
            if (branches.sum(axis=1) >= min_cases - TOL).sum() < 2:
                continue
            mw = float(missing.sum())
            gain = _gain_from_counts(branches, mw)
            si = split_info(_split_parts(branches, mw))
        else:
            scan = _threshold_scan(col, y, w, k, min_cases)
            if scan is None:
                continue
            thr, gain, si = scan
            test = SplitTest.numeric_le(spec, thr)
        if gain > min_gain and si > 0:
            found.append(Candidate(test, gain, si))
    return found


def _choose(candidates: list[Candidate]) -> Candidate | None:
    """Highest gain ratio among candidates whose gain reaches the mean gain.

    Candidates arrive in schema order, so keeping the first of equal ratios
    implements the schema-order tie-break.
    """
    if not candidates:
        return None
    mean_gain = sum(c.gain for c in candidates) / len(candidates)
    best = None
    for c in candidates:
        if c.gain < mean_gain - 1e-9:
            continue
        if best is None or c.ratio > best.ratio + TOL:
            best = c
    return best


# --------------------------------------------------------------------------
# dataset-level API


def _check_test(ds: Dataset, test: SplitTest) -> np.ndarray:
    spec = ds.attribute(test.attr)
    if spec.is_numeric != test.is_numeric:
        raise DataError(f"test kind does not match attribute {test.attr!r}")
    if spec.is_nominal and tuple(spec.values) != tuple(test.values):
        raise DataError(f"test values do not match attribute {test.attr!r}")
    return ds.matrix[:, spec.index]


def information_gain(ds: Dataset, test: SplitTest) -> float:
    """Reduction in class entropy achieved by ``test``.

    Instances whose test cell is missing are left out of both the parent and
    the child entropies; the result is scaled by the known fraction of the
    total weight.
    """
    col = _check_test(ds, test)
    branches, missing = _branch_counts(col, ds.class_codes, ds.weights, len(ds.classes), test)
    return _gain_from_counts(branches, float(missing.sum()))


def partition_weights(ds: Dataset, test: SplitTest) -> list[float]:
    """Branch weights of ``test`` on ``ds``, plus the missing weight as a last part if nonzero."""
    col = _check_test(ds, test)
    branches, missing = _branch_counts(col, ds.class_codes, ds.weights, len(ds.classes), test)
    return _split_parts(branches, float(missing.sum()))


def gain_ratio(ds: Dataset, test: SplitTest) -> float:
    """Information gain divided by the split information of the test's partition.

    Raises
    ------
    ValueError
        If the partition puts all weight in a single part (zero split information).
    """
    si = split_info(partition_weights(ds, test))
    if si <= 0:
        raise ValueError(f"test on {test.attr!r} has zero split information")
    return information_gain(ds, test) / si


def best_threshold(
    ds: Dataset, attr: str, min_cases: float = InductionParams.min_cases
) -> tuple[float, float] | None:
    """Best binary cut of a numeric attribute by information gain.

    Returns ``(threshold, gain)`` where the threshold is an observed value,
    or ``None`` when no cut leaves ``min_cases`` weight on both sides.
    Equal gains go to the smaller threshold.
    """
    spec = ds.attribute(attr)
    if not spec.is_numeric:
        raise DataError(f"attribute {attr!r} is not numeric")
    scan = _threshold_scan(
        ds.matrix[:, spec.index], ds.class_codes, ds.weights, len(ds.classes), min_cases
    )
    return None if scan is None else (scan[0], scan[1])


def select_split(ds: Dataset, params: InductionParams = InductionParams()) -> SplitTest | None:
    """The test C4.5 would install at the root of ``ds``, or ``None``."""
    if len(ds) == 0:
        return None
    found = _candidates(
        ds.matrix, ds.class_codes, ds.weights, ds.schema, ds.class_index,
        len(ds.classes), params.min_cases,
    )
    chosen = _choose(found)
    return None if chosen is None else chosen.test
