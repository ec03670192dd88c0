"""Recursive C4.5 tree growth."""
from __future__ import annotations

import numpy as np

from .criteria import TOL, _candidates, _choose
from .dataset import Dataset
from .exceptions import DataError
from .model import DecisionTree, Internal, Leaf, InductionParams, majority
from .pruning import prune


class _Grower:
    def __init__(self, ds: Dataset, params: InductionParams):
        self.X = ds.matrix
        self.y = ds.class_codes
        self.schema = ds.schema
        self.class_index = ds.class_index
        self.classes = ds.classes
        self.k = len(self.classes)
        self.min_cases = params.min_cases

    def grow(self, rows: np.ndarray, w: np.ndarray) -> Leaf | Internal:
        y = self.y[rows]
        counts = np.bincount(y, weights=w, minlength=self.k)
        total = float(counts.sum())
        c = majority(counts)
        leaf = Leaf(self.classes[c], total, total - float(counts[c]), tuple(counts))
        if (counts > 0).sum() <= 1 or total < 2 * self.min_cases - TOL:
            return leaf
        X = self.X[rows]
        args = (X, y, w, self.schema, self.class_index, self.k, self.min_cases)
        chosen = _choose(_candidates(*args))
        if chosen is None:
            # nothing informative (an XOR pattern, say): split on an admissible
            # zero-gain test anyway so deeper tests can separate the classes
            chosen = _choose(_candidates(*args, min_gain=-np.inf))
        if chosen is None:
            return leaf
        test = chosen.test
        col = X[:, test.index]
        known = ~np.isnan(col)
        if test.is_numeric:
            branch = (col[known] > test.threshold).astype(np.intp)
        else:
            branch = col[known].astype(np.intp)
        known_rows = rows[known]
        known_w = w[known]
        missing_rows = rows[~known]
        missing_w = w[~known]
        branch_w = np.bincount(branch, weights=known_w, minlength=test.arity)
        parent_dist = tuple(counts / total)
        children = []
        for j in range(test.arity):
            sel = branch == j
            frac = branch_w[j] / branch_w.sum()
            child_rows = np.concatenate([known_rows[sel], missing_rows])
            child_w = np.concatenate([known_w[sel], missing_w * frac])
            keep = child_w > 0
            if not keep.any():
                children.append(
                    Leaf(self.classes[c], 0.0, 0.0, (0.0,) * self.k, parent_dist)
                )
            else:
                children.append(self.grow(child_rows[keep], child_w[keep]))
        return Internal(test, children, total, tuple(counts))


def build_tree(ds: Dataset, params: InductionParams = InductionParams()) -> DecisionTree:
    """Grow a C4.5 tree on ``ds`` and, unless disabled, prune it.

    Parameters
    ----------
    ds : Dataset
        Class attribute must be set and every class cell present.
    params : InductionParams

    Returns
    -------
    DecisionTree

    Notes
    -----
    A node becomes a leaf when one class carries all its weight, when its
    weight is below ``2 * min_cases``, or when no admissible test exists.
    An impure node whose admissible tests all have zero gain is still split
    on one of them.
    Instances with a missing test value follow every branch with their
    weight scaled by that branch's share of the known weight. A branch that
    receives nothing becomes an empty leaf of the parent's majority class.
    """
    if ds.class_attr is None:
        raise DataError("class attribute is not set")
    if len(ds) == 0 or ds.total_weight <= 0:
        raise DataError("cannot grow a tree on an empty dataset")
    grower = _Grower(ds, params)
    rows = np.arange(len(ds))
    w = ds.weights
    keep = w > 0
    root = grower.grow(rows[keep], w[keep])
    tree = DecisionTree(root, ds.schema, ds.class_attr)
    if params.prune:
        tree = prune(tree, params.confidence_factor)
    return tree
