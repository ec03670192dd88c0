"""Pessimistic error pruning.

A leaf covering weight ``n`` with ``e`` misclassified is charged
``n * U_CF(e, n)`` errors, where ``U_CF`` is the upper limit of a binomial
confidence interval on the error rate at confidence level ``CF``. A subtree
is replaced by a leaf when the leaf's charge does not exceed the summed
charges of the subtree's leaves by more than 0.1.
"""
from __future__ import annotations

import math
from statistics import NormalDist

import numpy as np

from .dataset import Dataset
from .model import DecisionTree, Internal, Leaf, Node, majority

PRUNE_SLACK = 0.1
COLLAPSE_SLACK = 1e-3


def added_errors(n: float, e: float, cf: float) -> float:
    """Extra errors a leaf is charged on top of its observed ``e``.

    Zero observed errors use the exact binomial bound ``n (1 - cf**(1/n))``,
    ``0 < e < 1`` interpolates linearly towards ``e = 1``, and larger ``e``
    uses the normal approximation with continuity correction.
    """
    if n <= 0:
        return 0.0
    if e < 1:
        base = n * (1 - cf ** (1 / n))
        if e == 0:
            return base
        return base + e * (added_errors(n, 1.0, cf) - base)
    if e + 0.5 >= n:
        return max(n - e, 0.0)
    z = NormalDist().inv_cdf(1 - cf)
    f = (e + 0.5) / n
    r = (
        f + z * z / (2 * n) + z * math.sqrt(f / n - f * f / n + z * z / (4 * n * n))
    ) / (1 + z * z / n)
    return r * n - e


def upper_error_rate(n: float, e: float, cf: float) -> float:
    """``U_CF(e, n)``: pessimistic error rate of a leaf."""
    if n <= 0:
        return 0.0
    return (e + added_errors(n, e, cf)) / n


def estimated_errors(n: float, e: float, cf: float) -> float:
    return e + added_errors(n, e, cf)


def _leaf_for(node: Internal, classes) -> Leaf:
    counts = np.asarray(node.counts, dtype=float)
    n = float(counts.sum())
    c = majority(counts)
    return Leaf(classes[c], n, n - float(counts[c]), tuple(counts))


def _prune(node: Node, cf: float, classes) -> tuple[Node, float, float]:
    """Returns (node, estimated errors, training errors)."""
    if node.is_leaf:
        return node, estimated_errors(node.n, node.e, cf), node.e
    children, est, train = [], 0.0, 0.0
    for child in node.children:
        c, ce, ct = _prune(child, cf, classes)
        children.append(c)
        est += ce
        train += ct
    if node.counts is None:
        raise ValueError("pruning needs class counts; pass the training data")
    leaf = _leaf_for(node, classes)
    leaf_est = estimated_errors(leaf.n, leaf.e, cf)
    # a split that does not change any training prediction is removed outright
    if train >= leaf.e - COLLAPSE_SLACK or leaf_est <= est + PRUNE_SLACK:
        return leaf, leaf_est, leaf.e
    return Internal(node.test, children, node.weight, node.counts), est, train


def _recount(node: Node, X, y, w, classes, parent_dist=None) -> Node:
    k = len(classes)
    counts = np.bincount(y, weights=w, minlength=k)
    total = float(counts.sum())
    dist = tuple(counts / total) if total > 0 else parent_dist
    if node.is_leaf:
        c = list(classes).index(node.class_value)
        if total <= 0:
            return Leaf(node.class_value, 0.0, 0.0, tuple(counts), dist)
        return Leaf(node.class_value, total, total - float(counts[c]), tuple(counts))
    col = X[:, node.test.index]
    known = ~np.isnan(col)
    if node.test.is_numeric:
        b = (col[known] > node.test.threshold).astype(np.intp)
    else:
        b = col[known].astype(np.intp)
    bw = np.bincount(b, weights=w[known], minlength=node.test.arity)
    known_w = bw.sum()
    children = []
    for j, child in enumerate(node.children):
        sel = np.flatnonzero(known)[b == j]
        rows = np.concatenate([sel, np.flatnonzero(~known)])
        frac = bw[j] / known_w if known_w > 0 else 0.0
        cw = np.concatenate([w[sel], w[~known] * frac])
        children.append(_recount(child, X[rows], y[rows], cw, classes, dist))
    return Internal(node.test, children, total, tuple(counts))


def recount(tree: DecisionTree, ds: Dataset) -> DecisionTree:
    """Re-derive every node's class weights by routing ``ds`` through ``tree``."""
    root = _recount(tree.root, ds.matrix, ds.class_codes, ds.weights, tree.classes)
    return DecisionTree(root, tree.schema, tree.class_attr)


def prune(
    tree: DecisionTree, confidence_factor: float = 0.25, training_slice: Dataset | None = None
) -> DecisionTree:
    """Bottom-up pessimistic pruning.

    Parameters
    ----------
    tree : DecisionTree
        Nodes must carry class counts unless ``training_slice`` is given.
    confidence_factor : float
        Confidence level of the binomial upper bound; smaller prunes harder.
    training_slice : Dataset, optional
        When given, node counts are recomputed from this data before pruning.
    """
    if not 0 < confidence_factor < 1:
        raise ValueError("confidence_factor must lie in (0, 1)")
    if training_slice is not None:
        tree = recount(tree, training_slice)
    root, _, _ = _prune(tree.root, confidence_factor, tree.classes)
    return DecisionTree(root, tree.schema, tree.class_attr)
