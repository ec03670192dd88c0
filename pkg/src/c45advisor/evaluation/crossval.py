"""Stratified k-fold cross-validation of the tree learner."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..builder import build_tree
from ..dataset import Dataset, class_frequency
from ..exceptions import DataError
from ..model import InductionParams, predict_proba_instance
from .metrics import ErrorSums, Prediction, error_sums
from .report import EvalReport, build_report


def stratified_folds(ds: Dataset, k: int, seed: int = 1) -> list[np.ndarray]:
    """Split instance indices into ``k`` folds with matching class proportions.

    Each class's indices are shuffled with ``seed`` and dealt round-robin;
    the deal continues where the previous class stopped, so fold sizes stay
    within one of each other as well.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > len(ds):
        raise DataError(f"cannot make {k} folds from {len(ds)} instances")
    codes = ds.class_codes
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    slot = 0
    for c in range(len(ds.classes)):
        members = np.flatnonzero(codes == c)
        rng.shuffle(members)
        for idx in members:
            folds[slot].append(int(idx))
            slot = (slot + 1) % k
    return [np.array(sorted(f), dtype=np.intp) for f in folds]


def _run_fold(ds: Dataset, test_idx: np.ndarray, params: InductionParams):
    mask = np.ones(len(ds), dtype=bool)
    mask[test_idx] = False
    train = ds.subset(np.flatnonzero(mask))
    tree = build_tree(train, params)
    classes = ds.classes
    cls_col = ds.class_index
    preds = []
    for i in test_idx:
        inst = ds.instances[i]
        dist = predict_proba_instance(tree, inst)
        preds.append((int(i), Prediction(
            classes[inst.values[cls_col]],
            classes[int(np.argmax(dist))],
            {c: float(p) for c, p in zip(classes, dist)},
            inst.weight,
        )))
    sums = error_sums([p for _, p in preds], class_frequency(train), classes)
    return preds, sums


def cross_val_predict(
    ds: Dataset,
    k: int = 10,
    seed: int = 1,
    params: InductionParams = InductionParams(),
    n_jobs: int = 1,
) -> tuple[list[Prediction], ErrorSums]:
    """Held-out predictions for every instance, in dataset order.

    The returned error sums compare each fold against a baseline that
    predicts that fold's training class proportions.
    """
    folds = stratified_folds(ds, k, seed)
    if n_jobs == 1:
        results = [_run_fold(ds, f, params) for f in folds]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs if n_jobs > 0 else None) as pool:
            results = list(pool.map(lambda f: _run_fold(ds, f, params), folds))
    pooled = sorted((item for preds, _ in results for item in preds), key=lambda t: t[0])
    sums = ErrorSums(len(ds.classes))
    for _, s in results:
        sums = sums + s
    return [p for _, p in pooled], sums


def cross_validate(
    ds: Dataset,
    k: int = 10,
    seed: int = 1,
    params: InductionParams = InductionParams(),
    n_jobs: int = 1,
) -> EvalReport:
    """Stratified k-fold cross-validation scored on the pooled held-out predictions.

    Parameters
    ----------
    ds : Dataset
        Class attribute set, no missing class cells.
    k : int
        Number of folds, ``2 <= k <= len(ds)``.
    seed : int
        Drives the fold assignment; the learner itself is deterministic.
    params : InductionParams
    n_jobs : int
        Folds to train concurrently. The report does not depend on it.

    Returns
    -------
    EvalReport
    """
    preds, sums = cross_val_predict(ds, k, seed, params, n_jobs)
    return build_report(preds, ds.classes, sums)
