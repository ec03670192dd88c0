"""scikit-learn compatible wrapper around the C4.5 learner."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from . import _validation
from .builder import build_tree
from .dataset import Dataset, Instance
from .export import render_graph, render_text
from .model import DecisionTree, predict_proba_instance


class C45Classifier(ClassifierMixin, BaseEstimator):
    """C4.5 decision tree classifier.

    Parameters
    ----------
    min_cases : float, default=2.0
        Minimum weight that at least two branches of a split must receive.
    confidence_factor : float, default=0.25
        Confidence level used by pessimistic pruning; smaller values prune
        more.
    prune : bool, default=True
        Whether to prune the grown tree.
    nominal_features : list of int or str, optional
        Columns to treat as nominal. Non-numeric columns and categorical
        DataFrame columns are nominal regardless.

    Attributes
    ----------
    tree_ : DecisionTree
    classes_ : ndarray
    n_features_in_ : int
    feature_names_in_ : ndarray
        Only set when ``X`` is a DataFrame or a :class:`Dataset`.
    """

    def __init__(self, min_cases=2.0, confidence_factor=0.25, prune=True, nominal_features=None):
        self.min_cases = min_cases
        self.confidence_factor = confidence_factor
        self.prune = prune
        self.nominal_features = nominal_features

    def fit(self, X, y=None, sample_weight=None):
        """Grow (and prune) the tree.

        ``X`` may also be a :class:`Dataset` with its class attribute set, in
        which case ``y`` and ``sample_weight`` must be omitted.
        """
        params = _validation.check_params(self.min_cases, self.confidence_factor, self.prune)
        if isinstance(X, Dataset):
            if y is not None or sample_weight is not None:
                raise ValueError("y and sample_weight come from the Dataset itself")
            ds = X
            self.classes_ = np.array(ds.classes, dtype=object)
            self._from_dataset = True
            self.feature_names_in_ = np.array(
                [n for n in ds.names if n != ds.class_attr], dtype=object
            )
        else:
            if y is None:
                raise ValueError("y is required unless X is a Dataset")
            ds, self.classes_ = _validation.training_dataset(
                X, y, self.nominal_features, sample_weight
            )
            self._from_dataset = False
            if hasattr(X, "columns"):
                self.feature_names_in_ = np.array([str(c) for c in X.columns], dtype=object)
        self.tree_ = build_tree(ds, params)
        self.n_features_in_ = len(ds.schema) - 1
        return self

    def _instances(self, X) -> list[Instance]:
        tree: DecisionTree = self.tree_
        if isinstance(X, Dataset):
            if [s.name for s in X.schema] != [s.name for s in tree.schema]:
                raise ValueError("Dataset schema does not match the training schema")
            return list(X.instances)
        if self._from_dataset:
            raise ValueError("estimator was fit on a Dataset; predict on a Dataset too")
        specs = [s for s in tree.schema if s.name != tree.class_attr]
        return [Instance(row) for row in _validation.encode_features(X, specs, extra_cells=1)]

    def predict_proba(self, X) -> np.ndarray:
        check_is_fitted(self, "tree_")
        rows = [predict_proba_instance(self.tree_, inst) for inst in self._instances(X)]
        return np.array(rows).reshape(len(rows), len(self.classes_))

    def predict(self, X) -> np.ndarray:
        proba = self.predict_proba(X)
        return self.classes_[np.argmax(proba, axis=1)]

    def export_text(self) -> str:
        check_is_fitted(self, "tree_")
        return render_text(self.tree_)

    def export_graphviz(self) -> str:
        check_is_fitted(self, "tree_")
        return render_graph(self.tree_)
