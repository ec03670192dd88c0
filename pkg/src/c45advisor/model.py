"""Decision tree data structures and classification."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .dataset import AttributeSpec, Dataset, Instance
from .exceptions import DataError


@dataclass(frozen=True)
class InductionParams:
    """Knobs for tree growth and pruning.

    ``min_cases`` is the minimum weight two or more branches of a split must
    each receive; a node with less than twice that weight becomes a leaf.
    """

    min_cases: float = 2.0
    confidence_factor: float = 0.25
    prune: bool = True

    def __post_init__(self):
        if not self.min_cases >= 1:
            raise ValueError(f"min_cases must be >= 1, got {self.min_cases}")
        if not 0 < self.confidence_factor < 1:
            raise ValueError(
                f"confidence_factor must lie in (0, 1), got {self.confidence_factor}"
            )


@dataclass(frozen=True)
class SplitTest:
    """A nominal test (one branch per value) or a binary ``attr <= threshold`` test."""

    attr: str
    index: int
    threshold: float | None = None
    values: tuple[str, ...] = ()

    @classmethod
    def nominal(cls, spec: AttributeSpec) -> "SplitTest":
        if not spec.is_nominal:
            raise DataError(f"nominal test on numeric attribute {spec.name!r}")
        return cls(spec.name, spec.index, None, spec.values)

    @classmethod
    def numeric_le(cls, spec: AttributeSpec, threshold: float) -> "SplitTest":
        if not spec.is_numeric:
            raise DataError(f"threshold test on nominal attribute {spec.name!r}")
        return cls(spec.name, spec.index, float(threshold))

    @property
    def is_numeric(self) -> bool:
        return self.threshold is not None

    @property
    def op(self) -> str:
        return "<=" if self.is_numeric else "="

    @property
    def arity(self) -> int:
        return 2 if self.is_numeric else len(self.values)

    def branch(self, cell) -> int | None:
        """Child index for an encoded cell, ``None`` when the cell is missing."""
        if cell is None or cell != cell:
            return None
        if self.is_numeric:
            return 0 if cell <= self.threshold else 1
        return int(cell)


@dataclass(frozen=True)
class Leaf:
    """Terminal node.

    ``n`` is the training weight reaching the leaf and ``e`` the part of it
    not of class ``class_value``. ``counts`` holds the per-class weights in
    tree class order; an empty leaf instead carries its parent's class
    proportions in ``dist``.
    """

    class_value: str
    n: float
    e: float = 0.0
    counts: tuple[float, ...] | None = None
    dist: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.n < 0 or self.e < 0 or self.e > self.n + 1e-9:
            raise ValueError(f"invalid leaf annotation ({self.n}/{self.e})")

    @property
    def weight(self) -> float:
        return self.n

    @property
    def is_leaf(self) -> bool:
        return True


@dataclass(frozen=True)
class Internal:
    test: SplitTest
    children: tuple
    weight: float
    counts: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) != self.test.arity:
            raise ValueError(
                f"test on {self.test.attr!r} has arity {self.test.arity}, "
                f"got {len(self.children)} children"
            )

    @property
    def is_leaf(self) -> bool:
        return False


Node = Union[Leaf, Internal]


@dataclass(frozen=True)
class DecisionTree:
    """A grown tree together with the schema it was trained on."""

    root: Node
    schema: tuple[AttributeSpec, ...]
    class_attr: str

    @property
    def class_spec(self) -> AttributeSpec:
        for spec in self.schema:
            if spec.name == self.class_attr:
                return spec
        raise DataError(f"class attribute {self.class_attr!r} not in schema")

    @property
    def classes(self) -> tuple[str, ...]:
        return self.class_spec.values


def iter_nodes(node: Node):
    """Preorder traversal."""
    stack = [node]
    while stack:
        cur = stack.pop()
        yield cur
        if not cur.is_leaf:
            stack.extend(reversed(cur.children))


def leaves(node: Node) -> list[Leaf]:
    return [n for n in iter_nodes(node) if n.is_leaf]


def majority(counts: np.ndarray) -> int:
    """Index of the heaviest class; ties go to the earliest declared class."""
    return int(np.argmax(counts))


def leaf_distribution(leaf: Leaf, classes: Sequence[str]) -> np.ndarray:
    k = len(classes)
    if leaf.dist is not None:
        return np.asarray(leaf.dist, dtype=float)
    if leaf.counts is not None and leaf.n > 0:
        return np.asarray(leaf.counts, dtype=float) / float(sum(leaf.counts))
    # hand-built leaf: only (n, e) known; spread the errors evenly
    out = np.zeros(k)
    c = list(classes).index(leaf.class_value)
    if leaf.n <= 0 or k == 1:
        out[c] = 1.0
        return out
    out[:] = (leaf.e / leaf.n) / (k - 1)
    out[c] = (leaf.n - leaf.e) / leaf.n
    return out


def _distribution(node: Node, cells: Sequence, classes: Sequence[str]) -> np.ndarray:
    if node.is_leaf:
        return leaf_distribution(node, classes)
    b = node.test.branch(cells[node.test.index])
    if b is not None:
        return _distribution(node.children[b], cells, classes)
    weights = np.array([child.weight for child in node.children], dtype=float)
    if weights.sum() <= 0:
        weights = np.ones(len(node.children))
    weights /= weights.sum()
    out = np.zeros(len(classes))
    for frac, child in zip(weights, node.children):
        if frac > 0:
            out += frac * _distribution(child, cells, classes)
    return out


def _check_instance(tree: DecisionTree, inst: Instance) -> None:
    if len(inst.values) != len(tree.schema):
        raise DataError(
            f"instance has {len(inst.values)} cells, tree schema has {len(tree.schema)}"
        )
    for spec, cell in zip(tree.schema, inst.values):
        if cell is None:
            continue
        if spec.is_nominal and not (isinstance(cell, (int, np.integer)) and 0 <= cell < len(spec.values)):
            raise DataError(f"bad nominal cell {cell!r} for attribute {spec.name!r}")


def predict_proba_instance(tree: DecisionTree, inst: Instance) -> np.ndarray:
    _check_instance(tree, inst)
    dist = _distribution(tree.root, inst.values, tree.classes)
    total = dist.sum()
    return dist / total if total > 0 else dist


def classify(tree: DecisionTree, inst: Instance) -> tuple[str, dict[str, float]]:
    """Route ``inst`` down the tree.

    Parameters
    ----------
    tree : DecisionTree
    inst : Instance
        Encoded against ``tree.schema``. A missing cell at a test sends the
        instance down every branch, mixing the results by the branches'
        training weight.

    Returns
    -------
    (class_value, distribution)
        ``distribution`` maps each class to its probability; ``class_value``
        is its argmax with ties going to the earlier declared class.
    """
    dist = predict_proba_instance(tree, inst)
    classes = tree.classes
    return classes[majority(dist)], {c: float(p) for c, p in zip(classes, dist)}


def classify_dataset(tree: DecisionTree, ds: Dataset) -> np.ndarray:
    """Class probability rows for every instance of ``ds``."""
    if [s.name for s in ds.schema] != [s.name for s in tree.schema]:
        raise DataError("dataset schema does not match the tree's training schema")
    return np.array(
        [predict_proba_instance(tree, inst) for inst in ds.instances]
    ).reshape(len(ds), len(tree.classes))
