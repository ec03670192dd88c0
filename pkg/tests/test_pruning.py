import math

import pytest
from scipy.optimize import brentq
from scipy.stats import norm

from c45advisor.builder import build_tree
from c45advisor.dataset import Dataset, Instance, nominal, numeric
from c45advisor.model import InductionParams, Internal, Leaf, SplitTest, DecisionTree, leaves
from c45advisor.pruning import added_errors, estimated_errors, prune, recount, upper_error_rate


def u_oracle(n, e, cf):
    """Upper confidence limit on the error rate, solved numerically.

    e = 0: the p with (1 - p)**n = cf. Otherwise the upper root of the
    continuity-corrected normal interval around (e + 0.5) / n.
    """
    if e == 0:
        return brentq(lambda p: (1 - p) ** n - cf, 0.0, 1.0, xtol=1e-15)
    f = (e + 0.5) / n
    if f >= 1:
        return 1.0
    z = norm.ppf(1 - cf)
    return brentq(lambda p: (p - f) - z * math.sqrt(p * (1 - p) / n), f, 1.0, xtol=1e-15)


# frozen outputs of u_oracle
U_6_2 = 0.553554284910376
U_12_4 = 0.47220365439983714
U_10_0 = 0.12944943670387588


def test_oracle_frozen_values():
    assert u_oracle(6, 2, 0.25) == pytest.approx(U_6_2, abs=1e-12)
    assert u_oracle(12, 4, 0.25) == pytest.approx(U_12_4, abs=1e-12)
    assert u_oracle(10, 0, 0.25) == pytest.approx(U_10_0, abs=1e-12)


@pytest.mark.parametrize(
    "n, e", [(6, 2), (12, 4), (10, 0), (1, 0), (180, 19), (8, 0), (40, 3), (5, 1), (3, 2)]
)
@pytest.mark.parametrize("cf", [0.1, 0.25, 0.4])
def test_upper_bound_matches_oracle(n, e, cf):
    assert upper_error_rate(n, e, cf) == pytest.approx(u_oracle(n, e, cf), abs=1e-9)


def test_upper_bound_edges():
    assert added_errors(0, 0, 0.25) == 0.0
    assert upper_error_rate(4, 4, 0.25) == 1.0
    # fractional errors below one interpolate between e = 0 and e = 1
    lo, hi = estimated_errors(6, 0, 0.25), estimated_errors(6, 1, 0.25)
    assert estimated_errors(6, 0.5, 0.25) == pytest.approx((lo + hi) / 2)
    # a lower confidence factor is more pessimistic
    assert upper_error_rate(20, 5, 0.1) > upper_error_rate(20, 5, 0.25)


def _schema():
    return (numeric("x"), nominal("c", ["A", "B"]))


def test_leaf_unchanged():
    leaf = Leaf("A", 5.0, 1.0, (4.0, 1.0))
    tree = DecisionTree(leaf, _schema(), "c")
    assert prune(tree).root == leaf


def test_same_class_children_collapse():
    x = _schema()[0]
    node = Internal(
        SplitTest.numeric_le(x, 3),
        [Leaf("A", 6.0, 1.0, (5.0, 1.0)), Leaf("A", 4.0, 2.0, (2.0, 2.0))],
        10.0,
        (7.0, 3.0),
    )
    root = prune(DecisionTree(node, _schema(), "c")).root
    assert root == Leaf("A", 10.0, 3.0, (7.0, 3.0))


def test_six_two_pair_against_twelve_four():
    x = _schema()[0]
    subtree_est = 2 * 6 * U_6_2
    leaf_est = 12 * U_12_4
    assert subtree_est == pytest.approx(6.6427, abs=1e-4)
    assert leaf_est == pytest.approx(5.6664, abs=1e-4)
    node = Internal(
        SplitTest.numeric_le(x, 3),
        [Leaf("A", 6.0, 2.0, (4.0, 2.0)), Leaf("A", 6.0, 2.0, (4.0, 2.0))],
        12.0,
        (8.0, 4.0),
    )
    assert leaf_est <= subtree_est + 0.1
    root = prune(DecisionTree(node, _schema(), "c")).root
    assert root == Leaf("A", 12.0, 4.0, (8.0, 4.0))


def test_useful_split_survives():
    x = _schema()[0]
    node = Internal(
        SplitTest.numeric_le(x, 3),
        [Leaf("A", 20.0, 0.0, (20.0, 0.0)), Leaf("B", 20.0, 0.0, (0.0, 20.0))],
        40.0,
        (20.0, 20.0),
    )
    assert prune(DecisionTree(node, _schema(), "c")).root == node


def test_prune_needs_counts_or_data():
    x = _schema()[0]
    node = Internal(SplitTest.numeric_le(x, 3), [Leaf("A", 1.0), Leaf("B", 1.0)], 2.0)
    tree = DecisionTree(node, _schema(), "c")
    with pytest.raises(ValueError, match="counts"):
        prune(tree)
    data = Dataset(_schema(), [Instance((1.0, 0)), Instance((5.0, 1)), Instance((6.0, 0))], "c")
    pruned = prune(tree, training_slice=data)
    assert sum(leaf.n for leaf in leaves(pruned.root)) == 3.0
    with pytest.raises(ValueError):
        prune(tree, confidence_factor=0.0)


def test_recount_routes_missing_fractionally():
    x = _schema()[0]
    node = Internal(SplitTest.numeric_le(x, 3), [Leaf("A", 1.0), Leaf("B", 1.0)], 2.0)
    data = Dataset(
        _schema(), [Instance((1.0, 0)), Instance((5.0, 1)), Instance((6.0, 1)), Instance((None, 0))],
        "c",
    )
    root = recount(DecisionTree(node, _schema(), "c"), data).root
    left, right = root.children
    assert left.n == pytest.approx(1 + 1 / 3) and left.e == pytest.approx(0.0)
    assert right.n == pytest.approx(2 + 2 / 3) and right.e == pytest.approx(2 / 3)


def test_pruning_never_grows_the_tree():
    rows = [(float(i % 7), (i * 5) % 3 % 2) for i in range(60)]
    ds = Dataset(_schema(), [Instance(r) for r in rows], "c")
    full = build_tree(ds, InductionParams(prune=False))
    pruned = build_tree(ds)
    assert len(leaves(pruned.root)) <= len(leaves(full.root))
    assert sum(leaf.n for leaf in leaves(pruned.root)) == pytest.approx(60.0)
