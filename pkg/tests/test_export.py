import json
import re

import pytest

from c45advisor.builder import build_tree
from c45advisor.dataset import nominal, numeric
from c45advisor.exceptions import ModelError
from c45advisor.export import (
    dumps_tree,
    leaf_label,
    loads_tree,
    render_graph,
    render_text,
    tree_to_dict,
)
from c45advisor.model import Internal, Leaf, SplitTest, classify, iter_nodes

from conftest import GOLDEN_TEXT
from helpers import random_dataset


def test_golden_text_is_byte_identical(golden_tree):
    assert render_text(golden_tree) == GOLDEN_TEXT


def test_single_leaf_render():
    assert render_text(Leaf("Normal", 10.0, 0.0)) == ": Normal (10.0)"


@pytest.mark.parametrize(
    "n, e, text", [(6.5, 1.5, "X (6.5/1.5)"), (8, 0, "X (8.0)"), (180, 19, "X (180.0/19.0)")]
)
def test_leaf_label(n, e, text):
    assert leaf_label(Leaf("X", n, e)) == text


def test_numeric_thresholds_print_as_data_values():
    x = numeric("x")
    node = Internal(SplitTest.numeric_le(x, 2.5), [Leaf("A", 1.0), Leaf("B", 1.0)], 2.0)
    assert render_text(node) == "x <= 2.5: A (1.0)\nx > 2.5: B (1.0)"


def _counts(dot):
    nodes = re.findall(r"^N\d+ \[", dot, flags=re.M)
    edges = re.findall(r"^N\d+->N\d+", dot, flags=re.M)
    return len(nodes), len(edges)


def test_graph_single_leaf():
    dot = render_graph(Leaf("Normal", 10.0, 0.0))
    assert _counts(dot) == (1, 0)
    assert dot.startswith("digraph C45Tree {") and dot.endswith("}\n")


def test_graph_golden_tree(golden_tree):
    # the one-valued Learning Status test adds a node and an edge above
    # the three threshold tests and four leaves
    assert _counts(render_graph(golden_tree)) == (8, 7)
    assert _counts(render_graph(golden_tree.root.children[0])) == (7, 6)
    assert render_graph(golden_tree) == render_graph(golden_tree)
    dot = render_graph(golden_tree)
    assert 'label="Normal (180.0/19.0)" shape=box' in dot
    assert 'label="<= 36"' in dot and 'label="> 157"' in dot


def test_graph_escapes_quotes():
    c = nominal('say "hi"', ["a", "b"])
    node = Internal(SplitTest.nominal(c), [Leaf("A", 1.0), Leaf("B", 1.0)], 2.0)
    assert 'label="say \\"hi\\""' in render_graph(node)


def _branches(node):
    return sum(len(n.children) for n in iter_nodes(node) if not n.is_leaf)


def _shape(node):
    return None if node.is_leaf else [_shape(c) for c in node.children]


_LEAF_LINE = re.compile(r": .+ \(\d+\.\d(/\d+\.\d)?\)$")


def _shape_from_text(text):
    """Rebuild the nesting from indentation alone."""
    lines = text.split("\n")
    pos = 0

    def parse(depth):
        nonlocal pos
        kids = []
        while pos < len(lines) and lines[pos].startswith("| " * depth) and not lines[
            pos
        ].startswith("| " * (depth + 1)):
            line = lines[pos]
            pos += 1
            kids.append(None if _LEAF_LINE.search(line) else parse(depth + 1))
        return kids

    return parse(0)


@pytest.mark.parametrize("seed", range(30))
def test_text_lines_match_branches_and_shape(seed):
    tree = build_tree(random_dataset(seed))
    text = render_text(tree)
    if tree.root.is_leaf:
        assert text.startswith(": ")
        return
    assert len(text.split("\n")) == _branches(tree.root)
    assert _shape_from_text(text) == _shape(tree.root)


def test_golden_shape_from_text(golden_tree):
    assert _shape_from_text(GOLDEN_TEXT) == _shape(golden_tree.root)


@pytest.mark.parametrize("seed", range(20))
def test_json_round_trip(seed):
    ds = random_dataset(seed, missing_rate=0.1)
    tree = build_tree(ds)
    again = loads_tree(dumps_tree(tree))
    assert again == tree
    for inst in ds.instances:
        assert classify(again, inst) == classify(tree, inst)


def test_json_round_trip_hand_built(golden_tree):
    again = loads_tree(dumps_tree(golden_tree))
    assert render_text(again) == GOLDEN_TEXT
    doc = tree_to_dict(golden_tree)
    assert doc["format"] == "c45advisor-tree" and doc["header"]["class"] == "Ad_STATUS"


def _doc(golden_tree):
    return json.loads(dumps_tree(golden_tree))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(format="other"),
        lambda d: d["header"].update({"class": "nope"}),
        lambda d: d["header"]["attributes"][1].update(type="string"),
        lambda d: d["tree"]["test"].update(attr="nope"),
        lambda d: d["tree"]["test"].update(op="<"),
        lambda d: d["tree"]["children"][0]["test"].update(op="="),
        lambda d: d["tree"]["children"][0]["children"].pop(),
        lambda d: d["tree"]["children"][0]["children"][0].update({"class": "Unknown"}),
        lambda d: d["tree"]["children"][0]["children"][0].pop("n"),
        lambda d: d.pop("tree"),
    ],
)
def test_bad_model_documents(golden_tree, mutate):
    doc = _doc(golden_tree)
    mutate(doc)
    with pytest.raises(ModelError):
        loads_tree(json.dumps(doc))


def test_model_not_json():
    with pytest.raises(ModelError):
        loads_tree("{not json")
