"""Tree rendering (indented text, Graphviz DOT) and JSON model files."""
from __future__ import annotations

import json
from typing import Any

from .dataset import AttributeSpec, format_number, nominal, numeric
from .exceptions import ModelError
from .model import DecisionTree, Internal, Leaf, Node, SplitTest, iter_nodes

MODEL_FORMAT = "c45advisor-tree"
MODEL_VERSION = 1


def _root(tree: DecisionTree | Node) -> Node:
    return tree.root if isinstance(tree, DecisionTree) else tree


def branch_labels(test: SplitTest) -> list[str]:
    if test.is_numeric:
        t = format_number(test.threshold)
        return [f"<= {t}", f"> {t}"]
    return [f"= {v}" for v in test.values]


def leaf_label(leaf: Leaf) -> str:
    n, e = f"{leaf.n:.1f}", f"{leaf.e:.1f}"
    if e == "0.0":
        return f"{leaf.class_value} ({n})"
    return f"{leaf.class_value} ({n}/{e})"


def render_text(tree: DecisionTree | Node) -> str:
    """One line per branch, nested levels prefixed with ``"| "``.

    A branch that ends in a leaf carries ``: class (n/e)``; ``/e`` is left
    out when no training weight is misclassified.
    """
    root = _root(tree)
    if root.is_leaf:
        return ": " + leaf_label(root)
    lines: list[str] = []

    def walk(node: Internal, depth: int) -> None:
        for label, child in zip(branch_labels(node.test), node.children):
            line = "| " * depth + f"{node.test.attr} {label}"
            if child.is_leaf:
                lines.append(f"{line}: {leaf_label(child)}")
            else:
                lines.append(line)
                walk(child, depth + 1)

    walk(root, 0)
    return "\n".join(lines)


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def render_graph(tree: DecisionTree | Node) -> str:
    """Graphviz digraph; node ids are preorder positions."""
    root = _root(tree)
    out = ["digraph C45Tree {", "node [fontname=Helvetica]"]
    counter = 0

    def visit(node: Node) -> int:
        nonlocal counter
        my_id = counter
        counter += 1
        if node.is_leaf:
            out.append(f'N{my_id} [label="{_dot_escape(leaf_label(node))}" shape=box style=filled]')
            return my_id
        out.append(f'N{my_id} [label="{_dot_escape(node.test.attr)}"]')
        for label, child in zip(branch_labels(node.test), node.children):
            child_id = visit(child)
            out.append(f'N{my_id}->N{child_id} [label="{_dot_escape(label)}"]')
        return my_id

    visit(root)
    out.append("}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# JSON


def _spec_to_json(spec: AttributeSpec) -> dict:
    if spec.is_numeric:
        return {"name": spec.name, "type": "numeric"}
    return {"name": spec.name, "type": "nominal", "values": list(spec.values)}


def _node_to_json(node: Node) -> dict:
    if node.is_leaf:
        out: dict[str, Any] = {"class": node.class_value, "n": node.n, "e": node.e}
        if node.counts is not None:
            out["counts"] = list(node.counts)
        if node.dist is not None:
            out["dist"] = list(node.dist)
        return out
    test: dict[str, Any] = {"attr": node.test.attr, "op": node.test.op}
    if node.test.is_numeric:
        test["threshold"] = node.test.threshold
    out = {
        "test": test,
        "children": [_node_to_json(c) for c in node.children],
        "weight": node.weight,
    }
    if node.counts is not None:
        out["counts"] = list(node.counts)
    return out


def tree_to_dict(tree: DecisionTree) -> dict:
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "header": {
            "class": tree.class_attr,
            "attributes": [_spec_to_json(s) for s in tree.schema],
        },
        "tree": _node_to_json(tree.root),
    }


def dumps_tree(tree: DecisionTree) -> str:
    return json.dumps(tree_to_dict(tree), indent=2) + "\n"


def _opt_tuple(obj: dict, key: str):
    return None if obj.get(key) is None else tuple(float(v) for v in obj[key])


def _node_from_json(obj: dict, schema: dict[str, AttributeSpec]) -> Node:
    if "test" not in obj:
        try:
            return Leaf(
                str(obj["class"]), float(obj["n"]), float(obj.get("e", 0.0)),
                _opt_tuple(obj, "counts"), _opt_tuple(obj, "dist"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(f"bad leaf object: {exc}") from None
    t = obj["test"]
    spec = schema.get(t.get("attr"))
    if spec is None:
        raise ModelError(f"test on unknown attribute {t.get('attr')!r}")
    op = t.get("op")
    if op == "<=":
        if spec.is_nominal or "threshold" not in t:
            raise ModelError(f"bad threshold test on {spec.name!r}")
        test = SplitTest.numeric_le(spec, float(t["threshold"]))
    elif op == "=":
        if spec.is_numeric:
            raise ModelError(f"equality test on numeric attribute {spec.name!r}")
        test = SplitTest.nominal(spec)
    else:
        raise ModelError(f"unknown test operator {op!r}")
    children = [_node_from_json(c, schema) for c in obj.get("children", [])]
    weight = obj.get("weight")
    if weight is None:
        weight = sum(c.weight for c in children)
    try:
        return Internal(test, children, float(weight), _opt_tuple(obj, "counts"))
    except ValueError as exc:
        raise ModelError(str(exc)) from None


def tree_from_dict(doc: dict) -> DecisionTree:
    if not isinstance(doc, dict) or doc.get("format") != MODEL_FORMAT:
        raise ModelError("not a c45advisor model document")
    try:
        header = doc["header"]
        specs = []
        for i, a in enumerate(header["attributes"]):
            if a["type"] == "numeric":
                specs.append(numeric(a["name"], i))
            elif a["type"] == "nominal":
                specs.append(nominal(a["name"], a["values"], i))
            else:
                raise ModelError(f"unknown attribute type {a['type']!r}")
        class_attr = header["class"]
        by_name = {s.name: s for s in specs}
        if class_attr not in by_name or by_name[class_attr].is_numeric:
            raise ModelError(f"bad class attribute {class_attr!r}")
        root = _node_from_json(doc["tree"], by_name)
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed model document: {exc}") from None
    classes = by_name[class_attr].values
    for node in iter_nodes(root):
        if node.is_leaf and node.class_value not in classes:
            raise ModelError(f"leaf class {node.class_value!r} is not a class value")
    return DecisionTree(root, tuple(specs), class_attr)


def loads_tree(text: str) -> DecisionTree:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"model is not valid JSON: {exc}") from None
    return tree_from_dict(doc)
