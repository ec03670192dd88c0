"""Command line front end.

Subcommands::

    generate  synthetic advising table (CSV)
    features  derive credit-hour and GPA attributes from course records
    train     grow a tree and write it as JSON
    evaluate  stratified cross-validation report
    classify  per-instance predictions from a saved tree
    render    draw a saved tree as indented text or Graphviz DOT

Exit status: 0 success, 2 usage error, 3 data error, 4 model error.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import tempfile

from . import features as feat
from .builder import build_tree
from .dataset import (
    Dataset,
    as_nominal,
    assign_class,
    conform,
    format_dataset,
    nominal,
    read_dataset,
    remove_attributes,
)
from .evaluation import cross_validate
from .exceptions import DataError, ModelError
from .export import dumps_tree, loads_tree, render_graph, render_text
from .model import InductionParams, predict_proba_instance

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_MODEL = 0, 2, 3, 4
DEFAULT_CLASS = "Ad_STATUS"
DEFAULT_DROP = "Sid,GEN,Sem_GPA,CUM_GPA"


class UsageError(Exception):
    pass


def _add_learning_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--class", dest="class_attr", default=DEFAULT_CLASS,
                   help="class attribute (default: %(default)s)")
    p.add_argument("--drop", default=None,
                   help=f"comma-separated attributes to remove (default: {DEFAULT_DROP})")
    p.add_argument("--min-cases", type=float, default=2.0,
                   help="minimum branch weight for a split (default: %(default)s)")
    p.add_argument("--cf", type=float, default=0.25,
                   help="pruning confidence factor (default: %(default)s)")
    p.add_argument("--no-prune", action="store_true", help="keep the unpruned tree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="c45advisor",
        description="C4.5 decision trees for academic-advising risk classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="grow a tree and save it as JSON")
    p.add_argument("--data", required=True, help="training table (.csv or .arff)")
    p.add_argument("--out", help="model path (default: stdout)")
    _add_learning_flags(p)

    p = sub.add_parser("evaluate", help="stratified k-fold cross-validation")
    p.add_argument("--data", required=True, help="table to cross-validate (.csv or .arff)")
    p.add_argument("--out", help="report path (default: stdout)")
    p.add_argument("--folds", type=int, default=10, help="number of folds (default: %(default)s)")
    p.add_argument("--seed", type=int, default=1, help="fold shuffling seed (default: %(default)s)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_learning_flags(p)

    p = sub.add_parser("classify", help="predict instances with a saved tree")
    p.add_argument("--model", required=True, help="model JSON written by train")
    p.add_argument("--data", required=True, help="instances to classify")
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("features", help="derive attributes from raw course records")
    p.add_argument("--data", required=True, help="course-record CSV, one row per course taken")
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("generate", help="write a synthetic advising table")
    p.add_argument("--n", type=int, default=1000, help="number of students (default: %(default)s)")
    p.add_argument("--seed", type=int, default=1, help="random seed (default: %(default)s)")
    p.add_argument("--noise", type=float, default=0.0,
                   help="fraction of labels flipped to another class (default: %(default)s)")
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("render", help="draw a saved tree")
    p.add_argument("--model", required=True, help="model JSON written by train")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.add_argument("--out", help="output path (default: stdout)")
    return parser


# --------------------------------------------------------------------------


def _load_data(path: str) -> Dataset:
    try:
        return read_dataset(path)
    except FileNotFoundError:
        raise DataError(f"data file not found: {path}") from None
    except UnicodeDecodeError:
        raise DataError(f"data file is not UTF-8 text: {path}") from None


def _load_model(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads_tree(fh.read())
    except FileNotFoundError:
        raise ModelError(f"model file not found: {path}") from None


def _resolve_drop(ds: Dataset, drop: str | None) -> list[str]:
    """Match drop names to the schema, ignoring case.

    Names of the default list that the data lacks are skipped; explicitly
    requested names must exist.
    """
    explicit = drop is not None
    wanted = [n.strip() for n in (drop if explicit else DEFAULT_DROP).split(",") if n.strip()]
    by_lower = {n.lower(): n for n in ds.names}
    out = []
    for name in wanted:
        if name in ds.names:
            out.append(name)
        elif name.lower() in by_lower:
            out.append(by_lower[name.lower()])
        elif explicit:
            raise DataError(f"cannot drop unknown attribute {name!r}")
    return list(dict.fromkeys(out))


def _advising_class_order(ds: Dataset, name: str) -> Dataset:
    """CSV lists nominal values by first appearance; put advising statuses
    back in their fixed order so reports and tie-breaks do not depend on
    row order."""
    if name not in ds.names:
        return ds
    spec = ds.attribute(name)
    if not spec.is_nominal or not set(spec.values) <= set(feat.CLASS_VALUES):
        return ds
    schema = list(ds.schema)
    schema[spec.index] = nominal(name, feat.CLASS_VALUES, spec.index)
    return conform(ds, schema)


def _training_data(args) -> Dataset:
    ds = _load_data(args.data)
    ds = remove_attributes(ds, _resolve_drop(ds, args.drop))
    if args.class_attr in ds.names and ds.attribute(args.class_attr).is_numeric:
        ds = as_nominal(ds, args.class_attr)
    ds = _advising_class_order(ds, args.class_attr)
    ds = assign_class(ds, args.class_attr)
    if any(inst.values[ds.class_index] is None for inst in ds.instances):
        raise DataError("some instances have a missing class value")
    return ds


def _params(args) -> InductionParams:
    try:
        return InductionParams(args.min_cases, args.cf, not args.no_prune)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_train(args) -> str:
    params = _params(args)
    return dumps_tree(build_tree(_training_data(args), params))


def cmd_evaluate(args) -> str:
    params = _params(args)
    if args.folds < 2:
        raise UsageError("--folds must be at least 2")
    report = cross_validate(_training_data(args), args.folds, args.seed, params)
    return report.to_json() if args.format == "json" else report.to_text()


def cmd_classify(args) -> str:
    tree = _load_model(args.model)
    raw = _load_data(args.data)
    ds = conform(raw, tree.schema, optional=[tree.class_attr])
    classes = tree.classes
    has_actual = tree.class_attr in raw.names
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["instance"] + (["actual"] if has_actual else []) + ["predicted"]
        + [f"p({c})" for c in classes]
    )
    ci = [s.name for s in tree.schema].index(tree.class_attr)
    for i, inst in enumerate(ds.instances, start=1):
        dist = predict_proba_instance(tree, inst)
        best = classes[int(dist.argmax())]
        row = [i]
        if has_actual:
            cell = inst.values[ci]
            row.append("?" if cell is None else classes[cell])
        row.append(best)
        row += [f"{p:.6g}" for p in dist]
        writer.writerow(row)
    return buf.getvalue()


def cmd_features(args) -> str:
    try:
        with open(args.data, encoding="utf-8", newline="") as fh:
            by_student = feat.read_course_records(fh)
    except FileNotFoundError:
        raise DataError(f"data file not found: {args.data}") from None
    return format_dataset(feat.features_dataset(by_student))


def cmd_generate(args) -> str:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if not 0 <= args.noise <= 1:
        raise UsageError("--noise must lie in [0, 1]")
    records = feat.generate_synthetic(args.n, args.seed, args.noise)
    return format_dataset(feat.records_to_dataset(records))


def cmd_render(args) -> str:
    tree = _load_model(args.model)
    return render_graph(tree) if args.format == "dot" else render_text(tree) + "\n"


COMMANDS = {
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "classify": cmd_classify,
    "features": cmd_features,
    "generate": cmd_generate,
    "render": cmd_render,
}


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".c45tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        # mkstemp creates 0600; give the result the usual umask-derived mode
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = COMMANDS[args.command](args)
        _write(text, args.out)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK
    except UsageError as exc:
        print(f"c45advisor: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModelError as exc:
        print(f"c45advisor: model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except (DataError, OSError) as exc:
        print(f"c45advisor: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
