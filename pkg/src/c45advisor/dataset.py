"""Schema-typed instance collections, ingestion and class frequency accounting.

A :class:`Dataset` is an immutable table whose columns are described by
:class:`AttributeSpec` objects. Nominal cells hold the index of the value in
the attribute's value list, numeric cells hold a float, and missing cells hold
``None``. Every instance carries a weight so that fractional routing of
missing values during tree growth needs no special representation.

Two text formats are understood: plain CSV with a header row, and a small
subset of ARFF (``@attribute`` declarations followed by ``@data``).
"""
from __future__ import annotations

import csv
import math
import os
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence, TextIO

import numpy as np

from .exceptions import DataError

MISSING = "?"

_ARFF_NUMERIC_TYPES = {"numeric", "real", "integer"}


@dataclass(frozen=True)
class AttributeSpec:
    """One column of a schema.

    ``values`` is the ordered list of nominal values, or ``None`` for a
    numeric attribute.
    """

    name: str
    values: tuple[str, ...] | None = None
    index: int = 0

    def __post_init__(self):
        if self.values is not None:
            if len(self.values) == 0:
                raise DataError(f"nominal attribute {self.name!r} has no values")
            if len(set(self.values)) != len(self.values):
                raise DataError(f"nominal attribute {self.name!r} has duplicate values")

    @property
    def is_nominal(self) -> bool:
        return self.values is not None

    @property
    def is_numeric(self) -> bool:
        return self.values is None

    @property
    def kind(self) -> str:
        return "nominal" if self.is_nominal else "numeric"

    def value_index(self, value: str) -> int:
        try:
            return self.values.index(value)
        except (ValueError, AttributeError):
            raise DataError(f"{value!r} is not a value of attribute {self.name!r}") from None


def nominal(name: str, values: Iterable[str], index: int = 0) -> AttributeSpec:
    return AttributeSpec(name, tuple(values), index)


def numeric(name: str, index: int = 0) -> AttributeSpec:
    return AttributeSpec(name, None, index)


@dataclass(frozen=True)
class Instance:
    values: tuple
    weight: float = 1.0


@dataclass(frozen=True)
class ClassFrequency:
    """Weight of each class value, in class declaration order."""

    per_class: dict[str, float]
    total: float

    def __getitem__(self, value: str) -> float:
        return self.per_class[value]

    def as_array(self) -> np.ndarray:
        return np.array(list(self.per_class.values()), dtype=float)


@dataclass(frozen=True)
class Dataset:
    """An immutable, schema-typed collection of weighted instances."""

    schema: tuple[AttributeSpec, ...]
    instances: tuple[Instance, ...] = ()
    class_attr: str | None = None
    _names: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        schema = tuple(
            a if a.index == i else replace(a, index=i) for i, a in enumerate(self.schema)
        )
        object.__setattr__(self, "schema", schema)
        object.__setattr__(self, "instances", tuple(self.instances))
        names = {a.name: a.index for a in schema}
        if len(names) != len(schema):
            raise DataError("attribute names must be unique")
        object.__setattr__(self, "_names", names)
        if self.class_attr is not None:
            spec = self.attribute(self.class_attr)
            if not spec.is_nominal:
                raise DataError(f"class attribute {self.class_attr!r} must be nominal")
        width = len(schema)
        for row, inst in enumerate(self.instances):
            if len(inst.values) != width:
                raise DataError(
                    f"instance {row} has {len(inst.values)} cells, schema has {width}"
                )
            if not inst.weight >= 0:
                raise DataError(f"instance {row} has negative weight {inst.weight}")
            for spec, cell in zip(schema, inst.values):
                if cell is None or spec.is_numeric:
                    continue
                if not 0 <= cell < len(spec.values):
                    raise DataError(
                        f"instance {row}: index {cell} out of range for {spec.name!r}"
                    )

    def __len__(self) -> int:
        return len(self.instances)

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.schema]

    def index_of(self, name: str) -> int:
        try:
            return self._names[name]
        except KeyError:
            raise DataError(f"unknown attribute {name!r}") from None

    def attribute(self, name: str) -> AttributeSpec:
        return self.schema[self.index_of(name)]

    @property
    def class_index(self) -> int:
        if self.class_attr is None:
            raise DataError("class attribute is not set")
        return self._names[self.class_attr]

    @property
    def class_spec(self) -> AttributeSpec:
        return self.schema[self.class_index]

    @property
    def classes(self) -> tuple[str, ...]:
        return self.class_spec.values

    @property
    def total_weight(self) -> float:
        return float(sum(inst.weight for inst in self.instances))

    def with_instances(self, instances: Iterable[Instance]) -> "Dataset":
        return Dataset(self.schema, tuple(instances), self.class_attr)

    def subset(self, indices: Iterable[int]) -> "Dataset":
        return self.with_instances(self.instances[i] for i in indices)

    def cell_text(self, row: int, name: str) -> str | float | None:
        """Decoded cell: nominal text, numeric float, or ``None`` if missing."""
        spec = self.attribute(name)
        cell = self.instances[row].values[spec.index]
        if cell is None or spec.is_numeric:
            return cell
        return spec.values[cell]

    @cached_property
    def matrix(self) -> np.ndarray:
        """All cells as floats (nominal indices as floats, NaN for missing)."""
        out = np.full((len(self.instances), len(self.schema)), np.nan)
        for r, inst in enumerate(self.instances):
            for c, cell in enumerate(inst.values):
                if cell is not None:
                    out[r, c] = cell
        return out

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([inst.weight for inst in self.instances], dtype=float)

    @cached_property
    def class_codes(self) -> np.ndarray:
        """Class value index per instance; raises on a missing class cell."""
        col = self.matrix[:, self.class_index]
        if np.isnan(col).any():
            row = int(np.flatnonzero(np.isnan(col))[0])
            raise DataError(f"instance {row} has a missing class value")
        return col.astype(np.intp)


def assign_class(ds: Dataset, name: str) -> Dataset:
    """Return a copy of ``ds`` whose class attribute is ``name``."""
    spec = ds.attribute(name)
    if not spec.is_nominal:
        raise DataError(f"class attribute {name!r} must be nominal, not numeric")
    return Dataset(ds.schema, ds.instances, name)


def remove_attributes(ds: Dataset, names: Iterable[str]) -> Dataset:
    """Drop the named columns, keeping the order of the remaining ones."""
    names = list(names)
    drop = {ds.index_of(n) for n in names}
    if ds.class_attr is not None and ds.class_attr in names:
        raise DataError(f"cannot remove the class attribute {ds.class_attr!r}")
    if not drop:
        return ds
    keep = [i for i in range(len(ds.schema)) if i not in drop]
    schema = tuple(ds.schema[i] for i in keep)
    instances = tuple(
        Instance(tuple(inst.values[i] for i in keep), inst.weight) for inst in ds.instances
    )
    return Dataset(schema, instances, ds.class_attr)


def class_frequency(ds: Dataset) -> ClassFrequency:
    """Sum instance weights per class value.

    Every declared class value is present in the result, including those
    with zero weight.
    """
    classes = ds.classes
    counts = np.bincount(ds.class_codes, weights=ds.weights, minlength=len(classes))
    per_class = {c: float(v) for c, v in zip(classes, counts)}
    return ClassFrequency(per_class, float(sum(per_class.values())))


# --------------------------------------------------------------------------
# parsing


def _parse_real(token: str) -> float | None:
    try:
        value = float(token)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def _is_missing(token: str) -> bool:
    return token == MISSING or token == ""


def _read_text(source: str | TextIO) -> str:
    return source if isinstance(source, str) else source.read()


def parse_dataset(source: str | TextIO, format: str = "csv") -> Dataset:
    """Parse a dataset from text.

    Parameters
    ----------
    source : str or file-like
        The full text, or a readable stream.
    format : {"csv", "arff"}
        ``"csv"`` infers the schema: a column is numeric iff every
        non-missing cell parses as a real, otherwise nominal with values in
        order of first appearance. ``"arff"`` takes the schema from the
        ``@attribute`` declarations.

    Returns
    -------
    Dataset
        All weights 1.0 (unless given in ARFF ``{w}`` suffixes), class unset.
    """
    text = _read_text(source)
    if format == "csv":
        return _parse_csv(text)
    if format == "arff":
        return _parse_arff(text)
    raise ValueError(f"unknown dataset format {format!r}")


def _parse_csv(text: str) -> Dataset:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DataError("empty dataset stream")
    header = [h.strip() for h in lines[0].split(",")]
    width = len(header)
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != width:
            raise DataError(f"line {lineno}: expected {width} cells, got {len(cells)}")
        rows.append(cells)

    schema = []
    columns = []
    for c, name in enumerate(header):
        tokens = [row[c] for row in rows]
        present = [t for t in tokens if not _is_missing(t)]
        reals = [_parse_real(t) for t in present]
        if all(v is not None for v in reals):
            schema.append(numeric(name, c))
            columns.append([None if _is_missing(t) else _parse_real(t) for t in tokens])
        else:
            values = list(dict.fromkeys(present))
            lookup = {v: i for i, v in enumerate(values)}
            schema.append(nominal(name, values, c))
            columns.append([None if _is_missing(t) else lookup[t] for t in tokens])
    instances = tuple(Instance(tuple(col[r] for col in columns)) for r in range(len(rows)))
    return Dataset(tuple(schema), instances)


_ATTR_RE = re.compile(
    r"""^@attribute\s+('(?:[^']*)'|"(?:[^"]*)"|\S+)\s+(.*)$""", re.IGNORECASE
)


def _unquote(token: str) -> str:
    token = token.strip()
    if len(token) >= 2 and token[0] == token[-1] and token[0] in "'\"":
        return token[1:-1]
    return token


def _split_quoted(text: str) -> list[str]:
    reader = csv.reader([text], quotechar="'", skipinitialspace=True)
    return [t.strip() for t in next(reader)]


def _parse_arff(text: str) -> Dataset:
    schema: list[AttributeSpec] = []
    lines = text.splitlines()
    pos = 0
    in_data = False
    while pos < len(lines):
        line = lines[pos].strip()
        pos += 1
        if not line or line.startswith("%"):
            continue
        low = line.lower()
        if low.startswith("@relation"):
            continue
        if low.startswith("@attribute"):
            m = _ATTR_RE.match(line)
            if m is None:
                raise DataError(f"line {pos}: malformed attribute declaration")
            name, kind = _unquote(m.group(1)), m.group(2).strip()
            if kind.startswith("{") and kind.endswith("}"):
                values = [_unquote(v) for v in _split_quoted(kind[1:-1])]
                schema.append(nominal(name, values, len(schema)))
            elif kind.lower() in _ARFF_NUMERIC_TYPES:
                schema.append(numeric(name, len(schema)))
            else:
                raise DataError(f"line {pos}: unsupported attribute type {kind!r}")
            continue
        if low.startswith("@data"):
            in_data = True
            break
        raise DataError(f"line {pos}: unexpected header line {line!r}")
    if not schema:
        raise DataError("empty dataset stream")
    if not in_data:
        raise DataError("missing @data section")

    instances = []
    for lineno in range(pos, len(lines)):
        line = lines[lineno].strip()
        if not line or line.startswith("%"):
            continue
        tokens = _split_quoted(line)
        weight = 1.0
        if tokens and tokens[-1].startswith("{") and tokens[-1].endswith("}"):
            w = _parse_real(tokens.pop()[1:-1])
            if w is None:
                raise DataError(f"line {lineno + 1}: bad instance weight")
            weight = w
        if len(tokens) != len(schema):
            raise DataError(
                f"line {lineno + 1}: expected {len(schema)} cells, got {len(tokens)}"
            )
        cells = []
        for spec, tok in zip(schema, tokens):
            tok = _unquote(tok)
            if _is_missing(tok):
                cells.append(None)
            elif spec.is_numeric:
                v = _parse_real(tok)
                if v is None:
                    raise DataError(
                        f"line {lineno + 1}: {tok!r} is not numeric ({spec.name!r})"
                    )
                cells.append(v)
            else:
                try:
                    cells.append(spec.values.index(tok))
                except ValueError:
                    raise DataError(
                        f"line {lineno + 1}: undeclared value {tok!r} for {spec.name!r}"
                    ) from None
        instances.append(Instance(tuple(cells), weight))
    return Dataset(tuple(schema), tuple(instances))


def format_number(value: float) -> str:
    """Shortest text that parses back to ``value``; integral values lose the ``.0``."""
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _arff_quote(token: str) -> str:
    if token == "" or any(ch in token for ch in " ,'\"{}%\t") or token == MISSING:
        return "'" + token.replace("'", "\\'") + "'"
    return token


def format_dataset(ds: Dataset, format: str = "csv") -> str:
    """Serialize ``ds`` to CSV or the ARFF subset understood by :func:`parse_dataset`.

    CSV drops instance weights and unused nominal values; ARFF preserves both.
    """
    def cell(spec, v, quote):
        if v is None:
            return MISSING
        if spec.is_numeric:
            return format_number(v)
        return quote(spec.values[v])

    if format == "csv":
        for spec in ds.schema:
            if "," in spec.name or (spec.is_nominal and any("," in v for v in spec.values)):
                raise DataError(f"attribute {spec.name!r} cannot be written as CSV")
        out = [",".join(ds.names)]
        for inst in ds.instances:
            out.append(",".join(cell(s, v, str) for s, v in zip(ds.schema, inst.values)))
        return "\n".join(out) + "\n"
    if format == "arff":
        out = ["@relation dataset", ""]
        for spec in ds.schema:
            if spec.is_numeric:
                out.append(f"@attribute {_arff_quote(spec.name)} numeric")
            else:
                vals = ",".join(_arff_quote(v) for v in spec.values)
                out.append(f"@attribute {_arff_quote(spec.name)} {{{vals}}}")
        out += ["", "@data"]
        for inst in ds.instances:
            row = ",".join(cell(s, v, _arff_quote) for s, v in zip(ds.schema, inst.values))
            if inst.weight != 1.0:
                row += ",{" + repr(float(inst.weight)) + "}"
            out.append(row)
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown dataset format {format!r}")


def guess_format(path: str | os.PathLike) -> str:
    return "arff" if str(path).lower().endswith(".arff") else "csv"


def read_dataset(path: str | os.PathLike, format: str | None = None) -> Dataset:
    with open(path, encoding="utf-8") as fh:
        return parse_dataset(fh, format or guess_format(path))


def _is_number(v) -> bool:
    return isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool)


def _is_missing_value(v) -> bool:
    return v is None or (_is_number(v) and math.isnan(v)) or v == MISSING


def from_rows(
    header: Sequence[str],
    rows: Iterable[Sequence],
    nominal_values: dict[str, Sequence[str]] | None = None,
) -> Dataset:
    """Build a dataset from decoded rows (text for nominal, numbers for numeric).

    Columns listed in ``nominal_values`` are nominal with that value order.
    Any other column is numeric iff every present cell is a number. ``None``,
    NaN and ``"?"`` are missing.
    """
    rows = [list(r) for r in rows]
    fixed = nominal_values or {}
    for r, row in enumerate(rows):
        if len(row) != len(header):
            raise DataError(f"row {r} has {len(row)} cells, header has {len(header)}")
    schema = []
    for c, name in enumerate(header):
        present = [row[c] for row in rows if not _is_missing_value(row[c])]
        if name in fixed:
            schema.append(nominal(name, fixed[name], c))
        elif all(_is_number(v) for v in present):
            schema.append(numeric(name, c))
        else:
            schema.append(nominal(name, dict.fromkeys(str(v) for v in present), c))
    instances = []
    for row in rows:
        cells = []
        for spec, v in zip(schema, row):
            if _is_missing_value(v):
                cells.append(None)
            elif spec.is_numeric:
                cells.append(float(v))
            else:
                cells.append(spec.value_index(str(v)))
        instances.append(Instance(tuple(cells)))
    return Dataset(tuple(schema), tuple(instances))


def as_nominal(ds: Dataset, name: str) -> Dataset:
    """Re-type a numeric column as nominal, values in order of first appearance."""
    spec = ds.attribute(name)
    if spec.is_nominal:
        return ds
    i = spec.index
    texts = [None if inst.values[i] is None else format_number(inst.values[i]) for inst in ds.instances]
    values = list(dict.fromkeys(t for t in texts if t is not None)) or [MISSING]
    lookup = {v: j for j, v in enumerate(values)}
    schema = list(ds.schema)
    schema[i] = nominal(name, values, i)
    instances = [
        Instance(inst.values[:i] + (None if t is None else lookup[t],) + inst.values[i + 1:], inst.weight)
        for inst, t in zip(ds.instances, texts)
    ]
    return Dataset(tuple(schema), tuple(instances), ds.class_attr)


def conform(ds: Dataset, schema: Sequence[AttributeSpec], optional: Iterable[str] = ()) -> Dataset:
    """Re-encode ``ds`` against another schema, matching columns by name.

    Nominal values the target schema does not know become missing. Columns
    named in ``optional`` may be absent from ``ds`` and are then all missing;
    extra columns of ``ds`` are dropped.
    """
    optional = set(optional)
    plan = []
    for spec in schema:
        if spec.name not in ds._names:
            if spec.name not in optional:
                raise DataError(f"data lacks attribute {spec.name!r}")
            plan.append(None)
            continue
        src = ds.attribute(spec.name)
        if spec.is_nominal:
            lookup = {v: j for j, v in enumerate(spec.values)}
            if src.is_nominal:
                table = [lookup.get(v) for v in src.values]
                plan.append((src.index, lambda c, t=table: t[c]))
            else:
                plan.append((src.index, lambda c, t=lookup: t.get(format_number(c))))
        else:
            if src.is_numeric:
                plan.append((src.index, lambda c: c))
            else:
                reals = [_parse_real(v) for v in src.values]
                if any(r is None for r in reals):
                    raise DataError(f"attribute {spec.name!r} is numeric in the target schema")
                plan.append((src.index, lambda c, t=reals: t[c]))
    instances = []
    for inst in ds.instances:
        cells = []
        for step in plan:
            if step is None:
                cells.append(None)
                continue
            cell = inst.values[step[0]]
            cells.append(None if cell is None else step[1](cell))
        instances.append(Instance(tuple(cells), inst.weight))
    return Dataset(tuple(schema), tuple(instances))
