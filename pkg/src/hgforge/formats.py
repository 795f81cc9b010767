"""JSON file formats with exact scalar round-tripping.

Three document kinds, all plain JSON:

  cube     {"n": 2, "entries": [[[..], ..], ..]}   n*n*n, entries[i][j][k]
  measure  {"n": 2, "values": ["3/4", "1/4"]}
  group    {"invariant_factors": [2, 4]}  or  {"cayley_table": [[..], ..]}

Scalars are JSON integers or strings: "3/4" (lowest terms on output) or
a decimal like "0.75", both parsed exactly.  Bare JSON floats are
rejected with a pointer to the quoting rule, because a float has already
lost exactness before this library ever sees it.  A group document must
carry exactly one of its two fields; Cayley tables are 1-based with the
identity at state 1.

Serialization is canonical: fixed key order, two-space indent, lowest
terms, integers written bare.  Equal objects serialize to identical
bytes, which the command-line tools rely on for deterministic output.
"""

from __future__ import annotations

import json

from .core import MeasureVector, StructureCube, rat, validate_cube, validate_measure
from .groups import CayleyTable, InvariantFactors, cayley_table


class FormatError(ValueError):
    """Malformed document: wrong JSON shape, types, or scalar syntax."""


def parse_scalar(value, where):
    """Exact rational from a JSON scalar (int or string)."""
    if isinstance(value, bool):
        raise FormatError(f"{where}: expected a number, found a boolean")
    if isinstance(value, int):
        return rat(value)
    if isinstance(value, float):
        raise FormatError(
            f'{where}: bare floats are inexact; quote the value, e.g. "3/4" or "0.75"'
        )
    if isinstance(value, str):
        try:
            return rat(value)
        except (ValueError, ZeroDivisionError) as err:
            raise FormatError(f"{where}: cannot parse {value!r} as a rational ({err})") from None
    raise FormatError(f"{where}: expected an int or a string, found {type(value).__name__}")


def scalar_to_json(q):
    """Canonical JSON form: bare int when integral, else "p/q" lowest terms."""
    if q.denominator == 1:
        return int(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _require_object(doc, kind):
    if not isinstance(doc, dict):
        raise FormatError(f"{kind} document must be a JSON object, found {type(doc).__name__}")


def _require_n(doc, kind):
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError(f'{kind} document needs a positive integer "n"')
    return n


def _require_list(value, length, where):
    if not isinstance(value, list):
        raise FormatError(f"{where}: expected a list, found {type(value).__name__}")
    if length is not None and len(value) != length:
        raise FormatError(f"{where}: expected {length} items, found {len(value)}")
    return value


def parse_cube_document(doc) -> StructureCube:
    """Cube from a decoded JSON document; shape errors are FormatError,
    constraint violations surface as ValidationError from validate_cube."""
    _require_object(doc, "cube")
    n = _require_n(doc, "cube")
    entries = _require_list(doc.get("entries"), n, "entries")
    raw = []
    for i, plane in enumerate(entries):
        plane = _require_list(plane, n, f"entries[{i}]")
        raw_plane = []
        for j, column in enumerate(plane):
            column = _require_list(column, n, f"entries[{i}][{j}]")
            raw_plane.append(
                [parse_scalar(x, f"entries[{i}][{j}][{k}]") for k, x in enumerate(column)]
            )
        raw.append(raw_plane)
    return validate_cube(raw)


def parse_measure_document(doc) -> MeasureVector:
    _require_object(doc, "measure")
    n = _require_n(doc, "measure")
    values = _require_list(doc.get("values"), n, "values")
    return validate_measure([parse_scalar(x, f"values[{k}]") for k, x in enumerate(values)])


def parse_group_document(doc) -> CayleyTable:
    """Group from either field; exactly one must be present."""
    _require_object(doc, "group")
    has_factors = "invariant_factors" in doc
    has_table = "cayley_table" in doc
    if has_factors == has_table:
        raise FormatError(
            'group document needs exactly one of "invariant_factors" or "cayley_table"'
        )
    if has_factors:
        factors = _require_list(doc["invariant_factors"], None, "invariant_factors")
        for k, d in enumerate(factors):
            if not isinstance(d, int) or isinstance(d, bool):
                raise FormatError(f"invariant_factors[{k}]: expected an integer")
        try:
            return cayley_table(InvariantFactors(tuple(factors)))
        except ValueError as err:
            raise FormatError(f"invariant_factors: {err}") from None
    table = _require_list(doc["cayley_table"], None, "cayley_table")
    n = len(table)
    rows = []
    for i, row in enumerate(table):
        row = _require_list(row, n, f"cayley_table[{i}]")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise FormatError(f"cayley_table[{i}][{j}]: expected an integer state label")
        rows.append(tuple(row))
    return CayleyTable(n, tuple(rows))


def _load(path, parser, kind):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except json.JSONDecodeError as err:
        raise FormatError(f"{path}: not valid JSON ({err})") from None
    try:
        return parser(doc)
    except FormatError as err:
        raise FormatError(f"{path}: {err}") from None


def load_cube(path) -> StructureCube:
    return _load(path, parse_cube_document, "cube")


def load_measure(path) -> MeasureVector:
    return _load(path, parse_measure_document, "measure")


def load_group(path) -> CayleyTable:
    return _load(path, parse_group_document, "group")


def cube_to_document(cube: StructureCube) -> dict:
    return {
        "n": cube.n,
        "entries": [
            [[scalar_to_json(q) for q in column] for column in plane] for plane in cube.entries
        ],
    }


def measure_to_document(measure: MeasureVector) -> dict:
    return {"n": measure.n, "values": [scalar_to_json(q) for q in measure.values]}


def group_to_document(table: CayleyTable) -> dict:
    return {"cayley_table": [list(row) for row in table.rows]}


def serialize(document) -> str:
    """Canonical text for any document dict: stable bytes for equal inputs."""
    return json.dumps(document, indent=2, ensure_ascii=True) + "\n"


def write_document(path, document):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize(document))
