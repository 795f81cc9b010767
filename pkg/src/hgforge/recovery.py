"""Recovering the unique (group, measure) pair behind a derivable cube.

The pipeline runs cheap necessary gates first and stops at the first
failure, naming it: validation, commutativity, associativity (matrix
route), the distinct-columns-and-full-rank test, column matching against
the plane of state 1, the group axioms, and finally certification.  The
candidate table is read off by matching every product column against the
columns of state 1's left action; the candidate measure is the product
column of (1, 1).

A successful result is never taken on faith: the candidate pair is fed
back through the forward construction and the rebuilt cube must equal
the input entry for entry.  Certification is what turns "all gates
passed" into "this cube is derived from this pair".
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    MeasureVector,
    StructureCube,
    ValidationError,
    DimensionMismatch,
    format_scalar,
    rat,
    validate_cube,
    validate_measure,
)
from .checks import (
    DEFAULT_WITNESS_CAP,
    Witness,
    is_associative_matrix,
    is_commutative,
    satisfies_condition_A,
)
from .derivation import derive_cube
from .groups import CayleyTable, InvalidTable, InvariantFactors, canonical_form

FAILS_VALIDATION = "fails-validation"
NOT_COMMUTATIVE = "not-commutative"
NOT_ASSOCIATIVE = "not-associative"
FAILS_CONDITION_A = "fails-condition-a"
COLUMN_MATCH_FAILURE = "column-match-failure"
GROUP_AXIOM_FAILURE = "group-axiom-failure"
ROUND_TRIP_MISMATCH = "round-trip-mismatch"

VALUE_ABSENT = "value-absent"
NOT_FUNCTIONAL = "not-functional"


class InconsistentExpansion(ValueError):
    """The left action of state 1 is not the claimed mixture of translations."""


@dataclass(frozen=True)
class RecoveryResult:
    """Either a certified (table, measure, factors) triple or a reason.

    recovered is true exactly when reason is None, and then table,
    measure, and factors are all present and certified: deriving from
    them reproduces the input cube exactly.
    """

    table: CayleyTable | None
    measure: MeasureVector | None
    factors: InvariantFactors | None
    reason: str | None = None
    witness: Witness | None = None
    detail: str | None = None

    @property
    def recovered(self) -> bool:
        return self.reason is None


@dataclass(frozen=True)
class ExtractionResult:
    """Group read off from the positions of a single value, or a reason."""

    table: CayleyTable | None
    reason: str | None = None
    witness: tuple | None = None
    detail: str | None = None

    @property
    def extracted(self) -> bool:
        return self.reason is None


def _rejection(reason, witness=None, detail=None) -> RecoveryResult:
    return RecoveryResult(None, None, None, reason, witness, detail)


def _first_cube_mismatch(expected: StructureCube, actual: StructureCube):
    for i in range(expected.n):
        for j in range(expected.n):
            col_e = expected.entries[i][j]
            col_a = actual.entries[i][j]
            if col_e != col_a:
                k = next(k for k in range(expected.n) if col_e[k] != col_a[k])
                return (i + 1, j + 1, k + 1), col_e[k], col_a[k]
    return None


def _certified_result(cube: StructureCube, table: CayleyTable, measure: MeasureVector) -> RecoveryResult:
    """Final gate: rebuild the cube from the candidate pair and compare."""
    rebuilt = derive_cube(table, measure)
    mismatch = _first_cube_mismatch(cube, rebuilt)
    if mismatch is not None:
        indices, want, got = mismatch
        return _rejection(
            ROUND_TRIP_MISMATCH,
            Witness(indices, format_scalar(want), format_scalar(got)),
            "rebuilt cube differs from the input",
        )
    return RecoveryResult(table, measure, canonical_form(table))


def recover(cube, witness_cap=DEFAULT_WITNESS_CAP) -> RecoveryResult:
    """Decide whether the cube is derived and, if so, from what.

    Gate order and the reasons they emit:
      validation        fails-validation
      commutativity     not-commutative
      associativity     not-associative (matrix route)
      distinct columns  fails-condition-a
      and full ranks
      column matching   column-match-failure
      group axioms      group-axiom-failure
      certification     round-trip-mismatch
    """
    if not isinstance(cube, StructureCube):
        try:
            cube = validate_cube(cube)
        except ValidationError as err:
            first = err.violations[0]
            return _rejection(
                FAILS_VALIDATION, Witness(first.indices, first.kind, first.detail), str(err)
            )

    commutative = is_commutative(cube, witness_cap)
    if not commutative.holds:
        return _rejection(NOT_COMMUTATIVE, commutative.witnesses[0])

    associative = is_associative_matrix(cube, witness_cap)
    if not associative.holds:
        return _rejection(NOT_ASSOCIATIVE, associative.witnesses[0])

    condition = satisfies_condition_A(cube)
    if not condition.holds:
        return _rejection(
            FAILS_CONDITION_A,
            detail=(
                f"{condition.distinct_column_count} distinct columns of {cube.n}; "
                f"left ranks {list(condition.left_ranks)}, right ranks {list(condition.right_ranks)}"
            ),
        )

    n = cube.n
    state_of_column = {}
    for k in range(n):
        state_of_column[cube.entries[0][k]] = k + 1
    if len(state_of_column) != n:  # pragma: no cover - excluded by condition (A)
        return _rejection(COLUMN_MATCH_FAILURE, detail="plane of state 1 repeats a column")

    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            state = state_of_column.get(cube.entries[i][j])
            if state is None:
                return _rejection(
                    COLUMN_MATCH_FAILURE,
                    Witness((i + 1, j + 1), "a column of state 1's plane", "an unmatched column"),
                    f"column ({i + 1}, {j + 1}) matches no column of state 1",
                )
            row.append(state)
        rows.append(tuple(row))

    try:
        table = CayleyTable(n, tuple(rows))
    except InvalidTable as err:
        return _rejection(GROUP_AXIOM_FAILURE, detail=str(err))

    measure = validate_measure(cube.column(1, 1))
    return _certified_result(cube, table, measure)


def recover_measure_from_A1(cube: StructureCube, table) -> MeasureVector:
    """Read the measure off the plane of state 1 and verify the expansion.

    The left action of state 1 must equal the measure-weighted sum of the
    table's translation permutations.  The table may be a CayleyTable or
    raw rows whose columns are permutations; raw rows are accepted so a
    mismatched or mislabelled table can be tested directly.  Raises
    InconsistentExpansion when the identity fails.
    """
    cube = validate_cube(cube)
    rows = table.rows if isinstance(table, CayleyTable) else tuple(tuple(int(x) for x in row) for row in table)
    n = cube.n
    if len(rows) != n or any(len(row) != n for row in rows):
        raise DimensionMismatch(f"table shape does not match {n} states")
    full = frozenset(range(1, n + 1))
    for j in range(n):
        if frozenset(rows[i][j] for i in range(n)) != full:
            raise ValueError(f"table column {j + 1} is not a permutation of 1..{n}")

    measure = validate_measure(cube.column(1, 1))
    plane = cube.entries[0]
    for j in range(n):
        for k in range(n):
            p = rows[k][j] - 1
            if plane[j][p] != measure.values[k]:
                raise InconsistentExpansion(
                    f"action of state 1 at row {p + 1}, column {j + 1} is "
                    f"{format_scalar(plane[j][p])}, expansion needs {format_scalar(measure.values[k])}"
                )
    return measure


def extract_group_by_value(cube, value) -> ExtractionResult:
    """Read a group off the positions of one scalar value in the cube.

    For a cube derived from a measure with n distinct values, fixing any
    one value v carves out a relation: (i, j) relates to the single k
    where the column of (i, j) carries v at position k.  That relation
    is the multiplication table of a group isomorphic to the underlying
    one, up to relabelling so its identity sits at state 1.

    Fails with value-absent when v appears nowhere, not-functional when
    some (i, j) sees v zero or several times (always the case when the
    measure has repeated values), or group-axiom-failure.
    """
    cube = validate_cube(cube)
    v = rat(value)
    n = cube.n
    hit_lists = [
        [[k for k in range(n) if cube.entries[i][j][k] == v] for j in range(n)] for i in range(n)
    ]
    if not any(hits for plane in hit_lists for hits in plane):
        return ExtractionResult(None, VALUE_ABSENT, detail=f"value {format_scalar(v)} appears nowhere")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            hits = hit_lists[i][j]
            if len(hits) != 1:
                return ExtractionResult(
                    None,
                    NOT_FUNCTIONAL,
                    witness=(i + 1, j + 1),
                    detail=(
                        f"value {format_scalar(v)} appears {len(hits)} times in column ({i + 1}, {j + 1})"
                    ),
                )
            rows[i][j] = hits[0] + 1

    identity = next(
        (
            e
            for e in range(n)
            if all(rows[e][j] == j + 1 for j in range(n)) and all(rows[i][e] == i + 1 for i in range(n))
        ),
        None,
    )
    if identity is None:
        return ExtractionResult(None, GROUP_AXIOM_FAILURE, detail="no two-sided identity")
    relabel = list(range(1, n + 1))
    relabel[0], relabel[identity] = relabel[identity], relabel[0]
    relabelled = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            relabelled[relabel[i] - 1][relabel[j] - 1] = relabel[rows[i][j] - 1]
    try:
        table = CayleyTable(n, tuple(tuple(r) for r in relabelled))
    except InvalidTable as err:
        return ExtractionResult(None, GROUP_AXIOM_FAILURE, detail=str(err))
    return ExtractionResult(table)
