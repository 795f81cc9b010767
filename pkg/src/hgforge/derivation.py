"""Building cubes from an abelian group and a probability measure.

The product of states i and j in the derived structure is the translate
of the measure by the group product of i and j: the weight of state k in
the column of (i, j) is the measure of the state that multiplies (i j)
into k.  Equivalently, the left action of state i is G_i M, where G_i is
the translation permutation of i and M is the mixture matrix of the
measure; this side identity is what the recovery path checks against.

The construction degrades in exactly two ways, both detected here with
an exact witness: two translates of the measure can coincide (the cube
then has fewer than n distinct columns), or the mixture matrix can be
singular (the action matrices then drop rank).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DimensionMismatch,
    MeasureVector,
    RationalMatrix,
    StructureCube,
    ZERO,
    validate_cube,
    validate_measure,
)
from .groups import CayleyTable

NON_DEGENERATE = "non-degenerate"
REPEATED_TRANSLATES = "repeated-translates"
SINGULAR_MIXTURE = "singular-mixture"


@dataclass(frozen=True)
class MixtureMatrix:
    """Measure-weighted sum of the translation permutations of a group.

    Column j is the measure translated by state j; column 1 is the
    measure itself.  Commutativity of the group makes this matrix
    commute with every translation permutation.
    """

    table: CayleyTable
    measure: MeasureVector
    matrix: RationalMatrix


@dataclass(frozen=True)
class DegeneracyVerdict:
    """How a (group, measure) pair degrades, if it does.

    kind "repeated-translates" comes with repeated_state: a state h > 1
    whose translate of the measure equals the measure itself.  kind
    "singular-mixture" comes with kernel_vector: a nonzero rational
    vector annihilated by the mixture matrix.
    """

    kind: str
    repeated_state: int | None = None
    kernel_vector: tuple | None = None

    @property
    def degenerate(self) -> bool:
        return self.kind != NON_DEGENERATE

    def describe(self) -> str:
        if self.kind == REPEATED_TRANSLATES:
            return f"repeated-translates: translating by state {self.repeated_state} fixes the measure"
        if self.kind == SINGULAR_MIXTURE:
            vec = ", ".join(str(x) for x in self.kernel_vector)
            return f"singular-mixture: mixture matrix kills ({vec})"
        return NON_DEGENERATE


def _require_same_n(table: CayleyTable, measure: MeasureVector):
    if table.n != measure.n:
        raise DimensionMismatch(f"group has {table.n} states, measure has {measure.n}")


def mixture_matrix(table: CayleyTable, measure) -> MixtureMatrix:
    """Sum of measure-weighted translation permutations.

    Built by direct placement: weight k lands in row (k j) of column j.
    For a fixed column the row positions sweep a permutation, so every
    cell receives exactly one contribution.
    """
    measure = validate_measure(measure)
    _require_same_n(table, measure)
    n = table.n
    cells = [[ZERO] * n for _ in range(n)]
    for k in range(n):
        weight = measure.values[k]
        row = table.rows[k]
        for j in range(n):
            cells[row[j] - 1][j] = weight
    return MixtureMatrix(table, measure, RationalMatrix(tuple(tuple(r) for r in cells)))


def derive_cube(table: CayleyTable, measure) -> StructureCube:
    """Cube of all pairwise products of measure translates.

    Entry (i, j, k) is the measure of k (i j)^{-1}.  The result always
    passes validate_cube, is commutative and associative, and its left
    action at state i equals G_i times the mixture matrix.
    """
    measure = validate_measure(measure)
    _require_same_n(table, measure)
    n = table.n
    rows = table.rows
    inverse = [rows[i].index(1) for i in range(n)]
    values = measure.values
    entries = []
    for i in range(n):
        plane = []
        for j in range(n):
            inv_ij = inverse[rows[i][j] - 1]
            inv_row = rows[inv_ij]
            plane.append(tuple(values[inv_row[k] - 1] for k in range(n)))
        entries.append(tuple(plane))
    return validate_cube(entries)


def degeneracy_check(table: CayleyTable, measure) -> DegeneracyVerdict:
    """Detect either failure mode of the construction, with a witness.

    Checks translate collisions first: if any column of the mixture
    matrix repeats, some column equals column 1 (translating the
    collision by a group element moves it onto the measure itself), and
    that state is the witness.  Otherwise a rank drop of the mixture
    matrix is reported through a kernel vector.
    """
    mixture = mixture_matrix(table, measure)
    matrix = mixture.matrix
    n = table.n
    columns = [matrix.column(j) for j in range(n)]
    for h in range(1, n):
        if columns[h] == columns[0]:
            return DegeneracyVerdict(REPEATED_TRANSLATES, repeated_state=h + 1)
    if len(set(columns)) < n:  # pragma: no cover - excluded by the group action
        duplicate = next(
            h for h in range(1, n) if columns[h] in columns[:h]
        )
        other = columns.index(columns[duplicate])
        witness = table.product(duplicate + 1, table.inverse(other + 1))
        return DegeneracyVerdict(REPEATED_TRANSLATES, repeated_state=witness)
    kernel = matrix.kernel_vector()
    if kernel is not None:
        return DegeneracyVerdict(SINGULAR_MIXTURE, kernel_vector=kernel)
    return DegeneracyVerdict(NON_DEGENERATE)
