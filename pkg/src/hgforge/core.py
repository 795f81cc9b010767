"""Exact-rational data model for structure-constant cubes.

A hypergroup structure on states 1..n is stored as an n*n*n cube of
rational coefficients: entry (i, j, k) is the weight of state k in the
product of states i and j.  Every column (i, j, *) must be a probability
vector, so all the structural predicates (column equality, matrix rank,
associativity) can be decided exactly, with no tolerances anywhere.

State indices are 1-based in the public API and in every report; the
underlying tuples are plain 0-based storage.

Arithmetic uses gmpy2.mpq when available and falls back to
fractions.Fraction otherwise.  Both are exact; mpq is several times
faster, which matters for the degree-five associativity loops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

try:
    from gmpy2 import mpq as _make_rational
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _make_rational = Fraction


def rat(value, denominator=None):
    """Build an exact rational from an int, string, Fraction, or pair.

    Strings may be fractions ("3/4") or decimals ("0.75", "1e-3"); both
    convert exactly.  Floats are rejected outright: a float has already
    been rounded to binary, so accepting one would silently break the
    exactness guarantee.

    >>> rat("0.75") == rat(3, 4)
    True
    """
    if denominator is not None:
        return _make_rational(value, denominator)
    if isinstance(value, float):
        raise TypeError(
            "floating-point values are not exact; pass an int, a Fraction, "
            'or a string such as "3/4" or "0.75"'
        )
    return _make_rational(value)


ZERO = rat(0)
ONE = rat(1)


def format_scalar(q) -> str:
    """Render a rational as "p/q", or just "p" when the denominator is 1."""
    return str(q)


def format_vector(values) -> str:
    return "(" + ", ".join(format_scalar(q) for q in values) + ")"


@dataclass(frozen=True)
class Violation:
    """One broken invariant, located by 1-based indices."""

    kind: str  # "shape-mismatch" | "negative-entry" | "column-sum-not-one" | "sum-not-one"
    indices: tuple[int, ...]
    detail: str

    def __str__(self):
        where = ", ".join(str(i) for i in self.indices)
        return f"{self.kind} at ({where}): {self.detail}" if where else f"{self.kind}: {self.detail}"


class ValidationError(ValueError):
    """Raised when a cube or measure breaks its defining constraints.

    Carries the full list of violations, not just the first one, so a
    caller can report everything that is wrong with an input file.
    """

    def __init__(self, violations):
        self.violations = tuple(violations)
        shown = "; ".join(str(v) for v in self.violations[:3])
        more = len(self.violations) - 3
        if more > 0:
            shown += f"; and {more} more"
        super().__init__(shown)


class DimensionMismatch(ValueError):
    """Operands live on different numbers of states."""


class MatrixShapeError(ValueError):
    """Matrix rows are ragged or empty, or shapes do not compose."""


# --------------------------------------------------------------------------
# matrices


def _fraction_free_eliminate(rows):
    """Bareiss elimination on a mutable list of integer rows.

    Returns (rank, sign, last_pivot).  All divisions are exact by the
    Sylvester determinant identity, so the intermediate values stay
    integers and never lose precision.  For a square matrix of full rank,
    sign * last_pivot is the determinant of the integer matrix.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            sign = -sign
        pivot = rows[r][c]
        for i in range(r + 1, n_rows):
            factor = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            for j in range(c + 1, n_cols):
                row_i[j] = (pivot * row_i[j] - factor * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot
        r += 1
        if r == n_rows:
            break
    return r, sign, prev


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable matrix of exact rationals with integer-exact rank and det."""

    entries: tuple[tuple, ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise MatrixShapeError("matrix must have at least one row and column")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise MatrixShapeError("matrix rows have unequal lengths")

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(rat(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(ONE if r == c else ZERO for c in range(n)) for r in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def entry(self, r, c):
        return self.entries[r][c]

    def row(self, r):
        return self.entries[r]

    def column(self, c):
        return tuple(row[c] for row in self.entries)

    def transpose(self):
        return RationalMatrix(tuple(zip(*self.entries)))

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise MatrixShapeError("cannot add matrices of different shapes")
        return RationalMatrix(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries))
        )

    def scale(self, scalar):
        s = rat(scalar)
        return RationalMatrix(tuple(tuple(s * x for x in row) for row in self.entries))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise MatrixShapeError("inner dimensions do not match")
        product = _matmul(self.entries, other.entries, self.rows, self.cols, other.cols)
        return RationalMatrix(tuple(tuple(row) for row in product))

    def is_column_stochastic(self) -> bool:
        if self.rows != self.cols:
            return False
        if any(x < 0 for row in self.entries for x in row):
            return False
        return all(sum(self.column(c), ZERO) == 1 for c in range(self.cols))

    def is_permutation(self) -> bool:
        if self.rows != self.cols:
            return False
        for row in self.entries:
            if any(x != 0 and x != 1 for x in row):
                return False
            if sum(1 for x in row if x == 1) != 1:
                return False
        return all(sum(1 for r in range(self.rows) if self.entries[r][c] == 1) == 1 for c in range(self.cols))

    def _integer_rows(self):
        """Clear denominators row by row; rank is unchanged, det picks up
        the product of the row scales."""
        cleared = []
        scales = []
        for row in self.entries:
            scale = math.lcm(*(int(q.denominator) for q in row))
            cleared.append([int(q.numerator) * (scale // int(q.denominator)) for q in row])
            scales.append(scale)
        return cleared, scales

    def rank(self) -> int:
        cleared, _ = self._integer_rows()
        r, _, _ = _fraction_free_eliminate(cleared)
        return r

    def det(self):
        if self.rows != self.cols:
            raise MatrixShapeError("determinant requires a square matrix")
        cleared, scales = self._integer_rows()
        r, sign, last_pivot = _fraction_free_eliminate(cleared)
        if r < self.rows:
            return ZERO
        return rat(sign * last_pivot, math.prod(scales))

    def kernel_vector(self):
        """A canonical nonzero vector v with (self @ v) = 0, or None.

        Canonical means: integer entries with gcd 1 and a positive first
        nonzero entry, built from the first free column of the reduced
        echelon form.  Deterministic for a given matrix.
        """
        n_rows, n_cols = self.rows, self.cols
        work = [list(row) for row in self.entries]
        pivot_cols = []
        r = 0
        for c in range(n_cols):
            pivot_row = next((i for i in range(r, n_rows) if work[i][c]), None)
            if pivot_row is None:
                continue
            work[r], work[pivot_row] = work[pivot_row], work[r]
            pivot = work[r][c]
            work[r] = [x / pivot for x in work[r]]
            for i in range(n_rows):
                if i != r and work[i][c]:
                    f = work[i][c]
                    work[i] = [a - f * b for a, b in zip(work[i], work[r])]
            pivot_cols.append(c)
            r += 1
            if r == n_rows:
                break
        if len(pivot_cols) == n_cols:
            return None
        free = next(c for c in range(n_cols) if c not in pivot_cols)
        vec = [ZERO] * n_cols
        vec[free] = ONE
        for row_idx, pc in enumerate(pivot_cols):
            vec[pc] = -work[row_idx][free]
        common = math.lcm(*(int(x.denominator) for x in vec))
        ints = [int(x.numerator) * (common // int(x.denominator)) for x in vec]
        divisor = math.gcd(*ints)
        ints = [x // divisor for x in ints]
        first_nonzero = next(x for x in ints if x)
        if first_nonzero < 0:
            ints = [-x for x in ints]
        return tuple(rat(x) for x in ints)


def _matmul(left, right, n_rows, inner, n_cols):
    """Multiply nested sequences of rationals; returns list rows.

    Skips zero coefficients, which makes products with permutation and
    point-mass matrices cheap.
    """
    out = [[ZERO] * n_cols for _ in range(n_rows)]
    for r in range(n_rows):
        left_row = left[r]
        out_row = out[r]
        for k in range(inner):
            x = left_row[k]
            if not x:
                continue
            right_row = right[k]
            for c in range(n_cols):
                y = right_row[c]
                if y:
                    out_row[c] = out_row[c] + x * y
    return out


# --------------------------------------------------------------------------
# cubes and measures


@dataclass(frozen=True)
class StructureCube:
    """Validated n*n*n cube of product coefficients, 0-based storage.

    entries[i][j] is the column of the product of states i+1 and j+1:
    a nonnegative rational vector summing to one.  Build instances with
    validate_cube; the constructor itself only checks the shape.
    """

    n: int
    entries: tuple[tuple[tuple, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError([Violation("shape-mismatch", (), "need at least one state")])
        if len(self.entries) != self.n or any(
            len(plane) != self.n or any(len(col) != self.n for col in plane) for plane in self.entries
        ):
            raise ValidationError([Violation("shape-mismatch", (), f"entries are not {self.n}^3")])

    def value(self, i, j, k):
        """Coefficient of state k in the product of states i and j (1-based)."""
        return self.entries[i - 1][j - 1][k - 1]

    def column(self, i, j):
        """The full product column of states i and j (1-based)."""
        return self.entries[i - 1][j - 1]


@dataclass(frozen=True)
class MeasureVector:
    """Probability vector over the n states, exact rationals."""

    n: int
    values: tuple

    def value(self, k):
        return self.values[k - 1]


def validate_cube(raw) -> StructureCube:
    """Check shape, nonnegativity, and column sums; return the cube.

    Raises ValidationError carrying every violation found, so an invalid
    input is reported in full rather than one problem at a time.  Raises
    TypeError if any entry is a float.
    """
    if isinstance(raw, StructureCube):
        return raw
    try:
        n = len(raw)
    except TypeError:
        raise ValidationError([Violation("shape-mismatch", (), "cube must be a nested sequence")])
    if n < 1:
        raise ValidationError([Violation("shape-mismatch", (), "need at least one state")])
    planes = []
    for i, plane in enumerate(raw):
        if len(plane) != n:
            raise ValidationError(
                [Violation("shape-mismatch", (i + 1,), f"expected {n} columns, found {len(plane)}")]
            )
        cols = []
        for j, col in enumerate(plane):
            if len(col) != n:
                raise ValidationError(
                    [Violation("shape-mismatch", (i + 1, j + 1), f"expected {n} entries, found {len(col)}")]
                )
            cols.append(tuple(rat(x) for x in col))
        planes.append(tuple(cols))
    entries = tuple(planes)

    violations = []
    for i in range(n):
        for j in range(n):
            col = entries[i][j]
            for k in range(n):
                if col[k] < 0:
                    violations.append(
                        Violation("negative-entry", (i + 1, j + 1, k + 1), format_scalar(col[k]))
                    )
            total = sum(col, ZERO)
            if total != 1:
                violations.append(
                    Violation("column-sum-not-one", (i + 1, j + 1), f"sums to {format_scalar(total)}")
                )
    if violations:
        raise ValidationError(violations)
    return StructureCube(n, entries)


def validate_measure(raw) -> MeasureVector:
    """Check nonnegativity and total mass one; return the measure."""
    if isinstance(raw, MeasureVector):
        return raw
    values = tuple(rat(x) for x in raw)
    if not values:
        raise ValidationError([Violation("shape-mismatch", (), "need at least one state")])
    violations = []
    for k, q in enumerate(values):
        if q < 0:
            violations.append(Violation("negative-entry", (k + 1,), format_scalar(q)))
    total = sum(values, ZERO)
    if total != 1:
        violations.append(Violation("sum-not-one", (), f"sums to {format_scalar(total)}"))
    if violations:
        raise ValidationError(violations)
    return MeasureVector(len(values), values)


def point_mass(n, state) -> MeasureVector:
    """The measure putting all mass on one state (1-based)."""
    if not 1 <= state <= n:
        raise IndexError(f"state {state} out of range 1..{n}")
    return MeasureVector(n, tuple(ONE if k == state else ZERO for k in range(1, n + 1)))


def _check_state_index(i, n):
    if not 1 <= i <= n:
        raise IndexError(f"state {i} out of range 1..{n}")


def left_matrix(cube: StructureCube, i) -> RationalMatrix:
    """Left action of state i: column j is the product column of (i, j)."""
    _check_state_index(i, cube.n)
    plane = cube.entries[i - 1]
    n = cube.n
    return RationalMatrix(tuple(tuple(plane[c][r] for c in range(n)) for r in range(n)))


def right_matrix(cube: StructureCube, i) -> RationalMatrix:
    """Right action of state i: column j is the product column of (j, i)."""
    _check_state_index(i, cube.n)
    entries = cube.entries
    n = cube.n
    return RationalMatrix(tuple(tuple(entries[c][i - 1][r] for c in range(n)) for r in range(n)))


def convolve_measures(cube: StructureCube, x, y) -> MeasureVector:
    """Product of two measures under the cube's operation.

    Bilinear extension of the state products: weight x_i y_j flows to the
    product column of (i, j).  Exactness makes mass preservation an
    identity, not an approximation, so the result is validated strictly.
    """
    x = validate_measure(x)
    y = validate_measure(y)
    n = cube.n
    if x.n != n or y.n != n:
        raise DimensionMismatch(f"measures on {x.n} and {y.n} states, cube has {n}")
    acc = [ZERO] * n
    entries = cube.entries
    for i in range(n):
        xi = x.values[i]
        if not xi:
            continue
        plane = entries[i]
        for j in range(n):
            w = xi * y.values[j]
            if not w:
                continue
            col = plane[j]
            for k in range(n):
                if col[k]:
                    acc[k] = acc[k] + w * col[k]
    return validate_measure(acc)
