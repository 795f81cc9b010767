"""Structural predicates on cubes, each returning an evidence-backed report.

Every check is a total function: it never raises on a valid cube, it
returns a PropertyReport whose witnesses pin down the first violations
in a deterministic scan order.  Associativity is decided by two
independent routes on purpose - a matrix identity and a brute-force
triple scan - so each can catch a bug in the other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import StructureCube, ZERO, format_scalar, format_vector, left_matrix, right_matrix

DEFAULT_WITNESS_CAP = 16


@dataclass(frozen=True)
class Witness:
    """One concrete violation: where it happened and the two sides."""

    indices: tuple[int, ...]
    expected: str
    actual: str


@dataclass(frozen=True)
class PropertyReport:
    """Verdict for one property.

    holds is true exactly when witnesses is empty.  violation_count is
    the full count even when the witness list is truncated at the cap.
    """

    name: str
    holds: bool
    witnesses: tuple[Witness, ...]
    violation_count: int
    detail: str | None = None


class _Collector:
    """Counts every violation, keeps at most `cap` witnesses."""

    def __init__(self, cap):
        self.cap = max(1, cap)
        self.witnesses = []
        self.count = 0

    def add(self, indices, expected, actual):
        self.count += 1
        if len(self.witnesses) < self.cap:
            self.witnesses.append(Witness(tuple(indices), expected, actual))

    def report(self, name, detail=None):
        return PropertyReport(name, self.count == 0, tuple(self.witnesses), self.count, detail)


def is_commutative(cube: StructureCube, witness_cap=DEFAULT_WITNESS_CAP) -> PropertyReport:
    """Do states i and j produce the same column in both orders?"""
    entries = cube.entries
    found = _Collector(witness_cap)
    for i in range(cube.n):
        for j in range(i + 1, cube.n):
            if entries[i][j] != entries[j][i]:
                found.add((i + 1, j + 1), format_vector(entries[i][j]), format_vector(entries[j][i]))
    return found.report("commutative")


def is_associative_bruteforce(cube: StructureCube, witness_cap=DEFAULT_WITNESS_CAP) -> PropertyReport:
    """Triple products expanded coefficient by coefficient.

    For every (i, j, m), the column of (i*j)*m must equal the column of
    i*(j*m); both sides are expanded through the cube with no matrix
    algebra involved.
    """
    n, entries = cube.n, cube.entries
    found = _Collector(witness_cap)
    for i in range(n):
        plane_i = entries[i]
        for j in range(n):
            coeff_ij = [(k, q) for k, q in enumerate(plane_i[j]) if q]
            plane_j = entries[j]
            for m in range(n):
                lhs = [ZERO] * n
                for k, q in coeff_ij:
                    col = entries[k][m]
                    for p in range(n):
                        if col[p]:
                            lhs[p] = lhs[p] + q * col[p]
                rhs = [ZERO] * n
                for q_idx, q in enumerate(plane_j[m]):
                    if not q:
                        continue
                    col = plane_i[q_idx]
                    for p in range(n):
                        if col[p]:
                            rhs[p] = rhs[p] + q * col[p]
                if lhs != rhs:
                    found.add((i + 1, j + 1, m + 1), format_vector(lhs), format_vector(rhs))
    return found.report("associative-bruteforce")


def is_associative_matrix(cube: StructureCube, witness_cap=DEFAULT_WITNESS_CAP) -> PropertyReport:
    """Matrix route: the left-action matrices must reproduce the products.

    For every (i, j), the matrix product of the left actions of i and j
    must equal the coefficient combination of left actions given by the
    product column of (i, j).  Equivalent to the brute-force route, but
    through an entirely different computation.
    """
    n, entries = cube.n, cube.entries
    actions = [
        [[entries[i][c][r] for c in range(n)] for r in range(n)] for i in range(n)
    ]
    found = _Collector(witness_cap)
    for i in range(n):
        act_i = actions[i]
        for j in range(n):
            act_j = actions[j]
            product = [[ZERO] * n for _ in range(n)]
            for r in range(n):
                row_i = act_i[r]
                out = product[r]
                for k in range(n):
                    x = row_i[k]
                    if not x:
                        continue
                    row_k = act_j[k]
                    for c in range(n):
                        if row_k[c]:
                            out[c] = out[c] + x * row_k[c]
            combo = [[ZERO] * n for _ in range(n)]
            for k, q in enumerate(entries[i][j]):
                if not q:
                    continue
                act_k = actions[k]
                for r in range(n):
                    row = act_k[r]
                    out = combo[r]
                    for c in range(n):
                        if row[c]:
                            out[c] = out[c] + q * row[c]
            if product != combo:
                r, c = next(
                    (r, c) for r in range(n) for c in range(n) if product[r][c] != combo[r][c]
                )
                found.add(
                    (i + 1, j + 1),
                    f"entry ({r + 1}, {c + 1}) = {format_scalar(product[r][c])}",
                    f"entry ({r + 1}, {c + 1}) = {format_scalar(combo[r][c])}",
                )
    return found.report("associative-matrix")


@dataclass(frozen=True)
class ConditionAReport:
    """Column-count and rank evidence for the derivability test.

    holds is true exactly when the cube has n distinct product columns
    and every left and right action matrix has full rank n.
    """

    n: int
    distinct_column_count: int
    left_ranks: tuple[int, ...]
    right_ranks: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return (
            self.distinct_column_count == self.n
            and all(r == self.n for r in self.left_ranks)
            and all(r == self.n for r in self.right_ranks)
        )


def satisfies_condition_A(cube: StructureCube) -> ConditionAReport:
    """Exactly n distinct columns, and all action matrices of full rank."""
    n = cube.n
    distinct = len({cube.entries[i][j] for i in range(n) for j in range(n)})
    left_ranks = tuple(left_matrix(cube, i).rank() for i in range(1, n + 1))
    right_ranks = tuple(right_matrix(cube, i).rank() for i in range(1, n + 1))
    return ConditionAReport(n, distinct, left_ranks, right_ranks)


def check_corollaries(cube: StructureCube, witness_cap=DEFAULT_WITNESS_CAP) -> list[PropertyReport]:
    """Four structural consequences that hold on every derived cube.

    Useful as fast necessary conditions and as independent diagnostics:
      column-contents       every product column holds the same multiset
                            of values as column (1, 1), and the cube uses
                            at most n distinct scalars overall
      constant-diagonals    within each left action, the diagonal entries
                            all agree
      row-column-contents   within each left action, every row and every
                            column holds one and the same multiset
      product-columns       the expansion of the product column of (k, j)
                            through plane k matches its expansion through
                            the diagonal column of (k, k)
    """
    n, entries = cube.n, cube.entries

    base = tuple(sorted(entries[0][0]))
    contents = _Collector(witness_cap)
    for i in range(n):
        for j in range(n):
            col = tuple(sorted(entries[i][j]))
            if col != base:
                contents.add((i + 1, j + 1), format_vector(base), format_vector(col))
    scalars = {q for plane in entries for col in plane for q in col}
    if len(scalars) > n:
        contents.add((), f"at most {n} distinct values in the cube", f"{len(scalars)} distinct values")
    reports = [contents.report("column-contents")]

    diagonals = _Collector(witness_cap)
    for i in range(n):
        first = entries[i][0][0]
        for j in range(1, n):
            if entries[i][j][j] != first:
                diagonals.add((i + 1, j + 1), format_scalar(first), format_scalar(entries[i][j][j]))
    reports.append(diagonals.report("constant-diagonals"))

    rows_cols = _Collector(witness_cap)
    for i in range(n):
        plane = entries[i]
        base_i = tuple(sorted(plane[0]))
        for j in range(1, n):
            col = tuple(sorted(plane[j]))
            if col != base_i:
                rows_cols.add((i + 1, j + 1), format_vector(base_i), format_vector(col))
        for r in range(n):
            row = tuple(sorted(plane[c][r] for c in range(n)))
            if row != base_i:
                rows_cols.add((i + 1, r + 1), format_vector(base_i), format_vector(row))
    reports.append(rows_cols.report("row-column-contents"))

    products = _Collector(witness_cap)
    for k in range(n):
        plane_k = entries[k]
        diag = plane_k[k]
        for j in range(n):
            lhs = [ZERO] * n
            for idx, q in enumerate(plane_k[j]):
                if not q:
                    continue
                col = plane_k[idx]
                for p in range(n):
                    if col[p]:
                        lhs[p] = lhs[p] + q * col[p]
            rhs = [ZERO] * n
            for idx, q in enumerate(diag):
                if not q:
                    continue
                col = entries[idx][j]
                for p in range(n):
                    if col[p]:
                        rhs[p] = rhs[p] + q * col[p]
            if lhs != rhs:
                products.add((k + 1, j + 1), format_vector(lhs), format_vector(rhs))
    reports.append(products.report("product-columns"))

    return reports
