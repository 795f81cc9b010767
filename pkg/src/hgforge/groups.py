"""Finite abelian groups: enumeration, Cayley tables, permutation actions.

Groups are handled in two interchangeable forms.  The compact form is
the invariant-factor list (d_1, ..., d_m) with d_1 | d_2 | ... | d_m and
product n, which names each isomorphism class exactly once.  The
concrete form is a 1-based Cayley table with the identity at state 1.
canonical_form maps a table back to its class via the multiset of
element orders, which separates abelian groups completely.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import ONE, ZERO, RationalMatrix
from .checks import DEFAULT_WITNESS_CAP, PropertyReport, Witness, _Collector

DEFAULT_ORDER_CAP = 256


class InvalidTable(ValueError):
    """Raised when a claimed Cayley table fails the group axioms.

    Carries the axiom report on the `report` attribute when one exists.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class InvariantFactors:
    """Invariant-factor name of an abelian group: (2, 4) is Z2 x Z4.

    The empty tuple names the trivial group of order 1.
    """

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        for d in self.factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} is below 2")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"factor {a} does not divide the next factor {b}")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def element_orders(self):
        """Multiset of element orders, computed without building a table."""
        orders = []
        for combo in itertools.product(*(range(d) for d in self.factors)):
            orders.append(math.lcm(*(d // math.gcd(d, t) for d, t in zip(self.factors, combo))))
        return sorted(orders) if orders else [1]


def _partitions(total):
    """All descending partitions of `total`, in descending lex order."""
    if total == 0:
        return [()]
    result = []

    def extend(prefix, remaining, cap):
        if remaining == 0:
            result.append(tuple(prefix))
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            extend(prefix, remaining - part, part)
            prefix.pop()

    extend([], total, total)
    return result


def _factorize(n):
    factors = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def enumerate_abelian_groups(n, cap=DEFAULT_ORDER_CAP) -> list[InvariantFactors]:
    """Every abelian group of order n, once per isomorphism class.

    One entry per choice of an integer partition of each prime exponent;
    results are sorted in descending lexicographic order of the factor
    list, so the cyclic group comes first.

    >>> [g.factors for g in enumerate_abelian_groups(8)]
    [(8,), (2, 4), (2, 2, 2)]
    """
    if n < 1:
        raise ValueError(f"group order must be positive, got {n}")
    if n > cap:
        raise ValueError(f"group order {n} exceeds the enumeration cap {cap}")
    primes = sorted(_factorize(n).items())
    per_prime = [[(p, part) for part in _partitions(e)] for p, e in primes]
    groups = []
    for combo in itertools.product(*per_prime):
        width = max((len(part) for _, part in combo), default=0)
        factors = []
        for slot in range(width):
            d = 1
            for p, part in combo:
                if slot < len(part):
                    d *= p ** part[slot]
            factors.append(d)
        # parts are stored descending, so reversing gives the divisibility chain
        groups.append(InvariantFactors(tuple(reversed(factors))))
    groups.sort(key=lambda g: g.factors, reverse=True)
    return groups


def verify_group_axioms(rows, witness_cap=DEFAULT_WITNESS_CAP) -> PropertyReport:
    """Check an n*n table of 1-based values axiom by axiom.

    Order of testing: Latin square (every row and column a permutation),
    then associativity, then commutativity, then existence of a two-sided
    identity.  The report stops at the first broken axiom so its
    witnesses all speak about one thing; detail names that axiom, or
    locates the identity on success.
    """
    table = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise ValueError("table must be square and non-empty")
    for row in table:
        for x in row:
            if not 1 <= x <= n:
                raise ValueError(f"table value {x} out of range 1..{n}")

    latin = _Collector(witness_cap)
    full = frozenset(range(1, n + 1))
    for i, row in enumerate(table):
        if frozenset(row) != full:
            repeated = sorted(x for x in full if row.count(x) > 1)
            latin.add((i + 1,), "each of 1..n once in the row", f"value {repeated[0]} repeats")
    for j in range(n):
        col = [table[i][j] for i in range(n)]
        if frozenset(col) != full:
            repeated = sorted(x for x in full if col.count(x) > 1)
            latin.add((j + 1,), "each of 1..n once in the column", f"value {repeated[0]} repeats")
    if latin.count:
        return latin.report("group-axioms", detail="latin-square")

    assoc = _Collector(witness_cap)
    for i in range(n):
        for j in range(n):
            tij = table[i][j]
            for k in range(n):
                lhs = table[tij - 1][k]
                rhs = table[i][table[j][k] - 1]
                if lhs != rhs:
                    assoc.add((i + 1, j + 1, k + 1), f"state {lhs}", f"state {rhs}")
    if assoc.count:
        return assoc.report("group-axioms", detail="associativity")

    commut = _Collector(witness_cap)
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                commut.add((i + 1, j + 1), f"state {table[i][j]}", f"state {table[j][i]}")
    if commut.count:
        return commut.report("group-axioms", detail="commutativity")

    identity = next(
        (
            e
            for e in range(n)
            if all(table[e][j] == j + 1 for j in range(n)) and all(table[j][e] == j + 1 for j in range(n))
        ),
        None,
    )
    if identity is None:
        # unreachable for an associative Latin square, kept as a guard
        return PropertyReport(
            "group-axioms",
            False,
            (Witness((), "a two-sided identity", "none found"),),
            1,
            "identity",
        )
    return PropertyReport("group-axioms", True, (), 0, f"identity at state {identity + 1}")


@dataclass(frozen=True)
class CayleyTable:
    """Validated abelian-group table, 1-based, identity at state 1.

    Construction runs the full axiom check and raises InvalidTable on
    any failure, so holding a CayleyTable is proof of the group axioms.
    """

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in row) for row in self.rows))
        if self.n != len(self.rows):
            raise InvalidTable(f"declared {self.n} states but table has {len(self.rows)} rows")
        try:
            report = verify_group_axioms(self.rows)
        except ValueError as err:
            raise InvalidTable(str(err)) from None
        if not report.holds:
            first = report.witnesses[0]
            raise InvalidTable(
                f"{report.detail} fails at {first.indices}: expected {first.expected}, got {first.actual}",
                report,
            )
        if report.detail != "identity at state 1":
            raise InvalidTable(f"{report.detail}, expected state 1", report)

    def product(self, i, j) -> int:
        return self.rows[i - 1][j - 1]

    def inverse(self, i) -> int:
        return self.rows[i - 1].index(1) + 1

    def element_order(self, i) -> int:
        power, order = i, 1
        while power != 1:
            power = self.rows[power - 1][i - 1]
            order += 1
        return order


def cayley_table(factors: InvariantFactors) -> CayleyTable:
    """Concrete table for a factor list, componentwise addition.

    Elements are tuples over Z_{d_1} x ... x Z_{d_m} indexed in mixed
    radix with the first factor most significant; the zero tuple lands
    at state 1.
    """
    if not isinstance(factors, InvariantFactors):
        factors = InvariantFactors(tuple(factors))
    elements = list(itertools.product(*(range(d) for d in factors.factors)))
    index = {t: i for i, t in enumerate(elements)}
    rows = tuple(
        tuple(
            index[tuple((a + b) % d for a, b, d in zip(s, t, factors.factors))] + 1
            for t in elements
        )
        for s in elements
    )
    return CayleyTable(len(elements), rows)


@dataclass(frozen=True)
class PermutationRep:
    """Translation action of a group on itself, one 0/1 matrix per state.

    Matrix i sends the indicator of state j to the indicator of the
    product of i and j; state 1 always yields the identity matrix.
    """

    n: int
    matrices: tuple[RationalMatrix, ...]

    def __post_init__(self):
        if len(self.matrices) != self.n:
            raise ValueError(f"expected {self.n} matrices, got {len(self.matrices)}")
        if any(not g.is_permutation() for g in self.matrices):
            raise ValueError("every action matrix must be a permutation matrix")
        if self.matrices and self.matrices[0] != RationalMatrix.identity(self.n):
            raise ValueError("state 1 must act as the identity")


def _permutation_matrices(rows):
    """0/1 matrices for a table whose every column is a permutation."""
    n = len(rows)
    matrices = []
    for i in range(n):
        row = rows[i]
        entries = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            entries[row[j] - 1][j] = ONE
        matrices.append(RationalMatrix(tuple(tuple(r) for r in entries)))
    return matrices


def regular_representation(table: CayleyTable) -> PermutationRep:
    """Permutation matrices of the translation action, one per state."""
    return PermutationRep(table.n, tuple(_permutation_matrices(table.rows)))


def canonical_form(table: CayleyTable) -> InvariantFactors:
    """Invariant factors of a validated table, via element orders.

    The multiset of element orders determines a finite abelian group up
    to isomorphism, so matching it against each candidate class of the
    same order identifies the table's class exactly.
    """
    observed = sorted(table.element_order(i) for i in range(1, table.n + 1))
    for candidate in enumerate_abelian_groups(table.n, cap=max(table.n, DEFAULT_ORDER_CAP)):
        if candidate.element_orders() == observed:
            return candidate
    raise InvalidTable(f"no abelian group of order {table.n} has element orders {observed}")
