import random

import pytest

from hgforge import (
    CayleyTable,
    InvalidTable,
    InvariantFactors,
    RationalMatrix,
    canonical_form,
    cayley_table,
    enumerate_abelian_groups,
    regular_representation,
    verify_group_axioms,
)
from oracles import partition_count, search_nonassociative_loop


class TestInvariantFactors:
    def test_order(self):
        assert InvariantFactors((2, 4)).order == 8
        assert InvariantFactors(()).order == 1

    def test_divisibility_enforced(self):
        with pytest.raises(ValueError):
            InvariantFactors((2, 3))

    def test_minimum_factor(self):
        with pytest.raises(ValueError):
            InvariantFactors((1, 2))

    def test_element_orders(self):
        assert InvariantFactors((2, 2)).element_orders() == [1, 2, 2, 2]
        assert InvariantFactors((4,)).element_orders() == [1, 2, 4, 4]
        assert InvariantFactors(()).element_orders() == [1]


class TestEnumeration:
    def test_pinned_small_cases(self):
        assert [g.factors for g in enumerate_abelian_groups(4)] == [(4,), (2, 2)]
        assert [g.factors for g in enumerate_abelian_groups(6)] == [(6,)]
        assert [g.factors for g in enumerate_abelian_groups(1)] == [()]
        assert [g.factors for g in enumerate_abelian_groups(8)] == [(8,), (2, 4), (2, 2, 2)]
        assert [g.factors for g in enumerate_abelian_groups(12)] == [(12,), (2, 6)]

    def test_counts_match_partition_product(self):
        def factorize(n):
            out, d = {}, 2
            while d * d <= n:
                while n % d == 0:
                    out[d] = out.get(d, 0) + 1
                    n //= d
                d += 1
            if n > 1:
                out[n] = out.get(n, 0) + 1
            return out

        for n in range(1, 65):
            expected = 1
            for exponent in factorize(n).values():
                expected *= partition_count(exponent)
            assert len(enumerate_abelian_groups(n)) == expected, n

    def test_classes_are_distinct_and_valid(self):
        for n in (16, 24, 36, 64):
            groups = enumerate_abelian_groups(n)
            assert len({g.factors for g in groups}) == len(groups)
            assert all(g.order == n for g in groups)

    def test_order_cap(self):
        with pytest.raises(ValueError):
            enumerate_abelian_groups(257)
        assert enumerate_abelian_groups(300, cap=512)

    def test_positive_order_required(self):
        with pytest.raises(ValueError):
            enumerate_abelian_groups(0)


class TestCayleyTable:
    def test_z2(self):
        assert cayley_table(InvariantFactors((2,))).rows == ((1, 2), (2, 1))

    def test_klein_all_involutions(self):
        table = cayley_table(InvariantFactors((2, 2)))
        assert all(table.product(i, i) == 1 for i in range(1, 5))

    def test_z4_has_order_four_element(self):
        table = cayley_table(InvariantFactors((4,)))
        assert table.product(2, 2) == 3
        assert table.element_order(2) == 4

    def test_identity_at_state_one(self):
        for n in (1, 2, 3, 4, 6, 8):
            for factors in enumerate_abelian_groups(n):
                table = cayley_table(factors)
                assert all(table.product(1, j) == j for j in range(1, n + 1))

    def test_inverse(self):
        table = cayley_table(InvariantFactors((4,)))
        for i in range(1, 5):
            assert table.product(i, table.inverse(i)) == 1

    def test_invalid_tables_rejected(self):
        with pytest.raises(InvalidTable):
            CayleyTable(2, ((1, 2), (2, 2)))
        with pytest.raises(InvalidTable):
            # valid Latin square, wrong identity position
            CayleyTable(2, ((2, 1), (1, 2)))
        with pytest.raises(InvalidTable):
            CayleyTable(3, ((1, 2), (2, 1)))


class TestVerifyAxioms:
    def test_generated_tables_pass(self):
        for n in (1, 2, 4, 6, 9):
            for factors in enumerate_abelian_groups(n):
                report = verify_group_axioms(cayley_table(factors).rows)
                assert report.holds
                assert report.detail == "identity at state 1"

    def test_latin_failure(self):
        report = verify_group_axioms([[1, 2], [2, 2]])
        assert not report.holds
        assert report.detail == "latin-square"
        assert any(w.indices == (2,) and "2" in w.actual for w in report.witnesses)

    def test_nonassociative_loop_found_by_search(self):
        rows = search_nonassociative_loop(5)
        report = verify_group_axioms(rows)
        assert not report.holds
        assert report.detail == "associativity"

    def test_noncommutative_detected(self):
        # S_3: smallest non-abelian group; associative Latin square with
        # identity, so the commutativity stage is the one that trips
        s3 = [
            [1, 2, 3, 4, 5, 6],
            [2, 1, 5, 6, 3, 4],
            [3, 4, 1, 2, 6, 5],
            [4, 3, 6, 5, 1, 2],
            [5, 6, 2, 1, 4, 3],
            [6, 5, 4, 3, 2, 1],
        ]
        report = verify_group_axioms(s3)
        assert not report.holds
        assert report.detail == "commutativity"

    def test_out_of_range_values(self):
        with pytest.raises(ValueError):
            verify_group_axioms([[1, 2], [2, 3]])


class TestRegularRepresentation:
    def test_z2(self, z2_table):
        rep = regular_representation(z2_table)
        assert rep.matrices[0] == RationalMatrix.identity(2)
        assert rep.matrices[1] == RationalMatrix.from_rows([[0, 1], [1, 0]])

    def test_z3_cycle(self):
        table = cayley_table(InvariantFactors((3,)))
        rep = regular_representation(table)
        cycle = RationalMatrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
        assert rep.matrices[1] == cycle
        assert rep.matrices[1] @ rep.matrices[1] == rep.matrices[2]

    def test_product_law(self):
        for n in (1, 4, 6, 8):
            for factors in enumerate_abelian_groups(n):
                table = cayley_table(factors)
                rep = regular_representation(table)
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        assert (
                            rep.matrices[i - 1] @ rep.matrices[j - 1]
                            == rep.matrices[table.product(i, j) - 1]
                        )

    def test_first_matrix_is_identity_everywhere(self):
        for n in (1, 2, 5, 9):
            for factors in enumerate_abelian_groups(n):
                rep = regular_representation(cayley_table(factors))
                assert rep.matrices[0] == RationalMatrix.identity(n)


class TestCanonicalForm:
    def test_klein_vs_cyclic(self):
        assert canonical_form(cayley_table(InvariantFactors((2, 2)))).factors == (2, 2)
        assert canonical_form(cayley_table(InvariantFactors((4,)))).factors == (4,)

    def test_round_trip_all_classes_up_to_64(self):
        for n in list(range(1, 37)) + [48, 64]:
            for factors in enumerate_abelian_groups(n):
                assert canonical_form(cayley_table(factors)) == factors

    def test_relabel_invariance_z6(self):
        table = cayley_table(InvariantFactors((6,)))
        rng = random.Random(11)
        for _ in range(5):
            perm = [1] + rng.sample(range(2, 7), 5)
            relabelled = [[0] * 6 for _ in range(6)]
            for i in range(6):
                for j in range(6):
                    relabelled[perm[i] - 1][perm[j] - 1] = perm[table.rows[i][j] - 1]
            assert canonical_form(CayleyTable(6, tuple(map(tuple, relabelled)))).factors == (6,)

    def test_order_multiset_separates_same_order_classes(self):
        # all eleven classes of order 64 have distinct order multisets
        orders = [tuple(f.element_orders()) for f in enumerate_abelian_groups(64)]
        assert len(set(orders)) == len(orders)
