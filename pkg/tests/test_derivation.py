import random
from fractions import Fraction

import pytest

from hgforge import (
    DimensionMismatch,
    InvariantFactors,
    RationalMatrix,
    cayley_table,
    check_corollaries,
    degeneracy_check,
    derive_cube,
    enumerate_abelian_groups,
    is_associative_bruteforce,
    is_associative_matrix,
    is_commutative,
    left_matrix,
    mixture_matrix,
    point_mass,
    random_measure,
    rat,
    regular_representation,
    satisfies_condition_A,
    validate_cube,
    validate_measure,
)
from oracles import cofactor_det, oracle_derive


class TestMixtureMatrix:
    def test_z2_example(self, z2_table, z2_measure):
        mix = mixture_matrix(z2_table, z2_measure)
        assert mix.matrix == RationalMatrix.from_rows([["3/4", "1/4"], ["1/4", "3/4"]])

    def test_point_mass_gives_identity(self):
        for n in (1, 3, 4):
            table = cayley_table(enumerate_abelian_groups(n)[0])
            assert mixture_matrix(table, point_mass(n, 1)).matrix == RationalMatrix.identity(n)

    def test_uniform_is_singular(self, z2_table):
        mix = mixture_matrix(z2_table, validate_measure(["1/2", "1/2"]))
        assert mix.matrix == RationalMatrix.from_rows([["1/2", "1/2"], ["1/2", "1/2"]])
        assert mix.matrix.rank() == 1

    def test_columns_are_translates(self, z2_table, z2_measure):
        # column 1 is the measure itself; column j its translate by j
        mix = mixture_matrix(z2_table, z2_measure).matrix
        assert mix.column(0) == z2_measure.values

    def test_equals_weighted_sum_of_permutations(self):
        rng = random.Random(3)
        for n in (2, 4, 6):
            for factors in enumerate_abelian_groups(n):
                table = cayley_table(factors)
                measure = random_measure(rng, n)
                rep = regular_representation(table)
                total = rep.matrices[0].scale(measure.values[0])
                for k in range(1, n):
                    total = total + rep.matrices[k].scale(measure.values[k])
                assert mixture_matrix(table, measure).matrix == total

    def test_dimension_mismatch(self, z2_table):
        with pytest.raises(DimensionMismatch):
            mixture_matrix(z2_table, point_mass(3, 1))


class TestDeriveCube:
    def test_z2_fixture(self, z2_table, z2_measure, z2_cube):
        assert derive_cube(z2_table, z2_measure) == z2_cube

    def test_z3_fixture(self, z3_cube):
        table = cayley_table(InvariantFactors((3,)))
        assert derive_cube(table, validate_measure(["1/2", "1/4", "1/4"])) == z3_cube

    def test_point_mass_gives_indicator_cube(self):
        for n in (1, 2, 4, 6):
            for factors in enumerate_abelian_groups(n):
                table = cayley_table(factors)
                cube = derive_cube(table, point_mass(n, 1))
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        for k in range(1, n + 1):
                            expected = 1 if table.product(i, j) == k else 0
                            assert cube.value(i, j, k) == expected

    def test_against_independent_oracle(self):
        rng = random.Random(17)
        for n in (2, 3, 4, 5, 6, 8):
            for factors in enumerate_abelian_groups(n):
                table = cayley_table(factors)
                measure = random_measure(rng, n)
                expected = oracle_derive(
                    [list(r) for r in table.rows],
                    [Fraction(int(q.numerator), int(q.denominator)) for q in measure.values],
                )
                assert derive_cube(table, measure) == validate_cube(expected)

    def test_column_one_one_is_the_measure(self):
        rng = random.Random(23)
        for n in (2, 5, 7):
            table = cayley_table(enumerate_abelian_groups(n)[0])
            measure = random_measure(rng, n)
            assert derive_cube(table, measure).column(1, 1) == measure.values

    def test_always_passes_all_checks(self):
        rng = random.Random(29)
        for n in (1, 2, 3, 4, 6):
            for factors in enumerate_abelian_groups(n):
                table = cayley_table(factors)
                for _ in range(2):
                    cube = derive_cube(table, random_measure(rng, n))
                    assert is_commutative(cube).holds
                    assert is_associative_matrix(cube).holds
                    assert is_associative_bruteforce(cube).holds
                    assert all(r.holds for r in check_corollaries(cube))

    def test_left_action_is_permutation_times_mixture(self):
        rng = random.Random(31)
        for n in (2, 3, 4, 6, 8):
            for factors in enumerate_abelian_groups(n):
                table = cayley_table(factors)
                measure = random_measure(rng, n)
                cube = derive_cube(table, measure)
                mix = mixture_matrix(table, measure).matrix
                rep = regular_representation(table)
                for i in range(1, n + 1):
                    assert left_matrix(cube, i) == rep.matrices[i - 1] @ mix

    def test_mixture_commutes_with_actions(self):
        rng = random.Random(37)
        for n in (4, 6, 9):
            for factors in enumerate_abelian_groups(n):
                table = cayley_table(factors)
                mix = mixture_matrix(table, random_measure(rng, n)).matrix
                rep = regular_representation(table)
                for g in rep.matrices:
                    assert g @ mix == mix @ g

    def test_dimension_mismatch(self, z2_table):
        with pytest.raises(DimensionMismatch):
            derive_cube(z2_table, point_mass(3, 1))


class TestDegeneracy:
    def test_uniform_on_whole_group(self, z2_table):
        verdict = degeneracy_check(z2_table, validate_measure(["1/2", "1/2"]))
        assert verdict.kind == "repeated-translates"
        assert verdict.repeated_state == 2
        assert verdict.degenerate

    def test_z2_generic_nondegenerate(self, z2_table, z2_measure):
        verdict = degeneracy_check(z2_table, z2_measure)
        assert verdict.kind == "non-degenerate"
        assert not verdict.degenerate
        # determinant behind it: 9/16 - 1/16
        assert mixture_matrix(z2_table, z2_measure).matrix.det() == rat(1, 2)

    def test_z4_singular_mixture(self):
        table = cayley_table(InvariantFactors((4,)))
        measure = validate_measure(["1/2", "1/4", 0, "1/4"])
        verdict = degeneracy_check(table, measure)
        assert verdict.kind == "singular-mixture"
        assert verdict.kernel_vector == (rat(1), rat(-1), rat(1), rat(-1))
        matrix = mixture_matrix(table, measure).matrix
        # exact annihilation, and the cofactor oracle agrees the matrix is singular
        for row in matrix.entries:
            assert sum(r * v for r, v in zip(row, verdict.kernel_vector)) == 0
        as_fractions = [
            [Fraction(int(q.numerator), int(q.denominator)) for q in row] for row in matrix.entries
        ]
        assert cofactor_det(as_fractions) == 0

    def test_repeated_translate_witness_fixes_measure(self):
        # uniform on the subgroup {1, 3} of Z_4
        table = cayley_table(InvariantFactors((4,)))
        measure = validate_measure(["1/2", 0, "1/2", 0])
        verdict = degeneracy_check(table, measure)
        assert verdict.kind == "repeated-translates"
        h = verdict.repeated_state
        assert h != 1
        translated = tuple(
            measure.values[table.product(k, table.inverse(h)) - 1] for k in range(1, 5)
        )
        assert translated == measure.values

    def test_matches_condition_a(self):
        rng = random.Random(41)
        samples = [
            (cayley_table(InvariantFactors((2,))), validate_measure(["1/2", "1/2"])),
            (cayley_table(InvariantFactors((4,))), validate_measure(["1/2", "1/4", 0, "1/4"])),
            (cayley_table(InvariantFactors((4,))), validate_measure(["1/2", 0, "1/2", 0])),
        ]
        for n in (2, 3, 4, 6):
            for factors in enumerate_abelian_groups(n):
                table = cayley_table(factors)
                samples.append((table, random_measure(rng, n)))
        for table, measure in samples:
            verdict = degeneracy_check(table, measure)
            cube = derive_cube(table, measure)
            assert (not verdict.degenerate) == satisfies_condition_A(cube).holds

    def test_single_state_never_degenerate(self):
        table = cayley_table(InvariantFactors(()))
        assert not degeneracy_check(table, point_mass(1, 1)).degenerate
