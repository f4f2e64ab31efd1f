"""Tests for exact Q(s) arithmetic and the linear algebra layer."""

import random
from fractions import Fraction

import pytest

from nilfol.exactalg import (
    ONE,
    S,
    ZERO,
    IntLattice,
    Scalar,
    ScalarMatrix,
    ScalarParseError,
    Subspace,
    hnf_lattice,
    kernel,
    q_decompose,
    rational_subspace,
    rref,
    scalar_parse,
    subspace_ops,
    unit_vector,
    vec,
)

from helpers import frac_rank, random_matrix, random_nonzero_scalar, random_scalar


F = Fraction


class TestScalar:
    def test_parse_rational_literal(self):
        assert scalar_parse("3/2") == Scalar.from_fraction(F(3, 2))

    def test_parse_negated_variable(self):
        assert scalar_parse("-s") == -S

    def test_parse_gcd_reduction(self):
        # (s^2-1)/(s-1) reduces to s+1
        assert scalar_parse("(s^2-1)/(s-1)") == S + ONE

    def test_parse_precedence(self):
        assert scalar_parse("1+2*s^2") == ONE + Scalar.from_fraction(2) * S * S
        assert scalar_parse("-s^2") == -(S * S)
        assert scalar_parse("3/2*s") == Scalar.from_fraction(F(3, 2)) * S

    def test_parse_errors(self):
        for bad in ["", "s +", "2 **= 3", "(s", "s^s", "x"]:
            with pytest.raises(ScalarParseError):
                scalar_parse(bad)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            scalar_parse("1/(s-s)")
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    def test_canonical_monic_denominator(self):
        x = scalar_parse("1/(2*s+2)")
        assert x.den[-1] == 1
        assert x == Scalar([F(1, 2)], [1, 1])

    def test_structural_equality_and_hash(self):
        a = scalar_parse("(s^2+2*s+1)/(s+1)")
        b = S + ONE
        assert a == b and hash(a) == hash(b)

    def test_evaluate(self):
        x = scalar_parse("(s^2+1)/(s-1)")
        assert x.evaluate(2) == F(5)
        with pytest.raises(ZeroDivisionError):
            x.evaluate(1)

    def test_str_round_trip(self):
        rng = random.Random(20240811)
        for _ in range(300):
            x = random_scalar(rng)
            assert scalar_parse(str(x)) == x

    def test_pow(self):
        assert S ** 3 == S * S * S
        assert (S + ONE) ** 0 == ONE
        assert S ** -1 == ONE / S


class TestFieldAxioms:
    def test_axioms_randomized(self):
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = (random_scalar(rng) for _ in range(3))
            assert a + b == b + a
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + ZERO == a and a * ONE == a

    def test_inverses(self):
        rng = random.Random(8)
        for _ in range(200):
            a = random_nonzero_scalar(rng)
            assert a * (ONE / a) == ONE
            assert a + (-a) == ZERO

    def test_normalization_idempotent(self):
        rng = random.Random(9)
        for _ in range(200):
            a = random_scalar(rng)
            again = Scalar(a.num, a.den)
            assert again.num == a.num and again.den == a.den


def _iwasawa_d1_matrix():
    # rows: 2-form coordinates, columns: the nine 1-forms; filled from the
    # structure constants [e1,e4]=e6, [e1,e5]=e8, [e2,e4]=e8, [e2,e5]=-e6,
    # [e3,e4]=e9, [e3,e5]=-e7 via d(e^m)(ei,ej) = -c^m_ij.
    import itertools

    pairs = list(itertools.combinations(range(9), 2))
    c = {(0, 3): {5: 1}, (0, 4): {7: 1}, (1, 3): {7: 1}, (1, 4): {5: -1},
         (2, 3): {8: 1}, (2, 4): {6: -1}}
    rows = []
    for (i, j) in pairs:
        row = [ZERO] * 9
        for m, val in c.get((i, j), {}).items():
            row[m] = Scalar.from_fraction(-val)
        rows.append(row)
    return ScalarMatrix(rows)


class TestRref:
    def test_identity(self):
        assert rref(ScalarMatrix.identity(3)).rank == 3

    def test_proportional_rows(self):
        m = ScalarMatrix([[ONE, S], [S, S * S]])
        result = rref(m)
        assert result.rank == 1
        assert result.pivots == (0,)

    def test_iwasawa_one_form_differential_rank(self):
        m = _iwasawa_d1_matrix()
        assert rref(m).rank == 4
        # brute-force oracle: rank of the numeric specialization at s=2,3,5
        for sigma in (2, 3, 5):
            assert frac_rank(m.evaluate(F(sigma))) == 4

    def test_rref_idempotent_and_unique(self):
        rng = random.Random(10)
        for _ in range(50):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            result = rref(m)
            again = rref(result.reduced)
            assert again.reduced == result.reduced
            assert again.rank == result.rank

    def test_rank_matches_specialized_rank(self):
        rng = random.Random(11)
        for _ in range(60):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            r = rref(m).rank
            for sigma in (F(17, 12), F(23, 7), F(101)):
                try:
                    numeric = m.evaluate(sigma)
                except ZeroDivisionError:
                    continue
                assert frac_rank(numeric) <= r


class TestKernel:
    def test_identity_kernel_trivial(self):
        assert kernel(ScalarMatrix.identity(4)).dim == 0

    def test_forced_line(self):
        space = kernel(ScalarMatrix([[-S, ONE]]))
        assert space.dim == 1
        assert space.basis[0] == vec([1, 0]) or space.contains_vector((ONE, S))
        assert space.contains_vector((ONE, S))

    def test_zero_matrix(self):
        assert kernel(ScalarMatrix.zeros(3, 3)) == Subspace.full(3)

    def test_rank_nullity(self):
        rng = random.Random(12)
        for _ in range(50):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
            assert kernel(m).dim == m.cols - rref(m).rank


class TestSubspace:
    def test_sum_and_intersection_of_axes(self):
        a = Subspace(3, [unit_vector(3, 0)])
        b = Subspace(3, [unit_vector(3, 1)])
        ops = subspace_ops(a, b)
        assert ops.sum.dim == 2
        assert ops.intersection.dim == 0
        assert not ops.contains

    def test_equal_spaces(self):
        a = Subspace(2, [(ONE, S)])
        b = Subspace(2, [(S, S * S)])
        assert a == b
        ops = subspace_ops(a, b)
        assert ops.intersection == a and ops.contains

    def test_containment_intersection(self):
        a = Subspace(2, [(ONE, S)])
        full = Subspace.full(2)
        assert full.contains(a) and not a.contains(full)
        assert full.intersection(a) == a

    def test_dimension_formula(self):
        rng = random.Random(13)
        for _ in range(40):
            n = rng.randint(2, 5)
            a = Subspace(n, [tuple(random_scalar(rng) for _ in range(n))
                             for _ in range(rng.randint(0, n))])
            b = Subspace(n, [tuple(random_scalar(rng) for _ in range(n))
                             for _ in range(rng.randint(0, n))])
            assert a.sum(b).dim + a.intersection(b).dim == a.dim + b.dim


class TestQDecompose:
    def test_irrational_line_spreads_to_plane(self):
        # (-s, 1) splits into the coefficient layers (0, 1) and (-1, 0)
        space = q_decompose([(-S, ONE)], 2)
        assert space == Subspace.full(2)

    def test_rational_vector_fixed(self):
        space = q_decompose([vec([1, 2])], 2)
        assert space == Subspace(2, [vec([1, 2])])

    def test_monomial_scaling_dropped(self):
        space = q_decompose([(S * S, ZERO)], 2)
        assert space == Subspace(2, [vec([1, 0])])

    def test_contains_rational_members(self):
        rng = random.Random(14)
        for _ in range(60):
            n = rng.randint(2, 4)
            vectors = [tuple(random_scalar(rng) for _ in range(n))
                       for _ in range(rng.randint(1, 2))]
            space = Subspace(n, vectors)
            decomposed = q_decompose(space.basis, n)
            rational = rational_subspace(space)
            assert decomposed.contains(rational)
            for v in space.basis:
                assert decomposed.contains_vector(v)


class TestRationalSubspace:
    def test_mixed_direction_has_no_rational_member(self):
        e = lambda i: unit_vector(9, i)
        space = Subspace(9, [e(0), vec_e2_plus_s_e3()])
        rat = rational_subspace(space)
        assert rat == Subspace(9, [e(0)])

    def test_rational_space_unchanged(self):
        space = Subspace(3, [vec([1, 2, 0]), vec([0, 0, 5])])
        assert rational_subspace(space) == space

    def test_irrational_line_collapses(self):
        space = Subspace(2, [(ONE, S)])
        assert rational_subspace(space).dim == 0


def vec_e2_plus_s_e3():
    v = [ZERO] * 9
    v[1] = ONE
    v[2] = S
    return tuple(v)


class TestHnfLattice:
    def test_redundant_generator(self):
        lat = hnf_lattice([(1, 0), (0, 1), (1, 1)])
        assert lat.basis == ((F(1), F(0)), (F(0), F(1)))
        assert lat.is_standard()

    def test_gcd_in_rank_one(self):
        lat = hnf_lattice([(2,), (3,)])
        assert lat.basis == ((F(1),),)

    def test_rational_rescaling(self):
        lat = hnf_lattice([(F(1, 2), 0), (0, 1)])
        assert lat.basis == ((F(1, 2), F(0)), (F(0), F(1)))

    def test_rank_deficient_rejected(self):
        with pytest.raises(ValueError, match="lattice not full rank"):
            hnf_lattice([(1, 2), (2, 4)])

    def test_generator_order_irrelevant(self):
        rng = random.Random(15)
        for _ in range(40):
            k = rng.randint(1, 3)
            gens = [[F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(k)]
                    for _ in range(k + rng.randint(0, 2))]
            try:
                lat = hnf_lattice(gens)
            except ValueError:
                continue
            shuffled = gens[:]
            rng.shuffle(shuffled)
            assert hnf_lattice(shuffled) == lat
            # appending an integer combination changes nothing
            coeffs = [rng.randint(-2, 2) for _ in gens]
            combo = [sum(a * g[i] for a, g in zip(coeffs, gens)) for i in range(k)]
            assert hnf_lattice(gens + [combo]) == lat

    def test_membership_and_reduction(self):
        lat = hnf_lattice([(1, 0), (0, F(1, 2))])
        assert lat.contains((3, F(5, 2)))
        assert not lat.contains((F(1, 2), 0))
        assert lat.reduce((F(7, 3), F(3, 4))) == (F(1, 3), F(1, 4))
