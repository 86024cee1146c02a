from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from freekit.algebra import (
    AlgebraicNumber,
    Matrix,
    Polynomial,
    algebraic_is_root_of_unity,
    characteristic_polynomial,
    companion_matrix,
    euler_phi,
    is_irreducible,
    mat_pow,
    minimal_polynomial,
    r_bound,
    to_scalar,
)
from freekit.errors import DimensionMismatch, NotIrreducible, NotMonic

from oracles import as_tuple, mat_mul

small = st.integers(-3, 3)


def square(d, elems=small):
    return st.lists(st.lists(elems, min_size=d, max_size=d), min_size=d, max_size=d).map(Matrix)


def any_square(max_d=3, elems=small):
    return st.integers(1, max_d).flatmap(lambda d: square(d, elems))


def sympy_charpoly(m):
    z = sympy.Symbol("z")
    coeffs = sympy.Matrix([[sympy.Rational(str(x)) for x in r] for r in m.rows]).charpoly(z).all_coeffs()
    return Polynomial([Fraction(int(c.p), int(c.q)) for c in reversed(coeffs)])


class TestScalars:
    def test_floats_are_refused(self):
        with pytest.raises(TypeError):
            to_scalar(0.5)

    def test_strings_parse_to_fractions(self):
        assert to_scalar("3/6") == Fraction(1, 2)

    def test_integral_entries_stay_ints(self):
        m = Matrix([["4/2", 1], [0, 1]])
        assert m.rows[0][0] == 2 and type(m.rows[0][0]) is int


class TestMatrix:
    def test_non_square_rejected(self):
        with pytest.raises(DimensionMismatch):
            Matrix([[1, 2]])

    def test_dimension_mismatch_in_product(self):
        with pytest.raises(DimensionMismatch):
            Matrix.identity(2) * Matrix.identity(3)

    @settings(max_examples=100)
    @given(st.integers(1, 3).flatmap(lambda d: st.tuples(square(d), square(d))))
    def test_product_matches_oracle(self, ab):
        a, b = ab
        assert as_tuple((a * b).rows) == mat_mul(a.rows, b.rows)

    @settings(max_examples=50)
    @given(any_square(), st.integers(1, 9))
    def test_power_matches_repeated_product(self, m, n):
        acc = m
        for _ in range(n - 1):
            acc = acc * m
        assert mat_pow(m, n) == acc

    def test_inverse(self):
        m = Matrix([[2, 1], [1, 1]])
        assert m * m.inverse() == Matrix.identity(2)

    def test_det_and_rank(self):
        m = Matrix([[4, 2], [2, 1]])
        assert m.det() == 0 and m.rank() == 1

    def test_json_uses_strings(self):
        assert Matrix([["1/2", 1], [0, 1]]).to_json() == [["1/2", "1"], ["0", "1"]]


class TestPolynomials:
    def test_str(self):
        assert str(Polynomial([1, 1, 1])) == "z^2 + z + 1"
        assert str(Polynomial([0, -1, 0, 2])) == "2*z^3 - z"

    def test_divmod(self):
        q, r = divmod(Polynomial([-1, 0, 0, 1]), Polynomial([-1, 1]))
        assert q == Polynomial([1, 1, 1]) and r.is_zero()

    @settings(max_examples=150, deadline=None)
    @given(any_square())
    def test_charpoly_matches_sympy(self, m):
        assert characteristic_polynomial(m) == sympy_charpoly(m)

    @settings(max_examples=150, deadline=None)
    @given(any_square())
    def test_minimal_polynomial_divides_charpoly(self, m):
        mu = minimal_polynomial(m)
        assert mu.is_monic() and mu.degree >= 1
        assert mu.divides(characteristic_polynomial(m))
        assert mu(m) == Matrix.zero(m.dim)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(small, min_size=1, max_size=4))
    def test_companion_round_trip(self, low):
        p = Polynomial(low + [1])
        if not is_irreducible(p):
            return
        assert minimal_polynomial(companion_matrix(p)) == p

    def test_companion_needs_monic(self):
        with pytest.raises(NotMonic):
            companion_matrix(Polynomial([1, 2]))

    def test_known_minimal_polynomials(self):
        assert str(minimal_polynomial(Matrix([[0, -1], [1, -1]]))) == "z^2 + z + 1"
        assert str(minimal_polynomial(Matrix.zero(3))) == "z"
        assert str(minimal_polynomial(Matrix.identity(3))) == "z - 1"


class TestTorsionBound:
    def test_phi(self):
        assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]

    def test_r_bound_values(self):
        assert [r_bound(d) for d in range(1, 9)] == [2, 12, 12, 120, 120, 2520, 2520, 5040]

    def test_r_bound_monotone_and_divisible(self):
        values = [r_bound(d) for d in range(1, 11)]
        for i, ri in enumerate(values):
            for rj in values[: i + 1]:
                assert ri % rj == 0 and ri >= rj


class TestAlgebraicNumbers:
    def test_reducible_rejected(self):
        with pytest.raises(NotIrreducible):
            AlgebraicNumber(Polynomial([-1, 0, 1]))

    def test_cube_root_of_unity(self):
        u = AlgebraicNumber(Polynomial([1, 1, 1]))
        assert (u**3).is_one() and not (u**2).is_one()
        assert algebraic_is_root_of_unity(u)

    def test_golden_ratio_is_not(self):
        assert not algebraic_is_root_of_unity(AlgebraicNumber(Polynomial([-1, -1, 1])))

    def test_all_small_degree_two_and_one(self):
        cases = [(c,) for c in range(-3, 4)] + list(product(range(-3, 4), repeat=2))
        z = sympy.Symbol("z")
        for low in cases:
            p = Polynomial(list(low) + [1])
            if not is_irreducible(p):
                continue
            u = AlgebraicNumber(p)
            by_search = any((u**n).is_one() for n in range(1, r_bound(p.degree) + 1))
            expr = sum(c * z**i for i, c in enumerate(low)) + z ** len(low)
            assert algebraic_is_root_of_unity(u) == by_search == sympy.Poly(expr, z).is_cyclotomic
