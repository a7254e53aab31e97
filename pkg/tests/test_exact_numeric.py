"""
Test suite for exact rational and polynomial arithmetic

Covers canonical rationals, the polynomial ring operations, Taylor shift,
affine substitution, Horner evaluation and the string/JSON forms.
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from backend.errors import DomainError
from backend.exact_numeric import (
    Polynomial, poly_add, poly_affine_substitute, poly_constant, poly_eval,
    poly_from_list, poly_from_roots, poly_is_monic, poly_mul, poly_neg, poly_scale,
    poly_shift, poly_sub, poly_to_list, poly_to_text, poly_x, rat_make, rat_parse,
    rat_to_str,
)


def P(*coeffs):
    """Shorthand: ascending coefficients."""
    return Polynomial(tuple(Fraction(c) for c in coeffs))


small_rationals = st.fractions(min_value=-100, max_value=100, max_denominator=100)
small_polys = st.lists(small_rationals, min_size=1, max_size=9).map(lambda cs: Polynomial(tuple(cs)))


class TestRationals:
    """Test canonical rational construction and serialization"""

    def test_rat_make_reduces(self):
        assert rat_make(2, 4) == Fraction(1, 2)

    def test_rat_make_normalizes_sign(self):
        value = rat_make(3, -6)
        assert value == Fraction(-1, 2)
        assert value.denominator > 0

    def test_rat_make_zero_is_canonical(self):
        value = rat_make(0, 7)
        assert value.numerator == 0
        assert value.denominator == 1

    def test_rat_make_zero_denominator(self):
        with pytest.raises(DomainError):
            rat_make(1, 0)

    def test_rat_to_str(self):
        assert rat_to_str(Fraction(-3, 2)) == '-3/2'
        assert rat_to_str(Fraction(4)) == '4'

    def test_rat_parse(self):
        assert rat_parse('-3/2') == Fraction(-3, 2)
        assert rat_parse('6/4') == Fraction(3, 2)
        assert rat_parse(' 7 ') == Fraction(7)

    @pytest.mark.parametrize('text', ['1/0', 'abc', '1/2/3', '1.5', ''])
    def test_rat_parse_rejects(self, text):
        with pytest.raises(DomainError):
            rat_parse(text)

    @given(st.integers(), st.integers(min_value=1))
    def test_round_trip_is_canonical(self, num, den):
        value = rat_make(num, den)
        parsed = rat_parse(rat_to_str(value))
        assert parsed == value
        assert parsed.denominator == value.denominator


class TestPolynomialBasics:
    """Test canonical form and ring operations"""

    def test_trailing_zeros_trimmed(self):
        p = P(1, 2, 0, 0)
        assert p.coefficients == (Fraction(1), Fraction(2))
        assert p.degree() == 1

    def test_zero_polynomial_canonical(self):
        assert P().coefficients == (Fraction(0),)
        assert P(0, 0, 0) == poly_constant(0)
        assert P(0).is_zero
        assert P(0).degree() == 0

    def test_add_known_values(self):
        assert poly_add(P(-1, 0, 1), P(1)) == P(0, 0, 1)
        assert poly_add(P(3, 1), poly_constant(0)) == P(3, 1)

    def test_add_cancellation_trims_degree(self):
        result = poly_add(poly_x(), poly_neg(poly_x()))
        assert result.is_zero

    def test_mul_known_values(self):
        assert poly_mul(P(-1, 1), P(1, 1)) == P(-1, 0, 1)
        assert poly_mul(P(2, 5, 7), poly_constant(1)) == P(2, 5, 7)
        assert poly_mul(P(2, 5, 7), poly_constant(0)).is_zero

    def test_mul_degree(self):
        assert poly_mul(P(1, 2, 3), P(4, 5)).degree() == 3

    def test_sub_and_scale(self):
        assert poly_sub(P(1, 2), P(1, 2)).is_zero
        assert poly_scale(P(1, 2), Fraction(1, 2)) == P(Fraction(1, 2), 1)

    def test_from_roots(self):
        assert poly_from_roots([2, 0, -2]) == P(0, -4, 0, 1)
        assert poly_is_monic(poly_from_roots([1, 2, 3]))

    @given(small_polys, small_polys, small_polys)
    def test_distributivity(self, p, q, r):
        assert poly_mul(p, poly_add(q, r)) == poly_add(poly_mul(p, q), poly_mul(p, r))

    @given(small_polys, small_polys, small_polys)
    def test_mul_associativity(self, p, q, r):
        assert poly_mul(poly_mul(p, q), r) == poly_mul(p, poly_mul(q, r))

    @given(small_polys, small_polys)
    def test_mul_commutativity(self, p, q):
        assert poly_mul(p, q) == poly_mul(q, p)


class TestShiftAndSubstitution:
    """Test Taylor shift and affine substitution"""

    def test_shift_binomial(self):
        assert poly_shift(P(0, 0, 1), 1) == P(1, 2, 1)

    def test_shift_by_zero(self):
        p = P(3, -1, 4, 1)
        assert poly_shift(p, 0) == p

    def test_shift_negative(self):
        assert poly_shift(P(-1, 0, 1), -1) == P(0, -2, 1)

    def test_affine_linear(self):
        n = 5
        assert poly_affine_substitute(poly_x(), n, n) == P(n, n)

    def test_affine_identity(self):
        assert poly_affine_substitute(P(-1, 0, 1), 1, 0) == P(-1, 0, 1)

    def test_affine_shift_only(self):
        assert poly_affine_substitute(P(-1, 0, 1), 1, 1) == P(0, 2, 1)

    @given(small_polys, small_rationals)
    def test_shift_round_trip(self, p, c):
        assert poly_shift(poly_shift(p, c), -c) == p

    @given(small_polys, small_rationals, small_rationals)
    def test_shift_eval_consistency(self, p, c, x):
        assert poly_eval(poly_shift(p, c), x) == poly_eval(p, x + c)

    @given(small_polys, small_rationals, small_rationals, small_rationals)
    def test_affine_eval_consistency(self, p, a, b, x):
        assert poly_eval(poly_affine_substitute(p, a, b), x) == poly_eval(p, a * x + b)


class TestEvaluation:
    """Test Horner evaluation"""

    def test_eval_root(self):
        assert poly_eval(P(-1, 0, 1), 1) == 0

    def test_eval_constant_term(self):
        assert poly_eval(P(-1, 0, 1), 0) == -1

    def test_eval_charpoly_root(self):
        assert poly_eval(P(0, -4, 0, 1), 2) == 0

    def test_eval_rational_point(self):
        assert poly_eval(P(0, 0, 1), Fraction(2, 3)) == Fraction(4, 9)


class TestSerialization:
    """Test the JSON array and text forms"""

    def test_to_list(self):
        assert poly_to_list(P(Fraction(-1, 2), 0, 1)) == ['-1/2', '0', '1']

    def test_from_list(self):
        assert poly_from_list(['9', '0', '-10', '0', '1']) == P(9, 0, -10, 0, 1)

    @given(small_polys)
    def test_list_round_trip(self, p):
        assert poly_from_list(poly_to_list(p)) == p

    def test_to_text(self):
        assert poly_to_text(P(0, -4, 0, 1)) == 'X^3 - 4X'
        assert poly_to_text(P(9, 0, -10, 0, 1)) == 'X^4 - 10X^2 + 9'
        assert poly_to_text(P(0, 2, 1), 'x') == 'x^2 + 2x'
        assert poly_to_text(P(Fraction(-1, 2), 1)) == 'X - 1/2'
        assert poly_to_text(P(0, Fraction(3, 4))) == '(3/4)X'
        assert poly_to_text(P(0)) == '0'
        assert poly_to_text(P(-1, -1)) == '-X - 1'
