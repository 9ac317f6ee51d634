"""
Unit tests for the exact arithmetic substrate.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.components.errors import ConfigurationError, ExactnessError, ParityError
from src.components.exactalg import (
    ParamMono,
    ParamPoly,
    check_denominator,
    format_exponent,
    poly_add,
    poly_div_exact,
    poly_mul,
    to_scaled,
)

keys = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
polys = st.dictionaries(keys, st.integers(-20, 20), max_size=5).map(lambda t: ParamPoly(t, 2))


class TestScaledExponents:
    """Test cases for scaled exponent helpers."""

    def test_to_scaled_fraction_string(self):
        """Test conversion of rational strings."""
        assert to_scaled("3/2", 2) == 3
        assert to_scaled(Fraction(-1, 2), 2) == -1
        assert to_scaled(5, 1) == 5

    def test_to_scaled_rejects_finer_exponent(self):
        """Test that exponents needing a finer denominator are refused."""
        with pytest.raises(ConfigurationError):
            to_scaled(Fraction(1, 3), 2)

    def test_format_exponent(self):
        """Test exponent formatting."""
        assert format_exponent(3, 2) == "3/2"
        assert format_exponent(4, 2) == "2"
        assert format_exponent(-1, 2) == "-1/2"

    def test_check_denominator(self):
        """Test denominator validation."""
        assert check_denominator(6) == 6
        with pytest.raises(ConfigurationError):
            check_denominator(0)


class TestParamPoly:
    """Test cases for ParamPoly."""

    def test_zero_terms_are_pruned(self):
        """Test that cancelling terms leave the zero polynomial."""
        p = ParamPoly({(2, 0): 3, (0, 2): -1}, 2)
        assert (p - p).is_zero()
        assert ParamPoly({(0, 0): 0}, 2).is_zero()
        assert len(ParamPoly({(0, 0): 1, (2, 0): 0}, 2)) == 1

    def test_equality_with_int(self):
        """Test comparison against integer constants."""
        assert ParamPoly({(0, 0): 5}, 2) == 5
        assert ParamPoly.zero(2) == 0
        assert ParamPoly({(2, 0): 1}, 2) != 1

    def test_multiplication(self):
        """Test (1 + x)(1 - x) = 1 - x^2."""
        a = ParamPoly({(0, 0): 1, (2, 0): 1}, 2)
        b = ParamPoly({(0, 0): 1, (2, 0): -1}, 2)
        assert a * b == ParamPoly({(0, 0): 1, (4, 0): -1}, 2)
        assert poly_mul(a, b) == a * b
        assert poly_add(a, b) == 2

    def test_div_exact_by_integer(self):
        """Test exact integer division and the parity failure."""
        p = ParamPoly({(0, 0): 4, (1, 1): -6}, 2)
        assert p.div_exact(2) == ParamPoly({(0, 0): 2, (1, 1): -3}, 2)
        with pytest.raises(ParityError):
            ParamPoly({(0, 0): 3}, 2).div_exact(2)

    def test_div_exact_by_monomial(self):
        """Test division by a monomial shifts exponents."""
        p = ParamPoly({(2, 2): -3}, 2)
        assert poly_div_exact(p, ParamMono(-3, 2, 0)) == ParamPoly({(0, 2): 1}, 2)
        with pytest.raises(ExactnessError):
            p.div_exact(ParamMono(2, 0, 0))

    def test_parity_error_is_exactness_error(self):
        """Test the exception hierarchy."""
        assert issubclass(ParityError, ExactnessError)

    def test_denominator_mismatch(self):
        """Test that polynomials over different denominators do not mix."""
        with pytest.raises(ConfigurationError):
            ParamPoly({(0, 0): 1}, 2) + ParamPoly({(0, 0): 1}, 3)

    def test_str(self):
        """Test rendering."""
        assert str(ParamPoly({(2, 0): -1}, 2)) == "-x"
        assert str(ParamPoly({(0, 0): 2, (1, 0): 1}, 2)) == "2 + x^1/2"
        assert str(ParamPoly.zero(2)) == "0"

    def test_json_terms(self):
        """Test the ordered term list."""
        p = ParamPoly({(2, 0): -1, (0, 1): 4}, 2)
        assert p.to_json_terms() == [[4, 0, 1, 2], [-1, 2, 0, 2]]

    def test_monomial_detection(self):
        """Test unit monomial detection."""
        assert ParamPoly({(2, 0): -1}, 2).is_unit_monomial()
        assert not ParamPoly({(2, 0): 2}, 2).is_unit_monomial()
        assert ParamPoly({(0, 0): 1, (2, 0): 1}, 2).as_monomial() is None


class TestRingAxioms:
    """Property tests for the polynomial ring."""

    @given(polys, polys, polys)
    def test_ring_axioms(self, a, b, c):
        """Test associativity, commutativity and distributivity."""
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == 0

    @given(polys, st.integers(1, 9))
    def test_div_exact_round_trip(self, a, k):
        """Test that (k * a) / k = a."""
        assert (a * k).div_exact(k) == a

    @pytest.mark.slow
    @hyp_settings(max_examples=10_000, deadline=None)
    @given(polys, polys, polys)
    def test_ring_axioms_many(self, a, b, c):
        """Test the ring axioms on many random triples."""
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
