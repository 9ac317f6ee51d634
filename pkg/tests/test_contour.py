"""
Unit tests for z-Laurent expansions and constant-term extraction.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.components.catalog import INT_CC, BuildContext, find_record
from src.components.contour import ZFactor, ZKind, constant_term, z_add, z_expand, z_mul
from src.components.errors import ConfigurationError, GradingError
from src.components.qseries import (
    ONE,
    Q,
    X,
    Y,
    Environment,
    FactorSpec,
    Monomial,
    QSeries,
    poch,
    product_quotient,
    qpow,
    specialize_env,
)

D = 2


def at_z_equals_one(series, ncut):
    return sum(series.coeffs.values(), QSeries.zero(ncut, D))


class TestZExpand:
    """Test cases for single-factor expansions."""

    def test_euler_a_coefficients(self):
        """Test the z^0 and z^1 coefficients of (qz;q)_inf."""
        ncut = 10 * D
        series = z_expand(ZFactor(ZKind.EULER_A, Q), ncut, D)
        assert series.coefficient(0) == 1
        expected = product_quotient((), (FactorSpec(Q, 1, 1),), ncut, D).mul_monomial(-Q)
        assert series.coefficient(1) == expected

    def test_euler_a_at_z_one(self):
        """Test that summing all coefficients recovers (q;q)_inf."""
        ncut = 10 * D
        series = z_expand(ZFactor(ZKind.EULER_A, Q), ncut, D)
        assert at_z_equals_one(series, ncut) == poch(FactorSpec(Q), ncut, D)

    def test_jacobi_vanishes_at_z_one(self):
        """Test that (q, z, q/z; q)_inf vanishes at z = 1."""
        ncut = 12 * D
        series = z_expand(ZFactor(ZKind.JACOBI_Z, ONE), ncut, D)
        assert series.window[0] < 0 < series.window[1]
        assert at_z_equals_one(series, ncut).is_zero()

    def test_flat_factor_alone(self):
        """Test that a flat factor has no window of its own."""
        with pytest.raises(GradingError):
            z_expand(ZFactor(ZKind.EULER_B, X), 10, D)

    def test_negative_argument_order(self):
        """Test that an argument of negative q-order is not graded."""
        with pytest.raises(GradingError):
            z_expand(ZFactor(ZKind.EULER_B, qpow(-1)), 10, D)

    def test_step_must_be_positive(self):
        """Test factor validation."""
        with pytest.raises(ConfigurationError):
            ZFactor(ZKind.EULER_A, Q, 1, 0)


class TestConstantTerm:
    """Test cases for constant_term."""

    def test_euler_against_jacobi(self):
        """Test [z^0] 1/(xz;q)_inf (q,1/z,qz;q)_inf = (x;q)_inf with one flat factor."""
        ncut = 10 * D
        factors = [ZFactor(ZKind.EULER_B, X, 1), ZFactor(ZKind.JACOBI_Z, ONE, -1)]
        assert constant_term(factors, ncut, D) == poch(FactorSpec(X), ncut, D)

    def test_z_free_factor(self):
        """Test that a z-free factor multiplies the constant term."""
        ncut = 10 * D
        factors = [
            ZFactor(ZKind.EULER_B, X, 1),
            ZFactor(ZKind.JACOBI_Z, ONE, -1),
            ZFactor(ZKind.EULER_A, Q, 0),
        ]
        expected = product_quotient((FactorSpec(X), FactorSpec(Q)), (), ncut, D)
        assert constant_term(factors, ncut, D) == expected

    def test_two_flat_factors(self):
        """Test the grading failure for two non-growing factors."""
        factors = [ZFactor(ZKind.EULER_B, X, 1), ZFactor(ZKind.EULER_B, Y, -1)]
        with pytest.raises(GradingError):
            constant_term(factors, 10, D)

    def test_double_sum_integral(self):
        """Test the two-parameter integral against its product side."""
        ncut = 6 * D
        rhs = find_record('thm11').rhs(BuildContext(Environment.symbolic(), ncut, D))
        assert constant_term(INT_CC, ncut, D) == rhs

    def test_double_sum_integral_specialized(self):
        """Test the integral with x = q and y = q^(1/2)."""
        ncut = 10 * D
        env = specialize_env({'x': Q, 'y': qpow(Fraction(1, 2))}, D)
        rhs = find_record('thm11').rhs(BuildContext(env, ncut, D))
        assert constant_term(INT_CC, ncut, D, env=env) == rhs

    def test_window_padding_stability(self):
        """Test that widening every window leaves the result unchanged."""
        ncut = 6 * D
        plain = constant_term(INT_CC, ncut, D)
        assert constant_term(INT_CC, ncut, D, window_padding=3) == plain


class TestJacobiTerms:
    """Test cases for two-sided Jacobi factors."""

    def test_negative_index_term(self):
        """Test that negative indices carry no Pochhammer factors."""
        factor = ZFactor(ZKind.JACOBI_Z, ONE, -1)
        assert factor.term(-1) == (qpow(1, -1), (), ())
        assert factor.term(-2) == (qpow(3), (), ())

    def test_inverse_argument_coefficients(self):
        """Test that (q, 1/z, qz; q)_inf has -q^3 at z^-3 and q^3 at z^2."""
        series = z_expand(ZFactor(ZKind.JACOBI_Z, ONE, -1), 10 * D, D)
        assert series.coefficient(-3) == QSeries.monomial(qpow(3, -1), None, D)
        assert series.coefficient(2) == QSeries.monomial(qpow(3), None, D)


growing_factor = st.builds(
    ZFactor,
    st.sampled_from([ZKind.EULER_A, ZKind.EULER_B]),
    st.sampled_from([Q, -Q, qpow(2), X * Q, Y * Q]),
)


class TestLinearity:
    """Test cases for additivity of the constant term."""

    @hyp_settings(max_examples=15, deadline=None)
    @given(growing_factor, growing_factor)
    def test_sum_of_integrands(self, first, second):
        """Test [z^0](f g + h g) = [z^0](f g) + [z^0](h g) with g a Jacobi factor."""
        ncut = 6 * D
        jacobi = ZFactor(ZKind.JACOBI_Z, ONE, -1)
        kernel = z_expand(jacobi, ncut, D)
        summed = z_add(
            z_mul(z_expand(first, ncut, D), kernel),
            z_mul(z_expand(second, ncut, D), kernel),
        )
        expected = constant_term([first, jacobi], ncut, D) + constant_term([second, jacobi], ncut, D)
        assert summed.constant_term() == expected

    def test_vanishing_argument(self):
        """Test that a factor with a zero argument drops out of the constant term."""
        ncut = 6 * D
        factors = [ZFactor(ZKind.EULER_A, X * Q), ZFactor(ZKind.JACOBI_Z, ONE, -1)]
        env = specialize_env({'x': Monomial(0)}, D)
        assert constant_term(factors, ncut, D, env=env) == 1
