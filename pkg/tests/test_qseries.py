"""
Unit tests for truncated q-series, Pochhammer products and the classical expansions.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.components.errors import (
    ConfigurationError,
    ExactnessError,
    GradingError,
    InversionError,
    ParityError,
)
from src.components.exactalg import ParamPoly
from src.components.qseries import (
    ONE,
    Q,
    X,
    Y,
    Environment,
    FactorSpec,
    JacobiForm,
    Monomial,
    QSeries,
    euler_a,
    euler_b,
    jacobi_triple,
    lowest_order,
    poch,
    poch_list,
    product_quotient,
    qpow,
    qs_add,
    qs_invert,
    qs_mul,
    specialize_env,
)

D = 2

unit_series = st.lists(st.integers(-5, 5), min_size=1, max_size=8).map(
    lambda tail: QSeries.polynomial([1] + tail, 16, D)
)
any_series = st.lists(st.integers(-5, 5), min_size=1, max_size=8).map(
    lambda coeffs: QSeries.polynomial(coeffs, 16, D)
)


def ints(series, order):
    """Integer coefficients of q^0..q^order."""
    return [c.constant_term() for c in series.to_list(order)]


class TestMonomial:
    """Test cases for Monomial."""

    def test_arithmetic(self):
        """Test products, quotients and powers."""
        assert Q * X == Monomial(1, q=1, x=1)
        assert (Q * X) / X == Q
        assert Q ** -2 == qpow(-2)
        assert (-Q) ** 3 == qpow(3, -1)

    def test_inexact_division(self):
        """Test that coefficient division must be exact."""
        with pytest.raises(ExactnessError):
            Monomial(2) / Monomial(3)

    def test_zero_coefficient_clears_exponents(self):
        """Test normalization of the zero monomial."""
        assert Monomial(0, q=3, x=1) == Monomial(0)

    def test_str(self):
        """Test rendering."""
        assert str(-qpow(Fraction(1, 2)) * X) == "-q^1/2*x"
        assert str(ONE) == "1"
        assert str(Monomial(3, q=2)) == "3*q^2"


class TestFactorSpec:
    """Test cases for FactorSpec."""

    def test_rejects_bad_step(self):
        """Test validation of the base step."""
        with pytest.raises(ConfigurationError):
            FactorSpec(Q, 0)

    def test_negative_order_sum(self):
        """Test B for Laurent factors."""
        assert FactorSpec(qpow(-3), 1).negative_order_sum() == 6
        assert FactorSpec(qpow(-3), 2, 1).negative_order_sum() == 3
        assert lowest_order([FactorSpec(Q), FactorSpec(qpow(-1), 1, 3)]) == -1

    def test_str(self):
        """Test rendering."""
        assert str(FactorSpec(Q, 5)) == "(q;q^5)_inf"
        assert str(FactorSpec(X, 1, 3)) == "(x;q)_3"


class TestQSeries:
    """Test cases for QSeries arithmetic."""

    def test_coefficient_beyond_truncation(self):
        """Test that coefficients above ncut are refused."""
        s = QSeries.polynomial([1, 2, 3], 4, D)
        assert s.coefficient_at(1) == 2
        with pytest.raises(ConfigurationError):
            s.coefficient(5)

    def test_lo(self):
        """Test the least exponent, including the zero cases."""
        assert QSeries({-2: 1, 4: 1}, 10, D).lo == -2
        assert QSeries.zero(None, D).lo is None
        assert QSeries.zero(10, D).lo == 11

    def test_product_precision(self):
        """Test min(ncut_a + lo_b, ncut_b + lo_a)."""
        a = QSeries({2: 1}, 10, D)
        b = QSeries({4: 1}, 20, D)
        assert (a * b).ncut == min(10 + 4, 20 + 2)
        assert qs_mul(a, b).ncut == 14
        assert qs_add(a, b).ncut == 10

    def test_exact_times_truncated(self):
        """Test that exact polynomials do not lower the order."""
        exact = QSeries.polynomial([1, 1], None, D)
        truncated = QSeries.polynomial([1], 10, D)
        assert (exact * truncated).ncut == 10

    def test_invert_geometric(self):
        """Test 1/(1 - q)."""
        inverse = QSeries.polynomial([1, -1], None, D).invert(ncut=20)
        assert ints(inverse, 10) == [1] * 11
        assert not inverse.has_fractional_powers()

    def test_invert_precision(self):
        """Test that the inverse is complete to ncut - 2 lo."""
        s = QSeries({2: 1, 4: 1}, 20, D)
        assert qs_invert(s).ncut == 16

    def test_invert_requires_unit(self):
        """Test the non-unit lowest term failure."""
        with pytest.raises(InversionError):
            QSeries.polynomial([2, 1], 10, D).invert()
        with pytest.raises(InversionError):
            QSeries.zero(10, D).invert()

    def test_invert_exact_needs_order(self):
        """Test that exact multi-term inputs need an explicit order."""
        with pytest.raises(ConfigurationError):
            QSeries.polynomial([1, 1], None, D).invert()
        assert QSeries.monomial(qpow(2, -1), None, D).invert() == QSeries.monomial(qpow(-2, -1), None, D)

    def test_invert_symbolic_lead(self):
        """Test inversion when the lowest coefficient is a unit monomial in x."""
        s = QSeries({0: {(2, 0): -1}, 2: {(0, 0): 1}}, 20, D)
        product = s * s.invert()
        assert product == 1

    def test_truncate_never_raises_order(self):
        """Test truncate monotonicity."""
        s = QSeries.polynomial([1, 1, 1], 6, D)
        assert s.truncate(100).ncut == 6
        assert s.truncate(2).ncut == 2
        assert s.truncate(2).exponents() == [0, 2]

    def test_equality_up_to_common_order(self):
        """Test comparison at the lower truncation order."""
        a = QSeries.polynomial([1, 1, 5], 2, D)
        b = QSeries.polynomial([1, 1, 7], 4, D)
        assert a == b
        assert a.first_mismatch(QSeries.polynomial([1, 2], 4, D))[0] == 2

    def test_div_exact_parity(self):
        """Test exact halving and the parity failure."""
        assert QSeries.polynomial([2, 4], 10, D).div_exact(2) == QSeries.polynomial([1, 2], 10, D)
        with pytest.raises(ParityError):
            QSeries.polynomial([2, 3], 10, D).div_exact(2)

    def test_mul_and_divide_monomial(self):
        """Test monomial multiplication shifts the order and is undone by division."""
        s = QSeries.polynomial([1, 1], 10, D)
        moved = s.mul_monomial(qpow(-1, -1) * X)
        assert moved.ncut == 8
        assert moved.coefficient(-2) == ParamPoly({(2, 0): -1}, D)
        assert moved.divide_monomial(qpow(-1, -1) * X) == s

    def test_dilate(self):
        """Test q -> q^k."""
        s = QSeries.polynomial([1, 1], None, D).dilate(4)
        assert s.exponents() == [0, 8]

    def test_str(self):
        """Test rendering with the truncation marker."""
        assert str(QSeries.polynomial([1, -1], 4, D)) == "1 - q + O(q^5/2)"
        assert str(QSeries.zero(None, D)) == "0"

    def test_json(self):
        """Test serialization."""
        s = QSeries({0: 1, 3: {(2, 0): -2}}, 4, D)
        assert s.to_json() == [[0, [[1, 0, 0, 2]]], [3, [[-2, 2, 0, 2]]]]

    @given(any_series, any_series, any_series)
    def test_ring_axioms(self, a, b, c):
        """Test the ring axioms for truncated series."""
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(unit_series)
    def test_inverse_law(self, s):
        """Test s * s^-1 = 1 up to the truncation order."""
        assert s * s.invert() == 1

    @pytest.mark.slow
    @hyp_settings(max_examples=10_000, deadline=None)
    @given(unit_series, any_series)
    def test_inverse_law_many(self, s, t):
        """Test inverse and ring laws on many random series."""
        assert s * s.invert() == 1
        assert (t * s) * s.invert() == t


class TestPochhammer:
    """Test cases for Pochhammer expansions."""

    def test_euler_function(self, product_oracle):
        """Test (q;q)_inf against a naive product."""
        series = poch(FactorSpec(Q), 7 * D, D)
        assert ints(series, 7) == [1, -1, -1, 0, 0, 1, 0, 1]
        assert ints(series, 7) == product_oracle([(1, e) for e in range(1, 8)], 7)

    def test_finite_product(self, product_oracle):
        """Test (q^2;q^3)_3 against a naive product."""
        series = poch(FactorSpec(qpow(2), 3, 3), 20 * D, D)
        assert ints(series, 20) == product_oracle([(1, 2), (1, 5), (1, 8)], 20)

    def test_rogers_ramanujan_product(self, partition_oracle):
        """Test 1/(q,q^4;q^5)_inf against partition counts."""
        series = product_quotient((), (FactorSpec(Q, 5), FactorSpec(qpow(4), 5)), 12 * D, D)
        assert ints(series, 9) == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5]
        assert ints(series, 12) == [partition_oracle(n, 5, {1, 4}) for n in range(13)]

    def test_unit_relation(self):
        """Test (q,-q,-q^2;q^2)_inf = 1."""
        factors = (FactorSpec(Q, 2), FactorSpec(-Q, 2), FactorSpec(qpow(2, -1), 2))
        assert poch_list(factors, 20 * D, D) == 1

    def test_laurent_factor(self):
        """Test (-1/q;q)_inf = 2 (1 + 1/q) (-q;q)_inf."""
        lhs = poch(FactorSpec(qpow(-1, -1)), 10 * D, D)
        rhs = QSeries({-D: 1, 0: 1}, None, D) * poch(FactorSpec(-Q), 11 * D, D)
        assert lhs.ncut == 10 * D
        assert lhs == rhs.scale(2)

    def test_symbolic_quotient(self):
        """Test (xq;q)_inf / (xq^2;q)_inf = 1 - xq."""
        series = product_quotient((FactorSpec(X * Q),), (FactorSpec(X * qpow(2)),), 10 * D, D)
        assert series == QSeries({0: 1, D: {(D, 0): -1}}, None, D)

    def test_quotient_with_fractional_base(self):
        """Test (q^1/2;q^1/2)_inf / (q;q)_inf = (q^1/2;q)_inf."""
        half = qpow(Fraction(1, 2))
        lhs = product_quotient((FactorSpec(half, Fraction(1, 2)),), (FactorSpec(Q),), 12, D)
        assert lhs == poch(FactorSpec(half), 12, D)


class TestClassicalExpansions:
    """Test cases for the Euler and Jacobi expansions."""

    def test_euler_a_symbolic(self):
        """Test sum q^C(k,2) x^k/(q;q)_k = (-x;q)_inf."""
        ncut = 16 * D
        assert euler_a(X, ncut, D) == poch(FactorSpec(-X), ncut, D)

    def test_euler_a_zero(self):
        """Test the zero argument."""
        assert euler_a(Monomial(0), 10, D) == 1

    def test_euler_b_symbolic(self):
        """Test sum (xq)^k/(q;q)_k = 1/(xq;q)_inf."""
        ncut = 16 * D
        expected = product_quotient((), (FactorSpec(X * Q),), ncut, D)
        assert euler_b(X * Q, ncut, D) == expected

    def test_euler_b_not_graded(self):
        """Test the grading failure for a q-order 0 argument."""
        with pytest.raises(GradingError):
            euler_b(X, 10, D)

    @pytest.mark.parametrize('w', [X, Q, qpow(Fraction(1, 2), -1), Y * qpow(2)])
    def test_jacobi_sum_equals_product(self, w):
        """Test the triple product identity at several arguments."""
        ncut = 12 * D
        total = jacobi_triple(w, ncut, D, form=JacobiForm.SUM)
        assert total == jacobi_triple(w, ncut, D, form=JacobiForm.PRODUCT)

    def test_jacobi_vanishing_argument(self):
        """Test w = -q, where both sides are identically zero."""
        w = qpow(1, -1)
        assert jacobi_triple(w, 20, D).is_zero()
        assert jacobi_triple(w, 20, D, form=JacobiForm.PRODUCT).is_zero()

    def test_jacobi_needs_unit(self):
        """Test the unit coefficient requirement."""
        with pytest.raises(ConfigurationError):
            jacobi_triple(Monomial(2, x=1), 10, D)


class TestEnvironment:
    """Test cases for specialization environments."""

    def test_resolve(self):
        """Test substitution of bound parameters."""
        env = specialize_env({'x': Q, 'y': qpow(Fraction(1, 2))}, D)
        assert env.resolve(X ** 2 * Y) == qpow(Fraction(5, 2))
        assert env.describe() == "x=q, y=q^1/2"
        assert Environment.symbolic().describe() == "symbolic"

    def test_partial_environment(self):
        """Test that unbound parameters stay symbolic."""
        env = specialize_env({'x': qpow(2, -1)}, D)
        assert env.resolve(-X * Y) == Monomial(1, q=2, y=1)
        assert env.is_symbolic('y')

    def test_zero_binding(self):
        """Test x = 0."""
        env = specialize_env({'x': Monomial(0)}, D)
        assert env.resolve(X * Y).is_zero()
        with pytest.raises(ConfigurationError):
            env.resolve(X ** -1)

    def test_fractional_power_of_signed_value(self):
        """Test that (-q)^(1/2) is refused."""
        env = specialize_env({'x': qpow(1, -1)}, D)
        with pytest.raises(ConfigurationError):
            env.resolve(Monomial(1, x=Fraction(1, 2)))

    @pytest.mark.parametrize('bindings', [
        {'z': Q},
        {'x': Y},
        {'y': qpow(Fraction(1, 3))},
    ])
    def test_invalid_bindings(self, bindings):
        """Test rejected environments."""
        with pytest.raises(ConfigurationError):
            specialize_env(bindings, D)


ORDER_40 = 40 * D
EULER_ARGUMENTS = [Q, qpow(2), -Q, X * Q, Y ** 2 * Q]
JACOBI_ARGUMENTS = [Q, -Q, qpow(2), -qpow(2), X * Q, Y * qpow(2)]
POCH_ARGUMENTS = [Q, -Q, qpow(-1), X, X * Q, Y * qpow(Fraction(1, 2))]


class TestKernelProperties:
    """Test cases for recurrences, dualities and truncation behaviour."""

    @hyp_settings(max_examples=40, deadline=None)
    @given(st.sampled_from(POCH_ARGUMENTS), st.sampled_from([1, 2, Fraction(1, 2)]), st.integers(0, 12))
    def test_poch_recurrence(self, t, step, n):
        """Test (t;q^s)_(n+1) = (t;q^s)_n (1 - t q^(sn))."""
        ncut = 16 * D
        factor = QSeries.one(None, D) - QSeries.monomial(t * qpow(step * n), None, D)
        longer = poch(FactorSpec(t, step, n + 1), ncut, D)
        assert longer == poch(FactorSpec(t, step, n), ncut, D) * factor

    @pytest.mark.parametrize('z', EULER_ARGUMENTS, ids=str)
    def test_euler_a_duality(self, z):
        """Test sum q^C(k,2) z^k/(q;q)_k = (-z;q)_inf through q^40."""
        assert euler_a(z, ORDER_40, D) == poch(FactorSpec(-z), ORDER_40, D)

    @pytest.mark.parametrize('z', EULER_ARGUMENTS, ids=str)
    def test_euler_b_duality(self, z):
        """Test sum z^k/(q;q)_k = 1/(z;q)_inf through q^40."""
        assert euler_b(z, ORDER_40, D) == qs_invert(poch(FactorSpec(z), ORDER_40, D))

    @pytest.mark.parametrize('w', JACOBI_ARGUMENTS, ids=str)
    def test_jacobi_duality(self, w):
        """Test the triple product through q^40."""
        total = jacobi_triple(w, ORDER_40, D, form=JacobiForm.SUM)
        assert total == jacobi_triple(w, ORDER_40, D, form=JacobiForm.PRODUCT)

    @hyp_settings(max_examples=30, deadline=None)
    @given(st.integers(0, 12), st.integers(0, 12), st.sampled_from(POCH_ARGUMENTS))
    def test_restrict_equals_direct(self, low, extra, t):
        """Test that computing at N and truncating to M equals computing at M."""
        high = low + extra
        cases = [
            lambda ncut: poch(FactorSpec(t), ncut, D),
            lambda ncut: product_quotient((FactorSpec(t),), (FactorSpec(Q, 2),), ncut, D),
            lambda ncut: euler_a(X * Q, ncut, D),
            lambda ncut: jacobi_triple(Q, ncut, D),
        ]
        for build in cases:
            direct = build(low)
            restricted = build(high).truncate(low)
            assert restricted.ncut == direct.ncut == low
            assert restricted.first_mismatch(direct) is None
