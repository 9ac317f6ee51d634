"""
Unit tests for basic hypergeometric series, lattice sums and Schur polynomials.
"""
from fractions import Fraction

import pytest

from src.components.errors import GradingError, NonTerminationError, UnsupportedError
from src.components.qseries import (
    Q,
    X,
    Y,
    FactorSpec,
    Monomial,
    QSeries,
    poch,
    product_quotient,
    qpow,
    specialize_env,
)
from src.components.summation import (
    LatticeSummand,
    PhiSpec,
    gst_rhs,
    lattice_sum,
    phi_series,
    schur,
    shell,
)

D = 2


def ints(series, order):
    return [c.constant_term() for c in series.to_list(order)]


def rr_summand(linear):
    return LatticeSummand(
        dim=1,
        exponent=lambda i: i[0] ** 2 + linear * i[0],
        denominators=lambda i: (FactorSpec(Q, 1, i[0]),),
    )


class TestPhiSeries:
    """Test cases for phi_series."""

    def test_q_binomial_theorem(self):
        """Test sum (x;q)_k/(q;q)_k (yq)^k = (xyq;q)_inf/(yq;q)_inf."""
        ncut = 12 * D
        lhs = phi_series(PhiSpec((X,), (), 1, Y * Q), ncut, D)
        rhs = product_quotient((FactorSpec(X * Y * Q),), (FactorSpec(Y * Q),), ncut, D)
        assert lhs == rhs

    def test_terminating_series(self):
        """Test sum (q^-3;q)_k/(q;q)_k x^k = (x q^-3;q)_3 with a q-order 0 argument."""
        spec = PhiSpec((qpow(-3),), (), 1, X)
        assert spec.terminating_index() == 3
        lhs = phi_series(spec, 10 * D, D)
        assert lhs == poch(FactorSpec(X * qpow(-3), 1, 3), 10 * D, D)

    def test_not_graded(self):
        """Test the grading failure for a non-terminating q-order 0 argument."""
        with pytest.raises(GradingError):
            phi_series(PhiSpec((X,), (), 1, X), 10, D)

    def test_zero_argument(self):
        """Test that a zero argument leaves only the k = 0 term."""
        assert phi_series(PhiSpec((X,), (), 1, Monomial(0)), 10, D) == 1

    def test_base_step(self):
        """Test sum (q;q^2)_k/(q^2;q^2)_k q^k over base q^2 against the product side."""
        ncut = 12 * D
        lhs = phi_series(PhiSpec((Q,), (), 2, Q), ncut, D)
        rhs = product_quotient((FactorSpec(qpow(2), 2),), (FactorSpec(Q, 2),), ncut, D)
        assert lhs == rhs


class TestLatticeSum:
    """Test cases for lattice_sum."""

    def test_shell(self):
        """Test shell enumeration."""
        assert list(shell(2, 3)) == [(0, 3), (1, 2), (2, 1), (3, 0)]
        assert len(list(shell(3, 4))) == 15
        assert list(shell(1, 5)) == [(5,)]

    def test_unsupported_dimension(self):
        """Test that only 1-, 2- and 3-fold sums are accepted."""
        with pytest.raises(UnsupportedError):
            LatticeSummand(dim=4, exponent=lambda i: 0)

    def test_rogers_ramanujan_sums(self, partition_oracle):
        """Test both Rogers-Ramanujan sums against partition counts."""
        first = lattice_sum(rr_summand(0), 15 * D, D)
        second = lattice_sum(rr_summand(1), 15 * D, D)
        assert ints(first, 15) == [partition_oracle(n, 5, {1, 4}) for n in range(16)]
        assert ints(second, 15) == [partition_oracle(n, 5, {2, 3}) for n in range(16)]

    def test_double_sum_coefficients(self):
        """Test the first Uncu-Zudilin double sum through q^6."""
        summand = LatticeSummand(
            dim=2,
            exponent=lambda i: i[0] ** 2 + 2 * i[0] * i[1] + 2 * i[1] ** 2,
            denominators=lambda i: (FactorSpec(Q, 1, i[0]), FactorSpec(qpow(2), 2, i[1])),
        )
        assert ints(lattice_sum(summand, 6 * D, D), 6) == [1, 1, 2, 1, 3, 3, 5]

    def test_environment_and_prefix(self):
        """Test that prefixes and factors are resolved through the environment."""
        summand = LatticeSummand(
            dim=1,
            exponent=lambda i: i[0] * (i[0] - 1) // 2,
            prefix=lambda i: X ** i[0],
            denominators=lambda i: (FactorSpec(Q, 1, i[0]),),
        )
        env = specialize_env({'x': Q}, D)
        total = lattice_sum(summand, 10 * D, D, env=env)
        assert total == poch(FactorSpec(qpow(1, -1)), 10 * D, D)

    def test_margin_stability(self):
        """Test that a larger shell margin does not change the result."""
        assert lattice_sum(rr_summand(0), 20, D, margin=3) == lattice_sum(rr_summand(0), 20, D, margin=6)

    def test_non_termination(self):
        """Test the shell guard."""
        flat = LatticeSummand(dim=1, exponent=lambda i: 0)
        with pytest.raises(NonTerminationError):
            lattice_sum(flat, 4, D)


class TestSchur:
    """Test cases for the Schur polynomials and the generalized formula."""

    def test_forward(self):
        """Test D_2 = 1 + q + q^2 and E_2 = 1 + q^2."""
        pair = schur(2, D)
        assert pair.d == QSeries.polynomial([1, 1, 1], None, D)
        assert pair.e == QSeries.polynomial([1, 0, 1], None, D)

    def test_backward(self):
        """Test the values at m = -1 and m = -2."""
        assert schur(-1, D).d == 1
        assert schur(-1, D).e.is_zero()
        assert schur(-2, D).d.is_zero()
        assert schur(-2, D).e == 1

    def test_out_of_range(self):
        """Test the unsupported knob values."""
        with pytest.raises(UnsupportedError):
            schur(-3, D)
        with pytest.raises(UnsupportedError):
            gst_rhs(6, 10, D)

    def test_gst_reduces_to_products(self):
        """Test m = 0 and m = 1 give the Rogers-Ramanujan products."""
        ncut = 15 * D
        first = product_quotient((), (FactorSpec(Q, 5), FactorSpec(qpow(4), 5)), ncut, D)
        second = product_quotient((), (FactorSpec(qpow(2), 5), FactorSpec(qpow(3), 5)), ncut, D)
        assert gst_rhs(0, ncut, D) == first
        assert gst_rhs(1, ncut, D) == second

    @pytest.mark.parametrize('m', range(6))
    def test_gst_formula(self, m):
        """Test sum q^(k^2+mk)/(q;q)_k against the Schur-polynomial side."""
        ncut = 15 * D
        assert lattice_sum(rr_summand(m), ncut, D) == gst_rhs(m, ncut, D)


Q_BINOMIAL_CHOICES = [
    (X, Y * Q),
    (Q, Q),
    (-Q, qpow(2)),
    (qpow(-2), X * Q),
    (X ** 2, qpow(Fraction(1, 2))),
    (Monomial(-1), Y * Q),
]


class TestQBinomialTheorem:
    """Test cases for sum (a;q)_k/(q;q)_k t^k = (at;q)_inf/(t;q)_inf."""

    @pytest.mark.parametrize('a,t', Q_BINOMIAL_CHOICES, ids=lambda m: str(m))
    def test_through_order_40(self, a, t):
        """Test each (a, t) choice through q^40."""
        ncut = 40 * D
        lhs = phi_series(PhiSpec((a,), (), 1, t), ncut, D)
        rhs = product_quotient((FactorSpec(a * t),), (FactorSpec(t),), ncut, D)
        assert lhs == rhs

    def test_margin_doubling_double_sum(self):
        """Test that doubling the shell margin of a double sum changes nothing."""
        summand = LatticeSummand(
            dim=2,
            exponent=lambda i: i[0] ** 2 + 2 * i[0] * i[1] + 2 * i[1] ** 2,
            prefix=lambda i: X ** i[0],
            denominators=lambda i: (FactorSpec(Q, 1, i[0]), FactorSpec(qpow(2), 2, i[1])),
        )
        ncut = 12 * D
        assert lattice_sum(summand, ncut, D, margin=3) == lattice_sum(summand, ncut, D, margin=6)
