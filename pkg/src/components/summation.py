"""
Sum-side machinery: basic hypergeometric series, shell-bounded lattice sums
and the Schur polynomials of the generalized Rogers-Ramanujan formula.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import count
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple

from src.components.errors import ExactnessError, GradingError, NonTerminationError, UnsupportedError
from src.components.exactalg import DEFAULT_DENOMINATOR, Terms, to_scaled
from src.components.qseries import (
    ONE,
    Q,
    Environment,
    FactorSpec,
    Monomial,
    QSeries,
    accumulate,
    lowest_order,
    product_quotient,
    qpow,
)
from src.components.tracing import traced

logger = logging.getLogger(__name__)

DEFAULT_SHELL_MARGIN = 3

Index = Tuple[int, ...]

GST_RANGE = range(0, 6)


@dataclass(frozen=True)
class PhiSpec:
    """
    Parameters of sum_k (a_1,...;q^s)_k / (q^s, b_1,...;q^s)_k z^k.

    Attributes:
        numerators: The a_i monomials
        denominators: The b_i monomials (the (q^s;q^s)_k factor is implicit)
        base_step: s, the exponent of the base q^s
        argument: z
    """

    numerators: Tuple[Monomial, ...]
    denominators: Tuple[Monomial, ...] = ()
    base_step: Fraction = Fraction(1)
    argument: Monomial = ONE

    def __post_init__(self):
        object.__setattr__(self, 'numerators', tuple(self.numerators))
        object.__setattr__(self, 'denominators', tuple(self.denominators))
        object.__setattr__(self, 'base_step', Fraction(self.base_step))

    def terminating_index(self) -> Optional[int]:
        """Largest k with a nonzero numerator product, if some a_i = q^(-n s)."""
        bounds = []
        for a in self.numerators:
            if a.coeff == 1 and not a.has_params and a.q <= 0:
                ratio = -a.q / self.base_step
                if ratio.denominator == 1:
                    bounds.append(int(ratio))
        return min(bounds) if bounds else None

    def factors(self, k: int) -> Tuple[Tuple[FactorSpec, ...], Tuple[FactorSpec, ...]]:
        s = self.base_step
        nums = tuple(FactorSpec(a, s, k) for a in self.numerators)
        dens = (FactorSpec(qpow(s), s, k),) + tuple(FactorSpec(b, s, k) for b in self.denominators)
        return nums, dens


@traced
def phi_series(spec: PhiSpec, ncut: int, denominator: int = DEFAULT_DENOMINATOR) -> QSeries:
    """
    Evaluate a basic hypergeometric series truncated at ``ncut``.

    Args:
        spec: Numerator/denominator parameters, base and argument
        ncut: Truncation order in 1/D units
        denominator: Global exponent denominator D

    Returns:
        The series, complete up to ``ncut``

    Raises:
        GradingError: If the terms' q-orders do not grow (non-terminating series
            whose argument has q-order <= 0)
    """
    zc, zq, zx, zy = spec.argument.scaled(denominator)
    if zc == 0:
        return QSeries.one(ncut, denominator)

    last = spec.terminating_index()
    if last is None and zq <= 0:
        raise GradingError(f"phi series with argument {spec.argument} is not q-graded")

    # Past this index no factor has negative q-order, so term bounds grow by zq.
    settled = max(
        [_negative_count(m, spec.base_step) for m in spec.numerators + spec.denominators],
        default=0,
    )

    acc: Dict[int, Terms] = {}
    for k in count():
        if last is not None and k > last:
            break
        nums, dens = spec.factors(k)
        shift = k * zq
        bound = shift + to_scaled(lowest_order(nums) - lowest_order(dens), denominator)
        if bound > ncut:
            if k > settled and zq > 0:
                break
            continue
        term = product_quotient(nums, dens, ncut - shift, denominator)
        accumulate(acc, term, shift, zc ** k, k * zx, k * zy)
    return QSeries({e: t for e, t in acc.items()}, ncut, denominator)


def _negative_count(mono: Monomial, step: Fraction) -> int:
    """Number of factors of (mono; q^step)_inf with negative q-order."""
    if mono.coeff == 0 or mono.q >= 0:
        return 0
    n = (-mono.q) / step
    return int(n) + (0 if n.denominator == 1 else 1)


def _no_factors(idx: Index) -> Sequence[FactorSpec]:
    return ()


def _unit_prefix(idx: Index) -> Monomial:
    return ONE


@dataclass(frozen=True)
class LatticeSummand:
    """
    Summand of a 1-, 2- or 3-fold sum over nonnegative indices.

    The term at ``idx`` is prefix(idx) * q^exponent(idx) * prod(numerators(idx)) /
    prod(denominators(idx)), every factor list being finite Pochhammer symbols
    that may mention x and y. The minimum exponent over a shell
    {sum(idx) = s} must tend to infinity with s.
    """

    dim: int
    exponent: Callable[[Index], Fraction]
    prefix: Callable[[Index], Monomial] = field(default=_unit_prefix)
    numerators: Callable[[Index], Sequence[FactorSpec]] = field(default=_no_factors)
    denominators: Callable[[Index], Sequence[FactorSpec]] = field(default=_no_factors)

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise UnsupportedError(f"lattice sums of dimension {self.dim} are not supported")


def shell(dim: int, total: int) -> Iterator[Index]:
    """All nonnegative ``dim``-tuples with sum ``total``."""
    if dim == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in shell(dim - 1, total - first):
            yield (first,) + rest


@traced
def lattice_sum(
    summand: LatticeSummand,
    ncut: int,
    denominator: int = DEFAULT_DENOMINATOR,
    env: Optional[Environment] = None,
    margin: int = DEFAULT_SHELL_MARGIN,
) -> QSeries:
    """
    Enumerate a lattice sum shell by shell, truncated at ``ncut``.

    Enumeration stops after ``margin`` consecutive shells whose minimal term
    order exceeds ``ncut``.

    Args:
        summand: The summand description
        ncut: Truncation order in 1/D units
        denominator: Global exponent denominator D
        env: Specialization environment applied to prefixes and factors
        margin: Consecutive out-of-range shells before stopping

    Returns:
        The sum, complete up to ``ncut``

    Raises:
        NonTerminationError: If the stopping rule is not met within the shell guard
    """
    env = env or Environment.symbolic()
    guard = max(4 * (ncut + 1), 32)
    acc: Dict[int, Terms] = {}
    above = 0
    terms_used = 0
    for total in count():
        if total > guard:
            raise NonTerminationError(
                f"lattice sum did not settle within {guard} shells at order {ncut}/{denominator}"
            )
        shell_min = None
        for idx in shell(summand.dim, total):
            prefix = env.resolve(summand.prefix(idx))
            if prefix.coeff == 0:
                continue
            nums = env.resolve_all(summand.numerators(idx))
            dens = env.resolve_all(summand.denominators(idx))
            shift = to_scaled(summand.exponent(idx) + prefix.q, denominator)
            bound = shift + to_scaled(lowest_order(nums) - lowest_order(dens), denominator)
            shell_min = bound if shell_min is None else min(shell_min, bound)
            if bound > ncut:
                continue
            _, _, px, py = prefix.scaled(denominator)
            term = product_quotient(nums, dens, ncut - shift, denominator)
            accumulate(acc, term, shift, prefix.coeff, px, py)
            terms_used += 1
        if shell_min is None or shell_min > ncut:
            above += 1
            if above >= margin:
                break
        else:
            above = 0

    if total > guard // 2:
        logger.warning(f"lattice sum needed {total} shells (guard {guard})")
    logger.debug(f"lattice sum: dim={summand.dim} shells={total + 1} terms={terms_used}")
    return QSeries(acc, ncut, denominator)


@dataclass(frozen=True)
class SchurPair:
    """D_m and E_m as exact polynomials in q."""

    m: int
    d: QSeries
    e: QSeries


def _divide_by_q_power(series: QSeries, m: int, denominator: int) -> QSeries:
    result = series.shift(-m * denominator)
    if not result.is_zero() and result.lo < 0:
        raise ExactnessError(f"backward Schur step is not divisible by q^{m}")
    return result


@lru_cache(maxsize=64)
def schur(m: int, denominator: int = DEFAULT_DENOMINATOR) -> SchurPair:
    """
    Schur polynomials D_m, E_m.

    D_0 = 1, D_1 = 1 + q, E_0 = 1, E_1 = 1 and P_m = P_(m-1) + q^m P_(m-2);
    m = -1, -2 come from running the recurrence backwards.

    Raises:
        UnsupportedError: If m < -2
        ExactnessError: If a backward step is not divisible by q^m
    """
    if m < -2:
        raise UnsupportedError(f"Schur polynomials are defined here for m >= -2, got {m}")
    one = QSeries.one(None, denominator)
    d = {0: one, 1: one + QSeries.monomial(Q, None, denominator)}
    e = {0: one, 1: one}
    for n in range(2, m + 1):
        qn = QSeries.monomial(qpow(n), None, denominator)
        d[n] = d[n - 1] + qn * d[n - 2]
        e[n] = e[n - 1] + qn * e[n - 2]
    for n in (1, 0):
        if m > n - 2:
            break
        d[n - 2] = _divide_by_q_power(d[n] - d[n - 1], n, denominator)
        e[n - 2] = _divide_by_q_power(e[n] - e[n - 1], n, denominator)
    return SchurPair(m, d[m], e[m])


@traced
def gst_rhs(m: int, ncut: int, denominator: int = DEFAULT_DENOMINATOR) -> QSeries:
    """
    (-1)^m q^(-C(m,2)) [E_(m-2)/(q,q^4;q^5)_inf - D_(m-2)/(q^2,q^3;q^5)_inf].

    Raises:
        UnsupportedError: If m is outside 0..5
    """
    if m not in GST_RANGE:
        raise UnsupportedError(f"m={m} is outside the supported range {GST_RANGE.start}..{GST_RANGE.stop - 1}")
    offset = denominator * (m * (m - 1) // 2)
    inner = ncut + offset
    first = product_quotient((), (FactorSpec(Q, 5), FactorSpec(qpow(4), 5)), inner, denominator)
    second = product_quotient((), (FactorSpec(qpow(2), 5), FactorSpec(qpow(3), 5)), inner, denominator)
    pair = schur(m - 2, denominator)
    value = pair.e * first - pair.d * second
    return value.shift(-offset).scale((-1) ** m).truncate(ncut)
