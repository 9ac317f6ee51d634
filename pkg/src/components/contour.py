"""
Bivariate (z, q) Laurent series and constant-term extraction.

Each integrand factor is one of four classical expansions in a variable z:

- EULER_A:  (t z^e; q^s)_inf          = sum_j q^(s C(j,2)) (-t)^j z^(e j) / (q^s;q^s)_j
- EULER_B:  1/(t z^e; q^s)_inf        = sum_j t^j z^(e j) / (q^s;q^s)_j
- QBINOM:   (a t z^e; q^s)_inf / (t z^e; q^s)_inf
                                      = sum_j (a;q^s)_j t^j z^(e j) / (q^s;q^s)_j
- JACOBI_Z: (q^s, t z^e, q^s/(t z^e); q^s)_inf
                                      = sum_{m in Z} (-1)^m q^(s C(m,2)) t^m z^(e m)

The constant term [z^0] of a product is computed from finite index windows
chosen so that every omitted index tuple contributes only above the
truncation order.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.components.errors import ConfigurationError, GradingError
from src.components.exactalg import DEFAULT_DENOMINATOR, to_scaled
from src.components.qseries import (
    ONE,
    Environment,
    FactorSpec,
    Monomial,
    QSeries,
    convex_indices,
    lowest_order,
    product_quotient,
    qpow,
)
from src.components.tracing import traced

logger = logging.getLogger(__name__)


class ZKind(Enum):
    EULER_A = 'euler_a'
    EULER_B = 'euler_b'
    QBINOM = 'qbinom'
    JACOBI_Z = 'jacobi_z'


@dataclass(frozen=True)
class ZFactor:
    """
    One integrand factor.

    Attributes:
        kind: Which expansion the factor uses
        t: Monomial part of the argument (may mention q, x and y)
        zpow: The power e of z in the argument (0 for a z-free factor)
        step: s, the exponent of the base q^s
        extra: For QBINOM, the numerator parameter a
    """

    kind: ZKind
    t: Monomial
    zpow: int = 1
    step: Fraction = Fraction(1)
    extra: Monomial = field(default=ONE)

    def __post_init__(self):
        object.__setattr__(self, 'step', Fraction(self.step))
        if self.step <= 0:
            raise ConfigurationError(f"z-factor step must be positive, got {self.step}")

    def resolved(self, env: Environment) -> 'ZFactor':
        return ZFactor(self.kind, env.resolve(self.t), self.zpow, self.step, env.resolve(self.extra))

    @property
    def two_sided(self) -> bool:
        return self.kind is ZKind.JACOBI_Z

    def is_z_free(self) -> bool:
        """True when the factor does not depend on z (zpow 0, or a vanishing argument)."""
        if self.t.coeff == 0:
            if self.kind is ZKind.JACOBI_Z:
                raise ConfigurationError("Jacobi factor needs a nonzero argument")
            return True
        return self.zpow == 0

    def product_form(self) -> Tuple[Tuple[FactorSpec, ...], Tuple[FactorSpec, ...]]:
        """Numerator and denominator Pochhammer lists of the factor with z = 1."""
        s = self.step
        if self.kind is ZKind.EULER_A:
            return (FactorSpec(self.t, s),), ()
        if self.kind is ZKind.EULER_B:
            return (), (FactorSpec(self.t, s),)
        if self.kind is ZKind.QBINOM:
            return (FactorSpec(self.extra * self.t, s),), (FactorSpec(self.t, s),)
        return (FactorSpec(qpow(s), s), FactorSpec(self.t, s), FactorSpec(qpow(s) / self.t, s)), ()

    def term(self, j: int) -> Tuple[Monomial, Tuple[FactorSpec, ...], Tuple[FactorSpec, ...]]:
        """(prefix monomial incl. q power, numerators, denominators) of index j."""
        s = self.step
        if self.kind is ZKind.JACOBI_Z:
            return (-self.t) ** j * qpow(s * (j * (j - 1) // 2)), (), ()
        base = (FactorSpec(qpow(s), s, j),)
        if self.kind is ZKind.EULER_A:
            return (-self.t) ** j * qpow(s * (j * (j - 1) // 2)), (), base
        if self.kind is ZKind.EULER_B:
            return self.t ** j, (), base
        return self.t ** j, (FactorSpec(self.extra, s, j),), base

    def growth(self, j: int, denominator: int) -> int:
        """Lower bound (1/D units) on the q-order of the coefficient of index j."""
        prefix, nums, _ = self.term(j)
        bound = prefix.q
        for factor in nums:
            bound -= factor.negative_order_sum()
        return to_scaled(bound, denominator)

    def is_flat(self) -> bool:
        """True when the coefficients do not grow with j (argument of q-order 0)."""
        if self.kind in (ZKind.EULER_A, ZKind.JACOBI_Z):
            return False
        if self.t.q < 0:
            raise GradingError(f"{self.kind.value} factor with argument {self.t} is not q-graded")
        return self.t.q == 0

    def flat_min(self, denominator: int) -> int:
        if self.kind is ZKind.QBINOM:
            return to_scaled(-FactorSpec(self.extra, self.step).negative_order_sum(), denominator)
        return 0


@dataclass
class ZSeries:
    """
    Laurent series in z with QSeries coefficients.

    Attributes:
        coeffs: z-degree -> coefficient
        ncut: Truncation order shared by the coefficients (1/D units)
        denominator: Global exponent denominator D
    """

    coeffs: Dict[int, QSeries]
    ncut: int
    denominator: int = DEFAULT_DENOMINATOR

    @property
    def window(self) -> Tuple[int, int]:
        if not self.coeffs:
            return (0, 0)
        return (min(self.coeffs), max(self.coeffs))

    def coefficient(self, degree: int) -> QSeries:
        value = self.coeffs.get(degree)
        if value is None:
            return QSeries.zero(self.ncut, self.denominator)
        return value.truncate(self.ncut)

    def constant_term(self) -> QSeries:
        return self.coefficient(0)


def z_add(a: ZSeries, b: ZSeries) -> ZSeries:
    ncut = min(a.ncut, b.ncut)
    coeffs = dict(a.coeffs)
    for degree, value in b.coeffs.items():
        coeffs[degree] = coeffs[degree] + value if degree in coeffs else value
    return ZSeries(coeffs, ncut, a.denominator)


def z_mul(a: ZSeries, b: ZSeries, keep: Optional[Tuple[int, int]] = None) -> ZSeries:
    """
    Convolution in z; with ``keep`` only result degrees in that inclusive range are formed.
    """
    coeffs: Dict[int, QSeries] = {}
    for da, ca in a.coeffs.items():
        for db, cb in b.coeffs.items():
            degree = da + db
            if keep is not None and not keep[0] <= degree <= keep[1]:
                continue
            product = ca * cb
            coeffs[degree] = coeffs[degree] + product if degree in coeffs else product
    return ZSeries(coeffs, min(a.ncut, b.ncut), a.denominator)


def _growing_indices(factor: ZFactor, limit: int, denominator: int) -> List[int]:
    def order(j: int) -> int:
        return factor.growth(j, denominator)

    indices = list(convex_indices(order, 0, 1, limit))
    if factor.two_sided:
        indices += list(convex_indices(order, -1, -1, limit))
    return sorted(indices)


def _growing_min(factor: ZFactor, denominator: int) -> int:
    values = []
    for start, step in ((0, 1), (-1, -1)) if factor.two_sided else ((0, 1),):
        j = start
        current = factor.growth(j, denominator)
        while True:
            values.append(current)
            following = factor.growth(j + step, denominator)
            if following >= current:
                break
            j, current = j + step, following
    return min(values)


def _expand(factor: ZFactor, indices: Sequence[int], cap: int, denominator: int) -> ZSeries:
    coeffs: Dict[int, QSeries] = {}
    for j in indices:
        prefix, nums, dens = factor.term(j)
        if prefix.coeff == 0:
            continue
        inner = product_quotient(nums, dens, cap - to_scaled(prefix.q, denominator), denominator)
        value = inner.mul_monomial(prefix)
        degree = factor.zpow * j
        coeffs[degree] = coeffs[degree] + value if degree in coeffs else value
    return ZSeries(coeffs, cap, denominator)


def _expand_z_free(factor: ZFactor, cap: int, denominator: int) -> ZSeries:
    nums, dens = factor.product_form()
    return ZSeries({0: product_quotient(nums, dens, cap, denominator)}, cap, denominator)


def _product_min(factor: ZFactor, denominator: int) -> int:
    nums, dens = factor.product_form()
    return to_scaled(lowest_order(nums) - lowest_order(dens), denominator)


def z_expand(
    factor: ZFactor,
    ncut: int,
    denominator: int = DEFAULT_DENOMINATOR,
    env: Optional[Environment] = None,
    padding: int = 0,
) -> ZSeries:
    """
    Expand a single factor as a z-Laurent series truncated at ``ncut``.

    The index window holds every j whose coefficient may reach q-order ``ncut``,
    plus ``padding`` extra indices on each open side.

    Raises:
        GradingError: If the factor's coefficients do not grow with the index
    """
    factor = factor.resolved(env or Environment.symbolic())
    if factor.is_z_free():
        return _expand_z_free(factor, ncut, denominator)
    if factor.is_flat():
        raise GradingError(f"{factor.kind.value} factor with argument {factor.t} has no finite window on its own")
    indices = _growing_indices(factor, ncut, denominator)
    indices = _pad(indices, padding, factor.two_sided)
    return _expand(factor, indices, ncut, denominator)


def _pad(indices: List[int], padding: int, two_sided: bool) -> List[int]:
    if not padding or not indices:
        return indices
    top = max(indices)
    extra = list(range(top + 1, top + 1 + padding))
    if two_sided:
        bottom = min(indices)
        extra += list(range(bottom - padding, bottom))
    return sorted(set(indices) | set(extra))


@traced
def constant_term(
    factors: Sequence[ZFactor],
    ncut: int,
    denominator: int = DEFAULT_DENOMINATOR,
    env: Optional[Environment] = None,
    window_padding: int = 0,
) -> QSeries:
    """
    [z^0] of the product of ``factors``, complete up to ``ncut``.

    Windows are chosen jointly: factor i keeps the indices whose growth bound
    plus the other factors' minima stays within ``ncut``. A factor whose
    coefficients do not grow (argument of q-order 0, e.g. 1/(y^2 z^2;q^2)_inf
    with symbolic y) is clipped by the z-degree reach of the others; at most
    one such factor is allowed.

    Args:
        factors: The integrand factors
        ncut: Truncation order in 1/D units
        denominator: Global exponent denominator D
        env: Specialization environment
        window_padding: Extra indices added to every window (stabilization checks)

    Returns:
        The constant term

    Raises:
        GradingError: If two factors are flat or a factor decays in q-order
    """
    env = env or Environment.symbolic()
    resolved = [f.resolved(env) for f in factors]
    z_free = [f for f in resolved if f.is_z_free()]
    active = [f for f in resolved if not f.is_z_free()]
    flat = [i for i, f in enumerate(active) if f.is_flat()]
    if len(flat) > 1:
        raise GradingError("constant term with more than one non-growing factor is not q-graded")

    minima = [
        f.flat_min(denominator) if i in flat else _growing_min(f, denominator)
        for i, f in enumerate(active)
    ]
    minima += [_product_min(f, denominator) for f in z_free]
    total_min = sum(minima)

    windows: List[List[int]] = []
    caps: List[int] = []
    for i, f in enumerate(active):
        cap = ncut - (total_min - minima[i])
        caps.append(cap)
        if i in flat:
            windows.append([])
            continue
        indices = _growing_indices(f, cap, denominator)
        windows.append(_pad(indices, window_padding, f.two_sided))

    for i in flat:
        reach = sum(
            max((abs(active[k].zpow * j) for j in windows[k]), default=0)
            for k in range(len(active))
            if k != i
        )
        windows[i] = list(range(reach // abs(active[i].zpow) + 1 + window_padding))

    expansions = [_expand(f, windows[i], caps[i], denominator) for i, f in enumerate(active)]
    for f, low in zip(z_free, minima[len(active):]):
        expansions.append(_expand_z_free(f, ncut - (total_min - low), denominator))

    logger.debug(
        f"constant term: windows={[(min(w), max(w)) if w else None for w in windows]} "
        f"minima={minima}"
    )

    ranges = [s.window for s in expansions]
    product = ZSeries({0: QSeries.one(None, denominator)}, ncut, denominator)
    for n, series in enumerate(expansions):
        rest_lo = sum(r[0] for r in ranges[n + 1:])
        rest_hi = sum(r[1] for r in ranges[n + 1:])
        product = z_mul(product, series, keep=(-rest_hi, -rest_lo))
    value = product.coeffs.get(0)
    if value is None:
        return QSeries.zero(ncut, denominator)
    return value.truncate(ncut)
