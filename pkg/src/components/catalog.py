"""
The identity catalog: one record per identity with independent builders for
its two sides, plus the derivation cross-checks and bisection checks that tie
records together.

Builders take a BuildContext and return a QSeries complete up to ``ctx.ncut``.
Every parameter mention goes through ``ctx.env`` before a FactorSpec or a
summand is evaluated, so one builder serves the symbolic identity and all of
its specializations.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Optional, Sequence, Tuple

from src.components.contour import ZFactor, ZKind, constant_term
from src.components.errors import ConfigurationError
from src.components.exactalg import DEFAULT_DENOMINATOR, to_scaled
from src.components.qseries import (
    INFINITE,
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
)
from src.components.summation import (
    DEFAULT_SHELL_MARGIN,
    LatticeSummand,
    PhiSpec,
    gst_rhs,
    lattice_sum,
    phi_series,
    schur,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BuildContext:
    """Everything a builder needs: environment, truncation order and knobs."""

    env: Environment
    ncut: int
    denominator: int = DEFAULT_DENOMINATOR
    m: Optional[int] = None
    shell_margin: int = DEFAULT_SHELL_MARGIN
    window_padding: int = 0


Builder = Callable[[BuildContext], QSeries]


@dataclass(frozen=True)
class IdentityRecord:
    """
    One catalog entry.

    Attributes:
        id: Stable identifier used on the command line
        title: Short human description
        paper_ref: Literature citation for the identity
        params: Free formal parameters of the identity
        lhs: Sum-side builder
        rhs: Product-side (or closed-form) builder
        knob: Valid range of the integer knob m, if the record is a family
        default_order: Truncation order in whole powers of q (None: the engine default)
        tags: Classification labels
        alternates: Further builders that must agree with the left side
        notes: Builder rewrites and other remarks
        exclusion: Returns a reason when a context must not be verified
    """

    id: str
    title: str
    paper_ref: str
    params: Tuple[str, ...]
    lhs: Builder
    rhs: Builder
    knob: Optional[range] = None
    default_order: Optional[int] = None
    tags: FrozenSet[str] = frozenset()
    alternates: Tuple[Builder, ...] = ()
    notes: str = ''
    exclusion: Optional[Callable[[BuildContext], Optional[str]]] = None

    def summary(self) -> dict:
        return {
            'id': self.id,
            'title': self.title,
            'paper_ref': self.paper_ref,
            'params': list(self.params),
            'knob': None if self.knob is None else [self.knob.start, self.knob.stop - 1],
            'default_order': self.default_order,
            'tags': sorted(self.tags),
            'alternates': len(self.alternates),
        }


@dataclass(frozen=True)
class CrossCheck:
    """A specialization of ``source`` that must reproduce ``target`` side by side."""

    source: str
    target: str
    source_env: Tuple[Tuple[str, Monomial], ...] = ()
    target_env: Tuple[Tuple[str, Monomial], ...] = ()
    source_m: Optional[int] = None
    target_m: Optional[int] = None
    bridge: Tuple[Tuple[FactorSpec, ...], Tuple[FactorSpec, ...]] = ((), ())
    note: str = ''

    @property
    def label(self) -> str:
        return f"{self.source}->{self.target}"


@dataclass(frozen=True)
class BisectionCheck:
    """
    Even/odd split of ``source`` in x at x = +-value.

    The even part must equal ``even_target`` and the odd part must equal
    ``odd_factor`` times ``odd_target``, on both sides.
    """

    source: str
    value: Monomial
    even_target: str
    odd_target: str
    odd_factor: Monomial = field(default=ONE)
    m: Optional[int] = None

    @property
    def label(self) -> str:
        suffix = '' if self.m is None else f"[m={self.m}]"
        return f"{self.source}{suffix}@x=+-{self.value}"


# -- notation helpers --------------------------------------------------------


def mono(coeff: int = 1, q=0, x=0, y=0) -> Monomial:
    return Monomial(coeff, Fraction(q), Fraction(x), Fraction(y))


def pochhammer(arg: Monomial, step=1, count: Optional[int] = INFINITE) -> FactorSpec:
    return FactorSpec(arg, Fraction(step), count)


def binom2(n: int) -> int:
    return n * (n - 1) // 2


def sign(n: int) -> int:
    return -1 if n % 2 else 1


def qq(n: int) -> FactorSpec:
    """(q;q)_n"""
    return pochhammer(Q, 1, n)


def q2q2(n: int) -> FactorSpec:
    """(q^2;q^2)_n"""
    return pochhammer(qpow(2), 2, n)


def _quotient(
    ctx: BuildContext,
    numerators: Sequence[FactorSpec],
    denominators: Sequence[FactorSpec] = (),
    ncut: Optional[int] = None,
) -> QSeries:
    return product_quotient(
        ctx.env.resolve_all(numerators),
        ctx.env.resolve_all(denominators),
        ctx.ncut if ncut is None else ncut,
        ctx.denominator,
    )


def _divided_cut(ctx: BuildContext, divisor: Monomial, factors: Sequence[FactorSpec]) -> int:
    """Cut for a product of ``factors`` that stays complete to ctx.ncut after division by ``divisor``."""
    floor = to_scaled(lowest_order(factors), ctx.denominator)
    return max(ctx.ncut + to_scaled(divisor.q, ctx.denominator), floor)


def _cofactor_cut(ctx: BuildContext, series: QSeries) -> int:
    """Cut for a factor multiplied into ``series`` so the product is complete to ctx.ncut."""
    low = series.lo
    return ctx.ncut if low is None else ctx.ncut - min(low, 0)


def _products(numerators: Sequence[FactorSpec], denominators: Sequence[FactorSpec] = ()) -> Builder:
    def build(ctx: BuildContext) -> QSeries:
        return _quotient(ctx, numerators, denominators)

    return build


def _summed(make_summand: Callable[[BuildContext], LatticeSummand]) -> Builder:
    def build(ctx: BuildContext) -> QSeries:
        return lattice_sum(
            make_summand(ctx), ctx.ncut, ctx.denominator, env=ctx.env, margin=ctx.shell_margin
        )

    return build


def _with_prefactor(
    ctx: BuildContext,
    numerators: Sequence[FactorSpec],
    denominators: Sequence[FactorSpec],
    series: Callable[[int], QSeries],
) -> QSeries:
    """Pochhammer quotient times a series of nonnegative order, complete to ctx.ncut."""
    nums = ctx.env.resolve_all(numerators)
    dens = ctx.env.resolve_all(denominators)
    low = to_scaled(lowest_order(nums) - lowest_order(dens), ctx.denominator)
    prefactor = product_quotient(nums, dens, ctx.ncut, ctx.denominator)
    return (prefactor * series(ctx.ncut - min(low, 0))).truncate(ctx.ncut)


# -- single sums ---------------------------------------------------------------


def _rr_summand(linear: int) -> Callable[[BuildContext], LatticeSummand]:
    def make(ctx: BuildContext) -> LatticeSummand:
        return LatticeSummand(
            dim=1,
            exponent=lambda i: i[0] ** 2 + linear * i[0],
            denominators=lambda i: (qq(i[0]),),
        )

    return make


def _gst_summand(ctx: BuildContext) -> LatticeSummand:
    m = ctx.m
    return LatticeSummand(
        dim=1,
        exponent=lambda i: i[0] ** 2 + m * i[0],
        denominators=lambda i: (qq(i[0]),),
    )


def _gst_rhs(ctx: BuildContext) -> QSeries:
    return gst_rhs(ctx.m, ctx.ncut, ctx.denominator)


def _cor13_summand(ctx: BuildContext) -> LatticeSummand:
    m = ctx.m
    return LatticeSummand(
        dim=1,
        exponent=lambda i: i[0] ** 2 + 2 * m * i[0],
        denominators=lambda i: (q2q2(i[0]), pochhammer(qpow(1 + 2 * m), 2, i[0])),
    )


def _cor13_rhs(ctx: BuildContext) -> QSeries:
    """Schur-polynomial form at q^4 divided by (q^(1+2m);q^2)_inf."""
    m, d = ctx.m, ctx.denominator
    offset = (2 * m * m - 2 * m) * d
    inner = ctx.ncut + offset
    base = pochhammer(qpow(1 + 2 * m), 2)
    first = _quotient(ctx, (), (base, pochhammer(qpow(4), 20), pochhammer(qpow(16), 20)), inner)
    second = _quotient(ctx, (), (base, pochhammer(qpow(8), 20), pochhammer(qpow(12), 20)), inner)
    pair = schur(m - 2, d)
    value = pair.e.dilate(4) * first - pair.d.dilate(4) * second
    return value.shift(-offset).scale(sign(m)).truncate(ctx.ncut)


def _slater_summand(odd: int) -> Callable[[BuildContext], LatticeSummand]:
    def make(ctx: BuildContext) -> LatticeSummand:
        return LatticeSummand(
            dim=1,
            exponent=lambda i: i[0] ** 2 + 2 * odd * i[0],
            denominators=lambda i: (qq(2 * i[0] + odd),),
        )

    return make


def _ramanujan_summand(odd: int) -> Callable[[BuildContext], LatticeSummand]:
    def make(ctx: BuildContext) -> LatticeSummand:
        return LatticeSummand(
            dim=1,
            exponent=lambda i: i[0] ** 2 + 2 * odd * i[0],
            numerators=lambda i: (pochhammer(-Q, 2, i[0]),),
            denominators=lambda i: (qq(2 * i[0] + odd),),
        )

    return make


def _weighted_product_summand(ctx: BuildContext) -> LatticeSummand:
    """sum_k q^C(k,2) prod_(i<k)(y + x q^i) (y q^k;q)_inf / (q;q)_k."""
    return LatticeSummand(
        dim=1,
        exponent=lambda i: binom2(i[0]),
        prefix=lambda i: Y ** i[0],
        numerators=lambda i: (pochhammer(-X / Y, 1, i[0]), pochhammer(Y * qpow(i[0]))),
        denominators=lambda i: (qq(i[0]),),
    )


def _cor12_lhs_summand(ctx: BuildContext) -> LatticeSummand:
    return LatticeSummand(
        dim=1,
        exponent=lambda i: 2 * i[0] ** 2 - i[0],
        prefix=lambda i: Y ** (2 * i[0]),
        denominators=lambda i: (q2q2(i[0]),),
    )


def _cor12_rhs_summand(ctx: BuildContext) -> LatticeSummand:
    return LatticeSummand(
        dim=1,
        exponent=lambda i: binom2(i[0]),
        prefix=lambda i: Y ** i[0],
        numerators=lambda i: (pochhammer(Y * qpow(i[0])),),
        denominators=lambda i: (qq(i[0]),),
    )


# -- double sums ----------------------------------------------------------------


def _double(exponent, prefix=None, first=qq) -> Callable[[BuildContext], LatticeSummand]:
    def make(ctx: BuildContext) -> LatticeSummand:
        return LatticeSummand(
            dim=2,
            exponent=lambda i: exponent(*i),
            prefix=(lambda i: prefix(*i)) if prefix else (lambda i: ONE),
            denominators=lambda i: (first(i[0]), q2q2(i[1])),
        )

    return make


def _uz_exponent(j: int, k: int) -> int:
    return j * j + 2 * j * k + 2 * k * k


def _even_qq(j: int) -> FactorSpec:
    return qq(2 * j)


def _odd_qq(j: int) -> FactorSpec:
    return qq(2 * j + 1)


# -- triple sums ----------------------------------------------------------------


def _triple(exponent, prefix, numerators, first=qq) -> Callable[[BuildContext], LatticeSummand]:
    def make(ctx: BuildContext) -> LatticeSummand:
        return LatticeSummand(
            dim=3,
            exponent=lambda i: exponent(ctx, *i),
            prefix=lambda i: prefix(*i),
            numerators=lambda i: numerators(*i),
            denominators=lambda i: (first(i[0]), q2q2(i[1]), q2q2(i[2])),
        )

    return make


def _shell_quadratic(j: int, k: int, l: int) -> int:
    n = j + k + l
    return n * (n - 1) + l * l


def _thm14_summand(ctx: BuildContext) -> LatticeSummand:
    def exponent(i):
        j, k, l = i
        return j + binom2(k) + binom2(j + k + 2 * l)

    def prefix(i):
        j, k, l = i
        return mono(sign(k), x=k + 2 * l, y=k + l)

    return LatticeSummand(
        dim=3,
        exponent=exponent,
        prefix=prefix,
        numerators=lambda i: (pochhammer(X, 1, i[0]),),
        denominators=lambda i: (qq(i[0]), qq(i[1]), q2q2(i[2])),
    )


def _thm14_rhs(ctx: BuildContext) -> QSeries:
    return _quotient(ctx, (pochhammer(Q * X, 2), pochhammer(X * Y, 2), pochhammer(-Q)))


def _xy_prefix(j: int, k: int, l: int) -> Monomial:
    return mono(sign(j + k), x=j, y=2 * j + 2 * l)


def _x2y2_numerator(j: int, k: int, l: int) -> Tuple[FactorSpec, ...]:
    return (pochhammer(mono(x=2, y=2), 2, k),)


def _thm15_exponent(ctx, j, k, l):
    return _shell_quadratic(j, k, l) + k


def _thm16_exponent(ctx, j, k, l):
    return _shell_quadratic(j, k, l) + 3 * k


def _thm15_rhs(ctx: BuildContext) -> QSeries:
    odd = pochhammer(Q, 2)
    first = _quotient(ctx, (odd, pochhammer(X * Y), pochhammer(-Y)))
    second = _quotient(ctx, (odd, pochhammer(-X * Y), pochhammer(Y)))
    return (first + second).div_exact(2)


def _thm16_exclusion(ctx: BuildContext) -> Optional[str]:
    unit = ctx.env.resolve(Q * X)
    if unit == ONE:
        return "the divisor (1 - qx) vanishes for x = q^-1"
    return None


def _thm16_rhs(ctx: BuildContext) -> QSeries:
    """(q;q^2)_inf {(xy,-y/q;q)_inf - (-xy,y/q;q)_inf} / (2 (y/q) (1 - qx))."""
    d = ctx.denominator
    divisor = ctx.env.resolve(Y * qpow(-1))
    plus = ctx.env.resolve_all((pochhammer(X * Y), pochhammer(-Y * qpow(-1))))
    minus = ctx.env.resolve_all((pochhammer(-X * Y), pochhammer(Y * qpow(-1))))
    inner = _divided_cut(ctx, divisor, plus + minus)
    quotient = (poch_list(plus, inner, d) - poch_list(minus, inner, d)).divide_monomial(divisor)
    unit = _quotient(ctx, (pochhammer(Q, 2),), (pochhammer(Q * X, 1, 1),), _cofactor_cut(ctx, quotient))
    return (quotient * unit).truncate(ctx.ncut).div_exact(2)


def _cor17_exponent(ctx, j, k, l):
    return _shell_quadratic(j, k, l) + k - ctx.m * (j + 2 * l)


def _cor19_exponent(ctx, j, k, l):
    return _shell_quadratic(j, k, l) + 3 * k - (ctx.m - 1) * (j + 2 * l)


def _signed_x_prefix(j: int, k: int, l: int) -> Monomial:
    return mono(sign(k), x=j)


def _x2_numerator(j: int, k: int, l: int) -> Tuple[FactorSpec, ...]:
    return (pochhammer(X ** 2, 2, k),)


def _cor17_rhs(ctx: BuildContext) -> QSeries:
    m = ctx.m
    return _quotient(ctx, (pochhammer(qpow(-m, -1), 1, m), pochhammer(-X)))


def _cor19_rhs(ctx: BuildContext) -> QSeries:
    """q^m (-q^-m;q)_m (-x;q)_m (-q^(m+1) x;q)_inf."""
    m, d = ctx.m, ctx.denominator
    factors = (pochhammer(qpow(-m, -1), 1, m), pochhammer(-X, 1, m), pochhammer(-X * qpow(m + 1)))
    return _quotient(ctx, factors, (), ctx.ncut - m * d).mul_monomial(qpow(m))


def _xl_prefix(j: int, k: int, l: int) -> Monomial:
    return mono(sign(j + k), x=j + l)


def _x_numerator(j: int, k: int, l: int) -> Tuple[FactorSpec, ...]:
    return (pochhammer(X, 2, k),)


def _shifted_exponent(a: int, b: int, c: int):
    def exponent(ctx, j, k, l):
        return _shell_quadratic(j, k, l) + a * j + b * k + c * l

    return exponent


# -- section four: bisection --------------------------------------------------


def _bisect_rhs(sign_of_second: int) -> Builder:
    def build(ctx: BuildContext) -> QSeries:
        plus = poch(ctx.env.resolve_factor(pochhammer(-Q * X)), ctx.ncut, ctx.denominator)
        minus = poch(ctx.env.resolve_factor(pochhammer(Q * X)), ctx.ncut, ctx.denominator)
        return (plus + minus.scale(sign_of_second)).div_exact(2)

    return build


def _wcy_lhs(sign_of_second: int) -> Builder:
    def build(ctx: BuildContext) -> QSeries:
        plus = poch(pochhammer(-Q, 2), ctx.ncut, ctx.denominator)
        minus = poch(pochhammer(Q, 2), ctx.ncut, ctx.denominator)
        return plus + minus.scale(sign_of_second)

    return build


def _wcy_rhs(low: int, high: int, shift: int) -> Builder:
    def build(ctx: BuildContext) -> QSeries:
        d = ctx.denominator
        body = _quotient(
            ctx,
            (pochhammer(qpow(16), 16), pochhammer(-qpow(low), 16), pochhammer(-qpow(high), 16)),
            (pochhammer(qpow(4), 4),),
            ctx.ncut - shift * d,
        )
        return body.mul_monomial(mono(2, q=shift))

    return build


def _theta8(low: int, high: int) -> Builder:
    return _products(
        (pochhammer(qpow(8), 8), pochhammer(-qpow(low), 8), pochhammer(-qpow(high), 8)),
        (q2q2(INFINITE),),
    )


def _theta8_scaled(low: int, high: int) -> Builder:
    def build(ctx: BuildContext) -> QSeries:
        m = ctx.m
        return _quotient(
            ctx,
            (
                pochhammer(qpow(-m, -1), 1, m),
                pochhammer(qpow(8), 8),
                pochhammer(-qpow(low), 8),
                pochhammer(-qpow(high), 8),
            ),
            (q2q2(INFINITE),),
        )

    return build


def _thm42_exponent(odd: int):
    def exponent(ctx, j, k, l):
        n = 2 * j + k + l + odd
        return n * (n - 1) + l * l + j + k - ctx.m * (odd + 2 * j + 2 * l)

    return exponent


def _thm43_exponent(odd: int):
    def exponent(ctx, j, k, l):
        n = 2 * j + k + l + odd
        return n * (n - 1) + l * l + j + 3 * k + 2 * l

    return exponent


def _signed_k_prefix(j: int, k: int, l: int) -> Monomial:
    return mono(sign(k))


def _odd_numerator(base: int):
    def numerators(j: int, k: int, l: int) -> Tuple[FactorSpec, ...]:
        return (pochhammer(qpow(base), 2, k),)

    return numerators


def _thm44_prefix(j: int, k: int, l: int) -> Monomial:
    return mono(sign(k), x=-l)


# -- section two and three: transformations, integrals, phi evaluations -------

HEINE_POINTS: Tuple[Tuple[Monomial, Monomial, Monomial, Monomial], ...] = (
    (qpow(1), qpow(2), qpow(3), qpow(1)),
    (qpow(1, -1), qpow(1), qpow(2), qpow(2)),
    (qpow(1), qpow(2, -1), qpow(3, -1), qpow(1)),
    (qpow(2), qpow(1), qpow(3), qpow(1, -1)),
    (qpow(1, -1), qpow(1, -1), qpow(3), qpow(2)),
    (qpow(1), qpow(3), qpow(2, -1), qpow(1, -1)),
)

THREETERM_POINTS: Tuple[Tuple[Monomial, Monomial], ...] = (
    (qpow(1), qpow(Fraction(1, 2))),
    (qpow(2), qpow(Fraction(1, 2))),
    (qpow(3), qpow(1)),
    (qpow(3), qpow(Fraction(3, 2))),
)


def _heine_lhs(ctx: BuildContext) -> QSeries:
    a, b, c, z = HEINE_POINTS[ctx.m]
    return phi_series(PhiSpec((a, b), (c,), 1, z), ctx.ncut, ctx.denominator)


def _heine_a_rhs(ctx: BuildContext) -> QSeries:
    a, b, c, z = HEINE_POINTS[ctx.m]
    spec = PhiSpec((a * b * z / c, a), (a * z,), 1, c / a)
    return _with_prefactor(
        ctx,
        (pochhammer(c / a), pochhammer(a * z)),
        (pochhammer(c), pochhammer(z)),
        lambda ncut: phi_series(spec, ncut, ctx.denominator),
    )


def _heine_b_rhs(ctx: BuildContext) -> QSeries:
    a, b, c, z = HEINE_POINTS[ctx.m]
    spec = PhiSpec((c / a, c / b), (c,), 1, a * b * z / c)
    return _with_prefactor(
        ctx,
        (pochhammer(a * b * z / c),),
        (pochhammer(z),),
        lambda ncut: phi_series(spec, ncut, ctx.denominator),
    )


def _threeterm_env(ctx: BuildContext) -> BuildContext:
    x, y = THREETERM_POINTS[ctx.m]
    env = Environment((('x', x), ('y', y)))
    return BuildContext(env, ctx.ncut, ctx.denominator, ctx.m, ctx.shell_margin, ctx.window_padding)


def _threeterm_lhs(ctx: BuildContext) -> QSeries:
    return _summed(_weighted_product_summand)(_threeterm_env(ctx))


def _threeterm_rhs(ctx: BuildContext) -> QSeries:
    """Two phi series over (q^2;q^2)_k, each weighted by a theta quotient over (-1;q)_inf."""
    local = _threeterm_env(ctx)
    x, y = THREETERM_POINTS[ctx.m]
    argument = -Q * x / (y * y)
    total = QSeries.zero(None, ctx.denominator)
    for s in (1, -1):
        spec = PhiSpec((Q * y / x * s, Monomial(0)), (-Q,), 1, argument)
        term = _with_prefactor(
            local,
            (pochhammer(y * s), pochhammer(x / y * s), pochhammer(Q / y * s)),
            (pochhammer(-Q),),
            lambda ncut, spec=spec: phi_series(spec, ncut, ctx.denominator),
        )
        total = total + term
    return total.div_exact(2)


INT_CC = (
    ZFactor(ZKind.EULER_A, X, 1, 1),
    ZFactor(ZKind.JACOBI_Z, ONE, -1, 1),
    ZFactor(ZKind.EULER_B, Y ** 2, 2, 2),
)

INT_A3 = (
    ZFactor(ZKind.EULER_A, -Y, 1, 1),
    ZFactor(ZKind.JACOBI_Z, X, -1, 1),
    ZFactor(ZKind.QBINOM, -Q / X, 1, 1, X),
    ZFactor(ZKind.EULER_B, Y, 2, 2),
)

INT_C3 = (
    ZFactor(ZKind.EULER_B, X, 1, 1),
    ZFactor(ZKind.QBINOM, Q / Y ** 2, 1, 2, mono(x=2, y=2)),
    ZFactor(ZKind.EULER_A, Q, 1, 2),
    ZFactor(ZKind.JACOBI_Z, Y ** 2, -1, 2),
)

INT_E3 = (
    ZFactor(ZKind.EULER_B, qpow(2) * X, 1, 1),
    ZFactor(ZKind.QBINOM, qpow(5) / Y ** 2, 1, 2, mono(x=2, y=2)),
    ZFactor(ZKind.EULER_A, qpow(3), 1, 2),
    ZFactor(ZKind.JACOBI_Z, Y ** 2 * qpow(-2), -1, 2),
)


def _integral(factors: Tuple[ZFactor, ...]) -> Builder:
    def build(ctx: BuildContext) -> QSeries:
        return constant_term(
            factors, ctx.ncut, ctx.denominator, env=ctx.env, window_padding=ctx.window_padding
        )

    return build


def _phi(spec: PhiSpec) -> Builder:
    def build(ctx: BuildContext) -> QSeries:
        resolved = PhiSpec(
            tuple(ctx.env.resolve(a) for a in spec.numerators),
            tuple(ctx.env.resolve(b) for b in spec.denominators),
            spec.base_step,
            ctx.env.resolve(spec.argument),
        )
        return phi_series(resolved, ctx.ncut, ctx.denominator)

    return build


def _phi_even_rhs(ctx: BuildContext) -> QSeries:
    t = Y * Q
    first = _quotient(ctx, (pochhammer(X * t),), (pochhammer(t),))
    second = _quotient(ctx, (pochhammer(-X * t),), (pochhammer(-t),))
    return (first + second).div_exact(2)


def _phi_odd_rhs(ctx: BuildContext) -> QSeries:
    """(1-q) / (2 (1-a) t) times the difference of the q-binomial sums, a = xq, t = yq."""
    a, t = X * Q, Y * Q
    divisor = ctx.env.resolve(t)
    inner = _divided_cut(ctx, divisor, ctx.env.resolve_all((pochhammer(a * t), pochhammer(-a * t))))
    first = _quotient(ctx, (pochhammer(a * t),), (pochhammer(t),), inner)
    second = _quotient(ctx, (pochhammer(-a * t),), (pochhammer(-t),), inner)
    difference = (first - second).divide_monomial(divisor).div_exact(2)
    correction = _quotient(ctx, (qq(1),), (pochhammer(a, 1, 1),), _cofactor_cut(ctx, difference))
    return (difference * correction).truncate(ctx.ncut)


def _euler_a_lhs(ctx: BuildContext) -> QSeries:
    return euler_a(ctx.env.resolve(X), ctx.ncut, ctx.denominator)


def _euler_b_lhs(ctx: BuildContext) -> QSeries:
    return euler_b(ctx.env.resolve(X * Q), ctx.ncut, ctx.denominator)


def _euler_a_rhs(ctx: BuildContext) -> QSeries:
    return poch(ctx.env.resolve_factor(pochhammer(-X)), ctx.ncut, ctx.denominator)


def _jacobi(form: JacobiForm) -> Builder:
    def build(ctx: BuildContext) -> QSeries:
        return jacobi_triple(ctx.env.resolve(X), ctx.ncut, ctx.denominator, form=form)

    return build


def _unit_lhs(ctx: BuildContext) -> QSeries:
    factors = (pochhammer(Q, 2), pochhammer(-Q, 2), pochhammer(-qpow(2), 2))
    return poch_list(factors, ctx.ncut, ctx.denominator)


def _one(ctx: BuildContext) -> QSeries:
    return QSeries.one(ctx.ncut, ctx.denominator)


# -- the catalog ------------------------------------------------------------------

SINGLE = frozenset({'single-sum'})
DOUBLE = frozenset({'double-sum'})
TRIPLE = frozenset({'triple-sum'})

_thm11_lhs = _summed(_double(
    lambda j, k: _uz_exponent(j, k) - j - k, lambda j, k: mono(x=j, y=2 * k)
))
_thm11_rhs = _summed(_weighted_product_summand)
_thm14_lhs = _summed(_thm14_summand)
_thm15_lhs = _summed(_triple(_thm15_exponent, _xy_prefix, _x2y2_numerator))
_thm16_lhs = _summed(_triple(_thm16_exponent, _xy_prefix, _x2y2_numerator))
_cw2_lhs = _summed(_double(lambda j, k: _uz_exponent(j, k) + k, lambda j, k: mono(x=j + 2 * k)))

CATALOG: Tuple[IdentityRecord, ...] = (
    IdentityRecord(
        'rr1', 'First Rogers-Ramanujan identity', 'Rogers-Ramanujan (first identity)', (),
        _summed(_rr_summand(0)),
        _products((), (pochhammer(Q, 5), pochhammer(qpow(4), 5))),
        tags=SINGLE | {'product'},
    ),
    IdentityRecord(
        'rr2', 'Second Rogers-Ramanujan identity', 'Rogers-Ramanujan (second identity)', (),
        _summed(_rr_summand(1)),
        _products((), (pochhammer(qpow(2), 5), pochhammer(qpow(3), 5))),
        tags=SINGLE | {'product'},
    ),
    IdentityRecord(
        'uz1', 'Uncu-Zudilin double sum, first form', 'Uncu-Zudilin; Bressoud', (),
        _summed(_double(_uz_exponent)),
        _products(
            (pochhammer(qpow(3), 3), pochhammer(qpow(3), 3)),
            (pochhammer(Q), pochhammer(qpow(6), 6)),
        ),
        tags=DOUBLE,
    ),
    IdentityRecord(
        'uz2', 'Uncu-Zudilin double sum, second form', 'Uncu-Zudilin; Bressoud', (),
        _summed(_double(lambda j, k: _uz_exponent(j, k) + j + 2 * k)),
        _products(
            (pochhammer(qpow(6), 6), pochhammer(qpow(6), 6)),
            (pochhammer(qpow(2), 2), pochhammer(qpow(3), 3)),
        ),
        tags=DOUBLE,
    ),
    IdentityRecord(
        'cw1', 'Cao-Wang double sum equal to (qx;q^2)_inf', 'Cao-Wang, Theorem 3.8', ('x',),
        _summed(_double(_uz_exponent, lambda j, k: mono(sign(j), x=j + k))),
        _products((pochhammer(Q * X, 2),)),
        tags=DOUBLE,
    ),
    IdentityRecord(
        'cw2', 'Cao-Wang double sum equal to (-qx;q)_inf', 'Cao-Wang, Theorem 3.8', ('x',),
        _cw2_lhs,
        _products((pochhammer(-Q * X),)),
        tags=DOUBLE,
    ),
    IdentityRecord(
        'thm11', 'Two-parameter double sum', 'two-parameter generalization of the Cao-Wang sums',
        ('x', 'y'),
        _thm11_lhs,
        _thm11_rhs,
        tags=DOUBLE,
        notes='(y;q)_inf/(y;q)_k is combined into (yq^k;q)_inf and (-x/y;q)_k y^k into '
        'prod_(i<k)(y + xq^i) so the right side stays q-graded with symbolic y',
    ),
    IdentityRecord(
        'ram532', 'Ramanujan sum over (q;q)_2k', 'Andrews-Berndt, Entry 5.3.2', (),
        _summed(_ramanujan_summand(0)),
        _products(
            (pochhammer(qpow(6), 6), pochhammer(qpow(6), 6)),
            (pochhammer(Q), pochhammer(qpow(12), 12)),
        ),
        tags=SINGLE,
    ),
    IdentityRecord(
        'ram344', 'Ramanujan sum over (q;q)_(2k+1)', 'Andrews-Berndt, Entry 3.4.4', (),
        _summed(_ramanujan_summand(1)),
        _products(
            (pochhammer(qpow(12), 12), pochhammer(-qpow(6), 6)),
            (pochhammer(Q), pochhammer(-qpow(2), 2)),
        ),
        tags=SINGLE,
    ),
    IdentityRecord(
        'cor12', 'One-parameter single sum (x = 0 case)', 'Berkovich-Warnaar, Equation (3.10)', ('y',),
        _summed(_cor12_lhs_summand),
        _summed(_cor12_rhs_summand),
        tags=SINGLE,
    ),
    IdentityRecord(
        'gst', 'Garrett-Ismail-Stanton formula', 'Garrett-Ismail-Stanton', (),
        _summed(_gst_summand),
        _gst_rhs,
        knob=range(0, 6),
        tags=SINGLE | {'schur'},
    ),
    IdentityRecord(
        'cor13', 'Schur-polynomial sum over (q^2;q^2)_k (q^(1+2m);q^2)_k',
        'Garrett-Ismail-Stanton at q^4 via the one-parameter single sum', (),
        _summed(_cor13_summand),
        _cor13_rhs,
        knob=range(0, 5),
        tags=SINGLE | {'schur'},
        notes='negative m puts a factor of q-order <= 0 into (q^(1+2m);q^2)_k; not covered',
    ),
    IdentityRecord(
        'slater98', 'Slater (98)', 'Slater list, Equation (98)', (),
        _summed(_slater_summand(0)),
        _products(
            (
                pochhammer(qpow(10), 10), pochhammer(qpow(8), 10), pochhammer(qpow(2), 10),
                pochhammer(qpow(14), 20), pochhammer(qpow(6), 20),
            ),
            (pochhammer(Q),),
        ),
        tags=SINGLE,
    ),
    IdentityRecord(
        'slater96', 'Slater (96)', 'Slater list, Equation (96)', (),
        _summed(_slater_summand(1)),
        _products(
            (
                pochhammer(qpow(10), 10), pochhammer(qpow(6), 10), pochhammer(qpow(4), 10),
                pochhammer(qpow(18), 20), pochhammer(qpow(2), 20),
            ),
            (pochhammer(Q),),
        ),
        tags=SINGLE,
    ),
    IdentityRecord(
        'thm14', 'Triple sum equal to (qx,xy;q^2)_inf (-q;q)_inf',
        'triple-sum generalization of the first Cao-Wang sum', ('x', 'y'),
        _thm14_lhs,
        _thm14_rhs,
        default_order=30,
        tags=TRIPLE,
    ),
    IdentityRecord(
        'thm15', 'Triple sum equal to a half-sum of theta-like products',
        'triple-sum generalization of the second Cao-Wang sum', ('x', 'y'),
        _thm15_lhs,
        _thm15_rhs,
        default_order=30,
        tags=TRIPLE | {'parity'},
        notes='the 1/2 prefactor is an exact division; odd coefficients are a FAIL',
    ),
    IdentityRecord(
        'thm16', 'Triple sum equal to a half-difference over (y/q - xy)',
        'triple-sum generalization of the second Cao-Wang sum', ('x', 'y'),
        _thm16_lhs,
        _thm16_rhs,
        default_order=30,
        tags=TRIPLE | {'parity'},
        notes='(y/q - xy) is factored as (y q^-1)(1 - qx); environments with x = q^-1 are excluded',
        exclusion=_thm16_exclusion,
    ),
    IdentityRecord(
        'cor17', 'Triple sum with knob m equal to (-q^-m;q)_m (-x;q)_inf',
        'specialization (x,y) -> (-xq^m, q^-m) of the half-sum triple sum', ('x',),
        _summed(_triple(_cor17_exponent, _signed_x_prefix, _x2_numerator)),
        _cor17_rhs,
        knob=range(0, 5),
        default_order=30,
        tags=TRIPLE,
    ),
    IdentityRecord(
        'cor18a', 'Triple sum equal to (q,x;q^2)_inf', 'specialization (x,y) -> (1, x^(1/2))', ('x',),
        _summed(_triple(_shifted_exponent(0, 1, 0), _xl_prefix, _x_numerator)),
        _products((pochhammer(Q, 2), pochhammer(X, 2))),
        default_order=30,
        tags=TRIPLE,
    ),
    IdentityRecord(
        'cor18b', 'Triple sum equal to (q,x;q^2)_inf, shifted exponent',
        'specialization (x,y) -> (q, x^(1/2)/q)', ('x',),
        _summed(_triple(_shifted_exponent(-1, 1, -2), _xl_prefix, _x_numerator)),
        _products((pochhammer(Q, 2), pochhammer(X, 2))),
        default_order=30,
        tags=TRIPLE,
    ),
    IdentityRecord(
        'cor18c', 'Triple sum equal to (q,q^2x;q^2)_inf', 'specialization (x,y) -> (1/q, q x^(1/2))', ('x',),
        _summed(_triple(_shifted_exponent(1, 1, 2), _xl_prefix, _x_numerator)),
        _products((pochhammer(Q, 2), pochhammer(qpow(2) * X, 2))),
        default_order=30,
        tags=TRIPLE,
    ),
    IdentityRecord(
        'cor19', 'Triple sum with knob m over the cancelled divisor q^-m + x',
        'specialization (x,y) -> (-xq^(m-1), q^(1-m)) of the half-difference triple sum', ('x',),
        _summed(_triple(_cor19_exponent, _signed_x_prefix, _x2_numerator)),
        _cor19_rhs,
        knob=range(0, 5),
        default_order=30,
        tags=TRIPLE,
        notes='(-x;q)_inf/(q^-m + x) is evaluated as q^m (-x;q)_m (-q^(m+1)x;q)_inf',
    ),
    IdentityRecord(
        'cor110a', 'Triple sum equal to (q^3,x;q^2)_inf', 'specialization (x,y) -> (1, x^(1/2))', ('x',),
        _summed(_triple(_shifted_exponent(0, 3, 0), _xl_prefix, _x_numerator)),
        _products((pochhammer(qpow(3), 2), pochhammer(X, 2))),
        default_order=30,
        tags=TRIPLE,
    ),
    IdentityRecord(
        'cor110b', 'Triple sum equal to (q^3,q^2x;q^2)_inf', 'specialization (x,y) -> (q^-2, q^2 x^(1/2))',
        ('x',),
        _summed(_triple(_shifted_exponent(2, 3, 4), _xl_prefix, _x_numerator)),
        _products((pochhammer(qpow(3), 2), pochhammer(qpow(2) * X, 2))),
        default_order=30,
        tags=TRIPLE,
    ),
    IdentityRecord(
        'unit-rel', '(q,-q,-q^2;q^2)_inf = 1', 'Gasper-Rahman, p. 24', (),
        _unit_lhs,
        _one,
        tags=frozenset({'product'}),
    ),
    IdentityRecord(
        'euler-a', "Euler's q-exponential sum at z = x", 'Gasper-Rahman, (II.2)', ('x',),
        _euler_a_lhs,
        _euler_a_rhs,
        tags=frozenset({'classical'}),
    ),
    IdentityRecord(
        'euler-b', "Euler's second q-exponential sum at z = xq", 'Gasper-Rahman, (II.1)', ('x',),
        _euler_b_lhs,
        _products((), (pochhammer(X * Q),)),
        tags=frozenset({'classical'}),
    ),
    IdentityRecord(
        'jacobi', 'Jacobi triple product at z = x', 'Gasper-Rahman, (II.28)', ('x',),
        _jacobi(JacobiForm.SUM),
        _jacobi(JacobiForm.PRODUCT),
        tags=frozenset({'classical'}),
    ),
    IdentityRecord(
        'qbinom', 'q-binomial theorem at a = x, t = yq', 'Gasper-Rahman, (II.3)', ('x', 'y'),
        _phi(PhiSpec((X,), (), 1, Y * Q)),
        _products((pochhammer(X * Y * Q),), (pochhammer(Y * Q),)),
        tags=frozenset({'classical', 'phi'}),
    ),
    IdentityRecord(
        'heine-a', "Heine's first transformation at a specialization list",
        'Gasper-Rahman, (III.2)', (),
        _heine_lhs,
        _heine_a_rhs,
        knob=range(0, len(HEINE_POINTS)),
        default_order=30,
        tags=frozenset({'transformation', 'phi'}),
        notes='m selects (a,b,c,z) from HEINE_POINTS',
    ),
    IdentityRecord(
        'heine-b', "Heine's third transformation at a specialization list",
        'Gasper-Rahman, (III.3)', (),
        _heine_lhs,
        _heine_b_rhs,
        knob=range(0, len(HEINE_POINTS)),
        default_order=30,
        tags=frozenset({'transformation', 'phi'}),
        notes='m selects (a,b,c,z) from HEINE_POINTS',
    ),
    IdentityRecord(
        'threeterm-aa', 'Three-term transformation at (a,b,c,z) = (-x/y, x/y, 0, -y^2/x)',
        'Gasper-Rahman, (III.32)', (),
        _threeterm_lhs,
        _threeterm_rhs,
        knob=range(0, len(THREETERM_POINTS)),
        default_order=30,
        tags=frozenset({'transformation', 'phi'}),
        notes='m selects (x,y) from THREETERM_POINTS; (q^2, q^(3/2)) is not q-graded and is '
        'replaced by (q^2, q^(1/2)) and (q^3, q^(3/2))',
    ),
    IdentityRecord(
        'int-cc', 'Constant term of (xz,q,qz,1/z;q)_inf / (y^2z^2;q^2)_inf',
        'contour integral for the two-parameter double sum', ('x', 'y'),
        _integral(INT_CC),
        _thm11_rhs,
        default_order=30,
        tags=frozenset({'integral'}),
        alternates=(_thm11_lhs,),
    ),
    IdentityRecord(
        'int-a3', 'Constant term for the (qx,xy;q^2) triple sum',
        'contour integral via Rosengren, Proposition 3.2', ('x', 'y'),
        _integral(INT_A3),
        _thm14_rhs,
        default_order=30,
        tags=frozenset({'integral'}),
        alternates=(_thm14_lhs,),
    ),
    IdentityRecord(
        'int-c3', 'Constant term for the half-sum triple sum',
        'contour integral via Rosengren, Proposition 3.2', ('x', 'y'),
        _integral(INT_C3),
        _thm15_rhs,
        default_order=30,
        tags=frozenset({'integral', 'parity'}),
        alternates=(_thm15_lhs,),
    ),
    IdentityRecord(
        'int-e3', 'Constant term for the half-difference triple sum',
        'contour integral via Rosengren, Proposition 3.2', ('x', 'y'),
        _integral(INT_E3),
        _thm16_rhs,
        default_order=30,
        tags=frozenset({'integral', 'parity'}),
        alternates=(_thm16_lhs,),
        exclusion=_thm16_exclusion,
    ),
    IdentityRecord(
        'phi-even', 'Sum of the q-binomial theorem at t and -t', 'q-binomial theorem, even part',
        ('x', 'y'),
        _phi(PhiSpec((X, X * Q), (Q,), 2, Y ** 2 * qpow(2))),
        _phi_even_rhs,
        tags=frozenset({'phi', 'parity'}),
    ),
    IdentityRecord(
        'phi-odd', 'Difference of the q-binomial theorem at t and -t', 'q-binomial theorem, odd part',
        ('x', 'y'),
        _phi(PhiSpec((X * qpow(2), X * qpow(3)), (qpow(3),), 2, Y ** 2 * qpow(2))),
        _phi_odd_rhs,
        tags=frozenset({'phi', 'parity'}),
        notes='a = xq keeps the (1 - a) divisor unit-invertible',
    ),
    IdentityRecord(
        'phi-sq', '2phi1(a,-a;-q;q,t) = (a^2 t;q^2)/(t;q^2)', 'q-binomial theorem with (a,q) -> (a^2,q^2)',
        ('x', 'y'),
        _phi(PhiSpec((X, -X), (-Q,), 1, Y * Q)),
        _products((pochhammer(X ** 2 * Y * Q, 2),), (pochhammer(Y * Q, 2),)),
        tags=frozenset({'phi'}),
    ),
    IdentityRecord(
        'bisect-a', 'Even part in x of the second Cao-Wang sum', 'bisection of the second Cao-Wang sum',
        ('x',),
        _summed(_double(lambda j, k: 4 * j * j + 4 * j * k + 2 * k * k + k,
                        lambda j, k: mono(x=2 * j + 2 * k), _even_qq)),
        _bisect_rhs(1),
        tags=DOUBLE | {'bisection', 'parity'},
    ),
    IdentityRecord(
        'bisect-b', 'Odd part in x of the second Cao-Wang sum', 'bisection of the second Cao-Wang sum',
        ('x',),
        _summed(_double(lambda j, k: 4 * j * j + 4 * j * k + 2 * k * k + 4 * j + 3 * k + 1,
                        lambda j, k: mono(x=1 + 2 * j + 2 * k), _odd_qq)),
        _bisect_rhs(-1),
        tags=DOUBLE | {'bisection', 'parity'},
    ),
    IdentityRecord(
        'wcy-a', '(-q;q^2)_inf + (q;q^2)_inf as a theta quotient', 'Wang, Equation (1.2a)', (),
        _wcy_lhs(1),
        _wcy_rhs(6, 10, 0),
        default_order=60,
        tags=frozenset({'product', 'bisection'}),
    ),
    IdentityRecord(
        'wcy-b', '(-q;q^2)_inf - (q;q^2)_inf as a theta quotient', 'Wang, Equation (1.2b)', (),
        _wcy_lhs(-1),
        _wcy_rhs(2, 14, 1),
        default_order=60,
        tags=frozenset({'product', 'bisection'}),
    ),
    IdentityRecord(
        'thm41a', 'Double sum over (q;q)_2j equal to (q^8,-q^3,-q^5;q^8)/(q^2;q^2)',
        'bisection of the second Cao-Wang sum at x = q^(-1/2)', (),
        _summed(_double(lambda j, k: 4 * j * j + 4 * j * k + 2 * k * k - j, None, _even_qq)),
        _theta8(3, 5),
        tags=DOUBLE | {'bisection'},
    ),
    IdentityRecord(
        'thm41b', 'Double sum over (q;q)_(1+2j) equal to (q^8,-q,-q^7;q^8)/(q^2;q^2)',
        'bisection of the second Cao-Wang sum at x = q^(-1/2)', (),
        _summed(_double(lambda j, k: 4 * j * j + 4 * j * k + 2 * k * k + 3 * j + 2 * k, None, _odd_qq)),
        _theta8(1, 7),
        tags=DOUBLE | {'bisection'},
    ),
    IdentityRecord(
        'thm42a', 'Triple sum with knob m, even bisection', 'bisection of the knob-m triple sum at x = q^(1/2)',
        (),
        _summed(_triple(_thm42_exponent(0), _signed_k_prefix, _odd_numerator(1), _even_qq)),
        _theta8_scaled(3, 5),
        knob=range(0, 5),
        tags=TRIPLE | {'bisection'},
    ),
    IdentityRecord(
        'thm42b', 'Triple sum with knob m, odd bisection', 'bisection of the knob-m triple sum at x = q^(1/2)',
        (),
        _summed(_triple(_thm42_exponent(1), _signed_k_prefix, _odd_numerator(1), _odd_qq)),
        _theta8_scaled(1, 7),
        knob=range(0, 5),
        tags=TRIPLE | {'bisection'},
    ),
    IdentityRecord(
        'thm43a', 'Triple sum with (q^-1;q^2)_k, even bisection',
        'bisection of the m = 0 cancelled-divisor triple sum at x = q^(-1/2)', (),
        _summed(_triple(_thm43_exponent(0), _signed_k_prefix, _odd_numerator(-1), _even_qq)),
        _theta8(3, 5),
        tags=TRIPLE | {'bisection'},
    ),
    IdentityRecord(
        'thm43b', 'Triple sum with (q^-1;q^2)_k, odd bisection',
        'bisection of the m = 0 cancelled-divisor triple sum at x = q^(-1/2)', (),
        _summed(_triple(_thm43_exponent(1), _signed_k_prefix, _odd_numerator(-1), _odd_qq)),
        _theta8(1, 7),
        tags=TRIPLE | {'bisection'},
    ),
    IdentityRecord(
        'thm44a', 'Triple sum with x^-l equal to (-qx,-q^3/x;q^4)/(q^2;q^4)',
        'half-sum triple sum at (x,y) -> (-x/q, q/x^(1/2)) with the Jacobi product', ('x',),
        _summed(_triple(_shifted_exponent(1, 1, 2), _thm44_prefix, _x_numerator)),
        _products((pochhammer(-Q * X, 4), pochhammer(-qpow(3) / X, 4)), (pochhammer(qpow(2), 4),)),
        tags=TRIPLE,
    ),
    IdentityRecord(
        'thm44b', 'Triple sum with x^-l equal to (-q^3x,-q^5/x;q^4)/(q^2;q^4)',
        'half-difference triple sum at (x,y) -> (-x/q^2, q^2/x^(1/2)) with the Jacobi product', ('x',),
        _summed(_triple(_shifted_exponent(2, 3, 4), _thm44_prefix, _x_numerator)),
        _products((pochhammer(-qpow(3) * X, 4), pochhammer(-qpow(5) / X, 4)), (pochhammer(qpow(2), 4),)),
        tags=TRIPLE,
    ),
)


def _env(**bindings: Monomial) -> Tuple[Tuple[str, Monomial], ...]:
    return tuple(sorted(bindings.items()))


HALF = Fraction(1, 2)

CROSS_CHECKS: Tuple[CrossCheck, ...] = (
    CrossCheck('thm11', 'uz1', _env(x=Q, y=qpow(HALF)), note='Ramanujan Entry 5.3.2 evaluation'),
    CrossCheck('thm11', 'uz2', _env(x=qpow(2), y=qpow(3 * HALF)), note='Ramanujan Entry 3.4.4 evaluation'),
    CrossCheck('thm11', 'cor12', _env(x=mono(0))),
    CrossCheck('gst', 'rr1', source_m=0),
    CrossCheck('gst', 'rr2', source_m=1),
    CrossCheck('cor13', 'slater98', source_m=0),
    CrossCheck(
        'cor13', 'slater96', source_m=1, bridge=((), (qq(1),)),
        note='(q;q)_(2k+1) = (1-q)(q^2;q^2)_k (q^3;q^2)_k',
    ),
    CrossCheck('thm14', 'cw1', _env(x=ONE, y=qpow(2)), _env(x=Q)),
    CrossCheck('thm15', 'cw2', _env(x=qpow(-1), y=Q), _env(x=mono(-1)), note='xy = 1'),
    CrossCheck('thm15', 'cw2', _env(x=Q, y=qpow(-1)), _env(x=mono(-1, q=-2)), note='xy = 1, both sides vanish'),
    CrossCheck('thm16', 'cw2', _env(x=qpow(-2), y=qpow(2)), _env(x=mono(-1, q=1)), note='xy = 1'),
    CrossCheck('thm15', 'cor18a', _env(x=ONE, y=qpow(HALF)), _env(x=Q)),
    CrossCheck('thm15', 'cor18b', _env(x=Q, y=qpow(-HALF)), _env(x=Q)),
    CrossCheck('thm15', 'cor18c', _env(x=qpow(-1), y=qpow(3 * HALF)), _env(x=Q)),
    CrossCheck('thm16', 'cor110a', _env(x=ONE, y=qpow(HALF)), _env(x=Q)),
    CrossCheck('thm16', 'cor110b', _env(x=qpow(-2), y=qpow(5 * HALF)), _env(x=Q)),
)

BISECTION_CHECKS: Tuple[BisectionCheck, ...] = (
    BisectionCheck('cw2', qpow(-HALF), 'thm41a', 'thm41b', qpow(HALF)),
    *(
        BisectionCheck('cor17', qpow(HALF), 'thm42a', 'thm42b', qpow(HALF), m=m)
        for m in range(0, 5)
    ),
    BisectionCheck('cor19', qpow(-HALF), 'thm43a', 'thm43b', qpow(HALF), m=0),
)

_BY_ID: Dict[str, IdentityRecord] = {record.id: record for record in CATALOG}


def find_record(identity_id: str) -> Optional[IdentityRecord]:
    return _BY_ID.get(identity_id)


def check_catalog() -> None:
    """
    Structural sanity of the catalog.

    Raises:
        ConfigurationError: On duplicate ids or records without a citation
    """
    if len(_BY_ID) != len(CATALOG):
        raise ConfigurationError("duplicate identity ids in the catalog")
    for record in CATALOG:
        if not record.paper_ref:
            raise ConfigurationError(f"{record.id} has no citation")
