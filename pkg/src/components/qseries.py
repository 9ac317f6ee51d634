"""
Truncated Laurent q-series with ParamPoly coefficients, and the expansion
primitives built on them: q-Pochhammer products, Euler's two expansions and the
Jacobi triple product.

A series stores coefficients for scaled q-exponents (units of 1/D) and an
inclusive truncation order ``ncut``. Every stored coefficient at or below ``ncut``
is complete. ``ncut=None`` marks an exact Laurent polynomial.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from src.components.errors import ConfigurationError, ExactnessError, GradingError, InversionError
from src.components.exactalg import (
    DEFAULT_DENOMINATOR,
    ParamMono,
    ParamPoly,
    ScaledExp,
    Terms,
    add_into,
    check_denominator,
    format_exponent,
    mul_into,
    prune,
    to_scaled,
)
from src.components.tracing import traced

logger = logging.getLogger(__name__)

# Count of an infinite Pochhammer product.
INFINITE = None

PARAMETERS = ('x', 'y')


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _unit_power(coeff: int, n: int) -> int:
    """coeff**n for any integer n; negative n needs coeff = +-1."""
    if n >= 0:
        return coeff ** n
    if coeff not in (1, -1):
        raise ExactnessError(f"{coeff}^{n} is not an integer")
    return coeff ** (-n)


@dataclass(frozen=True)
class Monomial:
    """
    A signed monomial c * q^q * x^x * y^y with rational exponents.

    This is the builder-level value: catalog builders, environments and the
    expression parser all speak Monomials, and the kernels convert them to
    scaled integers with ``scaled``.
    """

    coeff: int = 1
    q: Fraction = Fraction(0)
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.coeff, int):
            raise ConfigurationError(f"Monomial coefficient must be an integer, got {self.coeff!r}")
        for name in ('q', 'x', 'y'):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.coeff == 0:
            for name in ('q', 'x', 'y'):
                object.__setattr__(self, name, Fraction(0))

    @property
    def has_params(self) -> bool:
        return bool(self.x or self.y)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def exponent(self, name: str) -> Fraction:
        return getattr(self, name)

    def __mul__(self, other) -> 'Monomial':
        if isinstance(other, int):
            return Monomial(self.coeff * other, self.q, self.x, self.y)
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(
            self.coeff * other.coeff, self.q + other.q, self.x + other.x, self.y + other.y
        )

    __rmul__ = __mul__

    def __neg__(self) -> 'Monomial':
        return Monomial(-self.coeff, self.q, self.x, self.y)

    def __truediv__(self, other: 'Monomial') -> 'Monomial':
        if isinstance(other, int):
            other = Monomial(other)
        if not isinstance(other, Monomial):
            return NotImplemented
        if other.coeff == 0:
            raise ZeroDivisionError("division by a zero monomial")
        quotient, remainder = divmod(self.coeff, other.coeff)
        if remainder:
            raise ExactnessError(f"{self} is not divisible by {other}")
        return Monomial(quotient, self.q - other.q, self.x - other.x, self.y - other.y)

    def __pow__(self, n: int) -> 'Monomial':
        if self.coeff == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of a zero monomial")
            return Monomial(1) if n == 0 else Monomial(0)
        return Monomial(_unit_power(self.coeff, n), self.q * n, self.x * n, self.y * n)

    def scaled(self, denominator: int) -> Tuple[int, ScaledExp, ScaledExp, ScaledExp]:
        """Return (coeff, qexp, xexp, yexp) with exponents in 1/denominator units."""
        return (
            self.coeff,
            to_scaled(self.q, denominator),
            to_scaled(self.x, denominator),
            to_scaled(self.y, denominator),
        )

    def param_mono(self, denominator: int) -> ParamMono:
        return ParamMono(
            self.coeff, to_scaled(self.x, denominator), to_scaled(self.y, denominator)
        )

    def __str__(self) -> str:
        if self.coeff == 0:
            return '0'
        atoms = []
        for name in ('q', 'x', 'y'):
            exp = getattr(self, name)
            if exp == 1:
                atoms.append(name)
            elif exp:
                atoms.append(f"{name}^{_format_fraction(exp)}")
        magnitude = abs(self.coeff)
        if magnitude != 1 or not atoms:
            atoms.insert(0, str(magnitude))
        return ('-' if self.coeff < 0 else '') + '*'.join(atoms)


ONE = Monomial(1)
Q = Monomial(1, q=1)
X = Monomial(1, x=1)
Y = Monomial(1, y=1)


def qpow(exponent: Union[int, Fraction, str], coeff: int = 1) -> Monomial:
    """coeff * q^exponent."""
    return Monomial(coeff, q=Fraction(exponent))


@dataclass(frozen=True)
class FactorSpec:
    """The q-Pochhammer symbol (arg; q^step)_count; ``count=INFINITE`` for the infinite product."""

    arg: Monomial
    step: Fraction = Fraction(1)
    count: Optional[int] = INFINITE

    def __post_init__(self):
        object.__setattr__(self, 'step', Fraction(self.step))
        if self.step <= 0:
            raise ConfigurationError(f"Pochhammer step must be positive, got {self.step}")
        if self.count is not None and (not isinstance(self.count, int) or self.count < 0):
            raise ConfigurationError(f"Pochhammer count must be a nonnegative integer, got {self.count!r}")

    @property
    def is_infinite(self) -> bool:
        return self.count is None

    def factor_orders(self) -> Iterator[Fraction]:
        """q-orders of the individual factors (unbounded for infinite products)."""
        if self.arg.coeff == 0:
            return
        k = 0
        while self.count is None or k < self.count:
            yield self.arg.q + self.step * k
            k += 1

    def negative_order_sum(self) -> Fraction:
        """B: the sum of |q-order| over factors of negative q-order."""
        total = Fraction(0)
        for order in self.factor_orders():
            if order >= 0:
                break
            total -= order
        return total

    def __str__(self) -> str:
        base = 'q' if self.step == 1 else f"q^{_format_fraction(self.step)}"
        count = 'inf' if self.count is None else str(self.count)
        return f"({self.arg};{base})_{count}"


def lowest_order(factors: Iterable[FactorSpec]) -> Fraction:
    """Lower bound on the q-order of a product of Pochhammer symbols."""
    return -sum((f.negative_order_sum() for f in factors), Fraction(0))


def _min_cut(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class QSeries:
    """
    Immutable truncated Laurent series in q.

    Coefficients are stored sparsely as ``{scaled exponent: term dict}``; zero
    coefficients are never stored, and nothing above ``ncut`` is stored.
    """

    __slots__ = ('_coeffs', 'ncut', 'denominator')

    def __init__(
        self,
        coeffs: Optional[Mapping[int, Union[ParamPoly, Terms, int]]] = None,
        ncut: Optional[int] = None,
        denominator: int = DEFAULT_DENOMINATOR,
    ):
        """
        Initialize the series.

        Args:
            coeffs: Mapping scaled exponent -> coefficient (ParamPoly, raw term dict or int)
            ncut: Inclusive truncation order in 1/D units, None for an exact polynomial
            denominator: Global exponent denominator D
        """
        self.denominator = check_denominator(denominator)
        self.ncut = ncut
        table: Dict[int, Terms] = {}
        for exp, value in (coeffs or {}).items():
            if ncut is not None and exp > ncut:
                continue
            if isinstance(value, ParamPoly):
                if value.denominator != denominator:
                    raise ConfigurationError(
                        f"Denominator mismatch: {value.denominator} vs {denominator}"
                    )
                terms = dict(value.raw)
            elif isinstance(value, int):
                terms = {(0, 0): value} if value else {}
            else:
                terms = prune(value)
            if terms:
                table[exp] = terms
        self._coeffs = table

    @classmethod
    def _wrap(cls, table: Dict[int, Terms], ncut: Optional[int], denominator: int) -> 'QSeries':
        series = cls.__new__(cls)
        series._coeffs = table
        series.ncut = ncut
        series.denominator = denominator
        return series

    @classmethod
    def zero(cls, ncut: Optional[int] = None, denominator: int = DEFAULT_DENOMINATOR) -> 'QSeries':
        return cls._wrap({}, ncut, check_denominator(denominator))

    @classmethod
    def one(cls, ncut: Optional[int] = None, denominator: int = DEFAULT_DENOMINATOR) -> 'QSeries':
        return cls.constant(1, ncut, denominator)

    @classmethod
    def constant(
        cls, value: int, ncut: Optional[int] = None, denominator: int = DEFAULT_DENOMINATOR
    ) -> 'QSeries':
        return cls({0: value}, ncut, denominator)

    @classmethod
    def monomial(
        cls, mono: Monomial, ncut: Optional[int] = None, denominator: int = DEFAULT_DENOMINATOR
    ) -> 'QSeries':
        coeff, qexp, xexp, yexp = mono.scaled(denominator)
        return cls({qexp: {(xexp, yexp): coeff}}, ncut, denominator)

    @classmethod
    def polynomial(
        cls,
        coefficients: Sequence[int],
        ncut: Optional[int] = None,
        denominator: int = DEFAULT_DENOMINATOR,
    ) -> 'QSeries':
        """Series whose coefficient of q^k (whole powers) is ``coefficients[k]``."""
        return cls({k * denominator: c for k, c in enumerate(coefficients)}, ncut, denominator)

    # -- inspection -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.ncut is None

    @property
    def lo(self) -> Optional[int]:
        """Least exponent that may carry a nonzero coefficient (None for the exact zero)."""
        if self._coeffs:
            return min(self._coeffs)
        return None if self.ncut is None else self.ncut + 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def exponents(self) -> List[int]:
        return sorted(self._coeffs)

    def coefficient(self, exp: ScaledExp) -> ParamPoly:
        """Coefficient of q^(exp/D)."""
        if self.ncut is not None and exp > self.ncut:
            raise ConfigurationError(
                f"Exponent {format_exponent(exp, self.denominator)} is beyond the truncation order"
            )
        return ParamPoly(self._coeffs.get(exp), self.denominator)

    def coefficient_at(self, power: Union[int, Fraction, str]) -> ParamPoly:
        """Coefficient of q^power for a rational power."""
        return self.coefficient(to_scaled(power, self.denominator))

    def items(self) -> Iterator[Tuple[int, ParamPoly]]:
        for exp in sorted(self._coeffs):
            yield exp, ParamPoly.wrap(self._coeffs[exp], self.denominator)

    def raw_items(self) -> Iterable[Tuple[int, Terms]]:
        """Kernel access to the stored term dicts. Callers must not mutate them."""
        return self._coeffs.items()

    def to_list(self, order: int) -> List[ParamPoly]:
        """Coefficients of q^0 ... q^order (whole powers)."""
        return [self.coefficient(k * self.denominator) for k in range(order + 1)]

    def has_fractional_powers(self) -> bool:
        return any(exp % self.denominator for exp in self._coeffs)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Optional['QSeries']:
        if isinstance(other, QSeries):
            if other.denominator != self.denominator:
                raise ConfigurationError(
                    f"Denominator mismatch: {self.denominator} vs {other.denominator}"
                )
            return other
        if isinstance(other, int):
            return QSeries.constant(other, None, self.denominator)
        if isinstance(other, ParamPoly):
            return QSeries({0: other}, None, self.denominator)
        if isinstance(other, ParamMono):
            return QSeries({0: {other.key: other.coeff}}, None, self.denominator)
        if isinstance(other, Monomial):
            return QSeries.monomial(other, None, self.denominator)
        return None

    def _combine(self, other: 'QSeries', factor: int) -> 'QSeries':
        ncut = _min_cut(self.ncut, other.ncut)
        table: Dict[int, Terms] = {}
        for exp, terms in self._coeffs.items():
            if ncut is None or exp <= ncut:
                table[exp] = dict(terms)
        for exp, terms in other._coeffs.items():
            if ncut is not None and exp > ncut:
                continue
            target = table.setdefault(exp, {})
            add_into(target, terms, factor)
        return QSeries._wrap(_pruned_table(table), ncut, self.denominator)

    def __add__(self, other) -> 'QSeries':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other) -> 'QSeries':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other) -> 'QSeries':
        return (-self) + other

    def __neg__(self) -> 'QSeries':
        return self.scale(-1)

    def scale(self, factor: int) -> 'QSeries':
        if factor == 0:
            return QSeries.zero(self.ncut, self.denominator)
        table = {
            exp: {key: c * factor for key, c in terms.items()}
            for exp, terms in self._coeffs.items()
        }
        return QSeries._wrap(table, self.ncut, self.denominator)

    def __mul__(self, other) -> 'QSeries':
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, Monomial):
            return self.mul_monomial(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _convolve(self, other)

    __rmul__ = __mul__

    def mul_monomial(self, mono: Monomial) -> 'QSeries':
        """Multiply by c * q^a * x^b * y^c; exact, the truncation order shifts with q^a."""
        coeff, qexp, xexp, yexp = mono.scaled(self.denominator)
        if coeff == 0:
            return QSeries.zero(None if self.ncut is None else self.ncut + qexp, self.denominator)
        return self.shift(qexp)._map_terms(coeff, xexp, yexp)

    def divide_monomial(self, mono: Monomial) -> 'QSeries':
        """
        Exact division by a monomial.

        Raises:
            ExactnessError: If a coefficient is not divisible by the monomial's coefficient
        """
        coeff, qexp, xexp, yexp = mono.scaled(self.denominator)
        divisor = ParamMono(coeff, xexp, yexp)
        table = {
            exp: dict(ParamPoly.wrap(terms, self.denominator).div_exact(divisor).raw)
            for exp, terms in self._coeffs.items()
        }
        return QSeries._wrap(table, self.ncut, self.denominator).shift(-qexp)

    def _map_terms(self, coeff: int, xexp: int, yexp: int) -> 'QSeries':
        if coeff == 1 and not xexp and not yexp:
            return self
        table = {
            exp: {(kx + xexp, ky + yexp): c * coeff for (kx, ky), c in terms.items()}
            for exp, terms in self._coeffs.items()
        }
        return QSeries._wrap(table, self.ncut, self.denominator)

    def div_exact(self, divisor: Union[int, ParamMono]) -> 'QSeries':
        """
        Coefficient-wise exact division.

        Raises:
            ParityError: If an integer divisor leaves a remainder
            ExactnessError: If a monomial divisor leaves a remainder
        """
        table = {
            exp: dict(ParamPoly.wrap(terms, self.denominator).div_exact(divisor).raw)
            for exp, terms in self._coeffs.items()
        }
        return QSeries._wrap(table, self.ncut, self.denominator)

    def shift(self, exp: ScaledExp) -> 'QSeries':
        """Multiply by q^(exp/D)."""
        if not exp:
            return self
        table = {e + exp: terms for e, terms in self._coeffs.items()}
        ncut = None if self.ncut is None else self.ncut + exp
        return QSeries._wrap(table, ncut, self.denominator)

    def dilate(self, factor: int) -> 'QSeries':
        """Substitute q -> q^factor."""
        if factor < 1:
            raise ConfigurationError(f"dilation factor must be positive, got {factor}")
        table = {e * factor: terms for e, terms in self._coeffs.items()}
        ncut = None if self.ncut is None else self.ncut * factor
        return QSeries._wrap(table, ncut, self.denominator)

    def truncate(self, ncut: int) -> 'QSeries':
        """Drop every term above ``ncut``; never raises the truncation order."""
        new_cut = ncut if self.ncut is None else min(ncut, self.ncut)
        table = {e: terms for e, terms in self._coeffs.items() if e <= new_cut}
        return QSeries._wrap(table, new_cut, self.denominator)

    def invert(self, ncut: Optional[int] = None) -> 'QSeries':
        """
        Multiplicative inverse.

        The least-exponent coefficient must be a unit monomial +-x^a y^b. For a
        truncated input with least exponent lo the inverse is complete to
        ``ncut - 2*lo``; an exact input needs an explicit ``ncut`` unless it is a
        single monomial.

        Args:
            ncut: Truncation order of the result (required for exact multi-term inputs)

        Returns:
            The inverse series

        Raises:
            InversionError: If the series is zero or its lowest coefficient is not a unit monomial
        """
        if not self._coeffs:
            raise InversionError("cannot invert a series that is zero up to its truncation order")
        lo = min(self._coeffs)
        lead = ParamPoly.wrap(self._coeffs[lo], self.denominator).as_monomial()
        if lead is None or not lead.is_unit():
            raise InversionError(
                f"lowest coefficient {ParamPoly.wrap(self._coeffs[lo], self.denominator)} "
                f"at q^{format_exponent(lo, self.denominator)} is not a unit monomial"
            )

        if self.ncut is None:
            if ncut is None:
                if len(self._coeffs) > 1:
                    raise ConfigurationError("inverting an exact polynomial needs a truncation order")
                return QSeries._wrap(
                    {-lo: {(-lead.xexp, -lead.yexp): lead.coeff}}, None, self.denominator
                )
            target = ncut
        else:
            target = self.ncut - 2 * lo if ncut is None else min(ncut, self.ncut - 2 * lo)

        # u = self / (lead * q^lo) = 1 + higher terms; invert u to target + lo.
        inv_x, inv_y, sign = -lead.xexp, -lead.yexp, lead.coeff
        u: Dict[int, Terms] = {}
        for exp, terms in self._coeffs.items():
            if exp == lo:
                continue
            u[exp - lo] = {
                (kx + inv_x, ky + inv_y): c * sign for (kx, ky), c in terms.items()
            }
        u_keys = sorted(u)
        limit = target + lo
        v: Dict[int, Terms] = {0: {(0, 0): 1}} if limit >= 0 else {}
        for exp in range(1, limit + 1):
            acc: Terms = {}
            for k in u_keys:
                if k > exp:
                    break
                prev = v.get(exp - k)
                if prev:
                    mul_into(acc, u[k], prev)
            acc = prune(acc)
            if acc:
                v[exp] = {key: -c for key, c in acc.items()}

        table = {
            exp - lo: {(kx + inv_x, ky + inv_y): c * sign for (kx, ky), c in terms.items()}
            for exp, terms in v.items()
        }
        return QSeries._wrap(table, target, self.denominator)

    # -- comparison and output --------------------------------------------

    def first_mismatch(self, other: 'QSeries') -> Optional[Tuple[int, ParamPoly, ParamPoly]]:
        """
        First exponent (up to the common truncation order) where the series differ.

        Returns:
            (scaled exponent, own coefficient, other coefficient), or None if they agree
        """
        other = self._coerce(other)
        ncut = _min_cut(self.ncut, other.ncut)
        exps = sorted(set(self._coeffs) | set(other._coeffs))
        for exp in exps:
            if ncut is not None and exp > ncut:
                break
            mine = self._coeffs.get(exp, {})
            theirs = other._coeffs.get(exp, {})
            if mine != theirs:
                return (
                    exp,
                    ParamPoly(mine, self.denominator),
                    ParamPoly(theirs, self.denominator),
                )
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, (QSeries, int, ParamPoly, Monomial)):
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None

    def _format_term(self, exp: int, terms: Terms) -> Tuple[str, str]:
        poly = ParamPoly.wrap(terms, self.denominator)
        power = ''
        if exp == self.denominator:
            power = 'q'
        elif exp:
            power = f"q^{format_exponent(exp, self.denominator)}"
        mono = poly.as_monomial()
        if mono is not None and mono.key == (0, 0):
            sign = '-' if mono.coeff < 0 else '+'
            mag = abs(mono.coeff)
            if not power:
                return sign, str(mag)
            return sign, power if mag == 1 else f"{mag}*{power}"
        body = str(poly)
        if mono is not None:
            sign = '-' if mono.coeff < 0 else '+'
            body = str(-poly) if mono.coeff < 0 else body
            return sign, f"{body}*{power}" if power else body
        return '+', f"({body})*{power}" if power else f"({body})"

    def __str__(self) -> str:
        parts = [self._format_term(exp, self._coeffs[exp]) for exp in sorted(self._coeffs)]
        if self.ncut is not None:
            parts.append(('+', f"O(q^{format_exponent(self.ncut + 1, self.denominator)})"))
        if not parts:
            return '0'
        first_sign, first_text = parts[0]
        head = ('-' if first_sign == '-' else '') + first_text
        return head + ''.join(f" {s} {t}" for s, t in parts[1:])

    def __repr__(self) -> str:
        return f"QSeries({self})"

    def to_json(self) -> list:
        """Serialize as [[exponent_num, terms], ...] with terms as ParamPoly.to_json_terms."""
        return [[exp, poly.to_json_terms()] for exp, poly in self.items()]


def _pruned_table(table: Dict[int, Terms]) -> Dict[int, Terms]:
    out = {}
    for exp, terms in table.items():
        terms = prune(terms)
        if terms:
            out[exp] = terms
    return out


def _product_cut(a: QSeries, b: QSeries) -> Optional[int]:
    cuts = []
    if a.ncut is not None:
        cuts.append(a.ncut + b.lo)
    if b.ncut is not None:
        cuts.append(b.ncut + a.lo)
    return min(cuts) if cuts else None


def _convolve(a: QSeries, b: QSeries) -> QSeries:
    denominator = a.denominator
    if (a.ncut is None and a.is_zero()) or (b.ncut is None and b.is_zero()):
        return QSeries.zero(None, denominator)
    ncut = _product_cut(a, b)
    b_keys = sorted(b._coeffs)
    acc: Dict[int, Terms] = {}
    for ea in sorted(a._coeffs):
        ta = a._coeffs[ea]
        limit = None if ncut is None else ncut - ea
        for eb in b_keys:
            if limit is not None and eb > limit:
                break
            mul_into(acc.setdefault(ea + eb, {}), ta, b._coeffs[eb])
    return QSeries._wrap(_pruned_table(acc), ncut, denominator)


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def qs_invert(a: QSeries, ncut: Optional[int] = None) -> QSeries:
    return a.invert(ncut)


# -- Pochhammer products ---------------------------------------------------


@lru_cache(maxsize=8192)
def _poch_cached(factor: FactorSpec, ncut: int, denominator: int) -> QSeries:
    coeff, qexp, xexp, yexp = factor.arg.scaled(denominator)
    step = to_scaled(factor.step, denominator)
    if coeff == 0 or factor.count == 0:
        return QSeries.one(ncut, denominator)

    cap = ncut + to_scaled(factor.negative_order_sum(), denominator)
    product: Dict[int, Terms] = {0: {(0, 0): 1}}
    k = 0
    while factor.count is None or k < factor.count:
        order = qexp + step * k
        if order > cap:
            break
        updated = {exp: dict(terms) for exp, terms in product.items()}
        for exp, terms in product.items():
            if exp + order > cap:
                continue
            target = updated.setdefault(exp + order, {})
            for (kx, ky), c in terms.items():
                key = (kx + xexp, ky + yexp)
                target[key] = target.get(key, 0) - coeff * c
        product = _pruned_table(updated)
        k += 1
    table = {exp: terms for exp, terms in product.items() if exp <= ncut}
    return QSeries._wrap(table, ncut, denominator)


@traced
def poch(factor: FactorSpec, ncut: int, denominator: int = DEFAULT_DENOMINATOR) -> QSeries:
    """
    Expand (t; q^s)_n truncated at ``ncut``.

    For an infinite product exactly the factors of q-order <= ncut + B are used,
    B being the sum of |negative factor orders|; intermediate products are
    truncated at the same bound.

    Args:
        factor: The Pochhammer symbol
        ncut: Truncation order in 1/D units
        denominator: Global exponent denominator D

    Returns:
        The expansion, complete up to ``ncut``
    """
    return _poch_cached(factor, ncut, denominator)


def _poch_list(factors: Tuple[FactorSpec, ...], ncut: int, denominator: int) -> QSeries:
    cap = ncut + to_scaled(-lowest_order(factors), denominator)
    result = QSeries.one(cap, denominator)
    for factor in factors:
        result = result * _poch_cached(factor, cap, denominator)
    return result.truncate(ncut)


@traced
def poch_list(
    factors: Sequence[FactorSpec], ncut: int, denominator: int = DEFAULT_DENOMINATOR
) -> QSeries:
    """Product of Pochhammer symbols, complete up to ``ncut``."""
    return _poch_list(tuple(factors), ncut, denominator)


@lru_cache(maxsize=4096)
def _inverse_cached(factors: Tuple[FactorSpec, ...], cap: int, denominator: int) -> QSeries:
    return _poch_list(factors, cap, denominator).invert()


def _product_quotient(
    numerators: Tuple[FactorSpec, ...],
    denominators: Tuple[FactorSpec, ...],
    ncut: int,
    denominator: int,
) -> QSeries:
    if not denominators:
        return _poch_list(numerators, ncut, denominator)
    bnum = to_scaled(-lowest_order(numerators), denominator)
    bden = to_scaled(-lowest_order(denominators), denominator)
    den_cap = max(ncut + bnum - 2 * bden, -bden)
    inverse = _inverse_cached(denominators, den_cap, denominator)
    if not numerators:
        return inverse.truncate(ncut)
    num = _poch_list(numerators, ncut - bden, denominator)
    return (num * inverse).truncate(ncut)


@traced
def product_quotient(
    numerators: Sequence[FactorSpec],
    denominators: Sequence[FactorSpec],
    ncut: int,
    denominator: int = DEFAULT_DENOMINATOR,
) -> QSeries:
    """
    Quotient of two Pochhammer products, complete up to ``ncut``.

    Operand precisions are chosen from the negative-order bounds of both sides
    so that Laurent factors (e.g. (q^-2; q)_inf) need no special handling.

    Raises:
        InversionError: If the denominator product has a non-unit lowest term
    """
    return _product_quotient(tuple(numerators), tuple(denominators), ncut, denominator)


def cache_stats() -> Dict[str, int]:
    stats = {}
    for name, fn in (('poch', _poch_cached), ('inverse', _inverse_cached)):
        info = fn.cache_info()
        stats[f"{name}_hits"] = info.hits
        stats[f"{name}_misses"] = info.misses
    return stats


# -- classical expansions --------------------------------------------------


def convex_indices(order: Callable[[int], int], start: int, step: int, ncut: int) -> Iterator[int]:
    """
    Indices k = start, start+step, ... whose order(k) <= ncut.

    ``order`` must be convex along the walk; enumeration stops once the order is
    above ``ncut`` and no longer decreasing.
    """
    k = start
    while True:
        value = order(k)
        if value <= ncut:
            yield k
        elif order(k + step) >= value:
            return
        k += step


def accumulate(
    acc: Dict[int, Terms], series: QSeries, qshift: int, coeff: int = 1, xexp: int = 0, yexp: int = 0
) -> None:
    """Kernel helper: acc += coeff * x^xexp * y^yexp * q^qshift * series."""
    for exp, terms in series.raw_items():
        target = acc.setdefault(exp + qshift, {})
        for (kx, ky), c in terms.items():
            key = (kx + xexp, ky + yexp)
            target[key] = target.get(key, 0) + coeff * c


@traced
def euler_a(z: Monomial, ncut: int, denominator: int = DEFAULT_DENOMINATOR) -> QSeries:
    """Sum side of sum_k q^C(k,2) z^k / (q;q)_k = (-z;q)_inf."""
    zc, zq, zx, zy = z.scaled(denominator)
    if zc == 0:
        return QSeries.one(ncut, denominator)

    def order(k: int) -> int:
        return denominator * k * (k - 1) // 2 + k * zq

    acc: Dict[int, Terms] = {}
    for k in convex_indices(order, 0, 1, ncut):
        o = order(k)
        inverse = _product_quotient((), (FactorSpec(Q, 1, k),), ncut - o, denominator)
        accumulate(acc, inverse, o, zc ** k, k * zx, k * zy)
    return QSeries._wrap(_pruned_table(acc), ncut, denominator)


@traced
def euler_b(z: Monomial, ncut: int, denominator: int = DEFAULT_DENOMINATOR) -> QSeries:
    """
    Sum side of sum_k z^k / (q;q)_k = 1/(z;q)_inf.

    Raises:
        GradingError: If z is nonzero with q-order <= 0
    """
    zc, zq, zx, zy = z.scaled(denominator)
    if zc == 0:
        return QSeries.one(ncut, denominator)
    if zq <= 0:
        raise GradingError(f"sum of z^k/(q;q)_k is not q-graded for z = {z}")

    acc: Dict[int, Terms] = {}
    k = 0
    while k * zq <= ncut:
        o = k * zq
        inverse = _product_quotient((), (FactorSpec(Q, 1, k),), ncut - o, denominator)
        accumulate(acc, inverse, o, zc ** k, k * zx, k * zy)
        k += 1
    return QSeries._wrap(_pruned_table(acc), ncut, denominator)


class JacobiForm(Enum):
    SUM = 'sum'
    PRODUCT = 'product'


@traced
def jacobi_triple(
    w: Monomial,
    ncut: int,
    denominator: int = DEFAULT_DENOMINATOR,
    form: JacobiForm = JacobiForm.SUM,
) -> QSeries:
    """
    Either side of sum_{k in Z} q^C(k,2) w^k = (q, -w, -q/w; q)_inf.

    Raises:
        ConfigurationError: If w's coefficient is not +-1
    """
    wc, wq, wx, wy = w.scaled(denominator)
    if wc not in (1, -1):
        raise ConfigurationError(f"Jacobi argument must have a unit coefficient, got {w}")

    if form is JacobiForm.PRODUCT:
        factors = (FactorSpec(Q), FactorSpec(-w), FactorSpec(-Q / w))
        return _poch_list(factors, ncut, denominator)

    def order(k: int) -> int:
        return denominator * (k * (k - 1) // 2) + k * wq

    acc: Dict[int, Terms] = {}
    indices = list(convex_indices(order, 0, 1, ncut)) + list(convex_indices(order, -1, -1, ncut))
    for k in indices:
        key = (k * wx, k * wy)
        target = acc.setdefault(order(k), {})
        target[key] = target.get(key, 0) + _unit_power(wc, k)
    return QSeries._wrap(_pruned_table(acc), ncut, denominator)


# -- specialization environments --------------------------------------------


@dataclass(frozen=True)
class Environment:
    """
    Assignment of each formal parameter to SYMBOLIC (None) or a monomial c*q^e.

    Builders resolve every parameter mention through the environment before
    constructing FactorSpecs and summands.
    """

    bindings: Tuple[Tuple[str, Optional[Monomial]], ...] = ()

    @classmethod
    def symbolic(cls) -> 'Environment':
        return cls()

    def get(self, name: str) -> Optional[Monomial]:
        for key, value in self.bindings:
            if key == name:
                return value
        return None

    def is_symbolic(self, name: str) -> bool:
        return self.get(name) is None

    def resolve(self, mono: Monomial) -> Monomial:
        """
        Substitute the bound parameters of ``mono``.

        Raises:
            ConfigurationError: If the substitution leaves the monomial ring
                (negative power of 0, fractional power of a non-unit coefficient)
        """
        coeff, q = mono.coeff, mono.q
        exps = {'x': mono.x, 'y': mono.y}
        for name in PARAMETERS:
            exp = exps[name]
            value = self.get(name)
            if value is None or exp == 0:
                continue
            if value.coeff == 0:
                if exp < 0:
                    raise ConfigurationError(f"{name}={value} makes {mono} infinite")
                return Monomial(0)
            if exp.denominator != 1:
                if value.coeff != 1:
                    raise ConfigurationError(
                        f"fractional power {name}^{_format_fraction(exp)} of {value} is not a monomial"
                    )
                factor = 1
            else:
                try:
                    factor = _unit_power(value.coeff, int(exp))
                except ExactnessError as e:
                    raise ConfigurationError(f"{name}={value} makes {mono} non-integral") from e
            coeff *= factor
            q += value.q * exp
            exps[name] = Fraction(0)
        return Monomial(coeff, q, exps['x'], exps['y'])

    def resolve_factor(self, factor: FactorSpec) -> FactorSpec:
        return FactorSpec(self.resolve(factor.arg), factor.step, factor.count)

    def resolve_all(self, factors: Iterable[FactorSpec]) -> Tuple[FactorSpec, ...]:
        return tuple(self.resolve_factor(f) for f in factors)

    def as_mapping(self) -> Dict[str, Optional[Monomial]]:
        return {name: self.get(name) for name in PARAMETERS}

    def describe(self) -> str:
        bound = [(name, value) for name, value in self.bindings if value is not None]
        if not bound:
            return 'symbolic'
        return ', '.join(f"{name}={value}" for name, value in bound)

    def __str__(self) -> str:
        return self.describe()


def specialize_env(
    bindings: Optional[Mapping[str, Optional[Monomial]]] = None,
    denominator: int = DEFAULT_DENOMINATOR,
) -> Environment:
    """
    Build a specialization environment.

    Args:
        bindings: Parameter name -> None (symbolic) or a monomial in q only
        denominator: Global exponent denominator D the bindings must fit

    Returns:
        The environment

    Raises:
        ConfigurationError: For unknown parameters, parameter-to-parameter
            substitutions or exponents not representable with D
    """
    entries = []
    for name, value in sorted((bindings or {}).items()):
        if name not in PARAMETERS:
            raise ConfigurationError(f"Unknown parameter {name!r}; expected one of {PARAMETERS}")
        if value is not None:
            if value.has_params:
                raise ConfigurationError(
                    f"{name}={value}: parameter-to-parameter substitutions are not supported"
                )
            to_scaled(value.q, denominator)
        entries.append((name, value))
    return Environment(tuple(entries))
