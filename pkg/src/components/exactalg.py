"""
Exact arithmetic substrate: scaled rational exponents and sparse Laurent
polynomials in the two formal parameters x and y.

Exponents are stored as integers counting units of 1/D, where the denominator D
is fixed for a whole computation. Coefficients are Python integers, so there is
no overflow at any truncation order.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple, Union

from src.components.errors import ConfigurationError, ExactnessError, ParityError

logger = logging.getLogger(__name__)

DEFAULT_DENOMINATOR = 2

# An exponent measured in units of 1/D.
ScaledExp = int

Key = Tuple[int, int]
Terms = Dict[Key, int]


def check_denominator(denominator: int) -> int:
    """Validate a global exponent denominator."""
    if not isinstance(denominator, int) or denominator < 1:
        raise ConfigurationError(f"Denominator must be a positive integer, got {denominator!r}")
    return denominator


def to_scaled(value: Union[int, Fraction, str], denominator: int) -> ScaledExp:
    """
    Convert a rational exponent to units of 1/denominator.

    Args:
        value: Rational exponent (int, Fraction or a string such as "3/2")
        denominator: Global denominator D

    Returns:
        The integer number of 1/D units

    Raises:
        ConfigurationError: If the exponent needs a finer denominator than D
    """
    frac = Fraction(value)
    scaled = frac * denominator
    if scaled.denominator != 1:
        raise ConfigurationError(
            f"Exponent {frac} is not a multiple of 1/{denominator}; "
            f"rerun with a finer denominator"
        )
    return int(scaled)


def from_scaled(value: ScaledExp, denominator: int) -> Fraction:
    return Fraction(value, denominator)


def format_exponent(value: ScaledExp, denominator: int) -> str:
    frac = Fraction(value, denominator)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def _format_power(symbol: str, value: ScaledExp, denominator: int) -> str:
    if value == 0:
        return ""
    if value == denominator:
        return symbol
    return f"{symbol}^{format_exponent(value, denominator)}"


@dataclass(frozen=True)
class ParamMono:
    """A single term c * x^(xexp/D) * y^(yexp/D)."""

    coeff: int
    xexp: ScaledExp = 0
    yexp: ScaledExp = 0

    @property
    def key(self) -> Key:
        return (self.xexp, self.yexp)

    def is_unit(self) -> bool:
        return self.coeff in (1, -1)


def add_into(acc: Terms, terms: Terms, factor: int = 1) -> None:
    """Kernel helper: acc += factor * terms (zeros are left for the caller to prune)."""
    for key, coeff in terms.items():
        acc[key] = acc.get(key, 0) + factor * coeff


def mul_into(acc: Terms, a: Terms, b: Terms) -> None:
    """Kernel helper: acc += a * b."""
    if len(a) == 1 and (0, 0) in a:
        add_into(acc, b, a[(0, 0)])
        return
    if len(b) == 1 and (0, 0) in b:
        add_into(acc, a, b[(0, 0)])
        return
    for (ax, ay), ac in a.items():
        for (bx, by), bc in b.items():
            key = (ax + bx, ay + by)
            acc[key] = acc.get(key, 0) + ac * bc


def prune(terms: Terms) -> Terms:
    return {key: coeff for key, coeff in terms.items() if coeff}


class ParamPoly:
    """
    Immutable Laurent polynomial in x and y with integer coefficients.

    Terms are kept in a dict keyed by the exponent pair; zero coefficients are
    never stored, so structural equality is mathematical equality.
    """

    __slots__ = ('_terms', 'denominator', '_hash')

    def __init__(self, terms: Optional[Terms] = None, denominator: int = DEFAULT_DENOMINATOR):
        """
        Initialize the polynomial.

        Args:
            terms: Mapping (xexp, yexp) -> coefficient, exponents in 1/D units
            denominator: Global exponent denominator D
        """
        self._terms: Terms = prune(terms or {})
        self.denominator = check_denominator(denominator)
        self._hash: Optional[int] = None

    @classmethod
    def wrap(cls, terms: Terms, denominator: int) -> 'ParamPoly':
        """Build from an already pruned dict without copying (kernel use only)."""
        poly = cls.__new__(cls)
        poly._terms = terms
        poly.denominator = denominator
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, denominator: int = DEFAULT_DENOMINATOR) -> 'ParamPoly':
        return cls.wrap({}, denominator)

    @classmethod
    def constant(cls, value: int, denominator: int = DEFAULT_DENOMINATOR) -> 'ParamPoly':
        return cls.wrap({(0, 0): value} if value else {}, denominator)

    @classmethod
    def from_monos(
        cls, monos: Iterable[ParamMono], denominator: int = DEFAULT_DENOMINATOR
    ) -> 'ParamPoly':
        acc: Terms = {}
        for mono in monos:
            acc[mono.key] = acc.get(mono.key, 0) + mono.coeff
        return cls(acc, denominator)

    @property
    def raw(self) -> Terms:
        """The underlying term dict. Callers must not mutate it."""
        return self._terms

    @property
    def terms(self) -> Tuple[ParamMono, ...]:
        """Terms in canonical order: ascending x exponent, then ascending y exponent."""
        return tuple(
            ParamMono(self._terms[key], key[0], key[1]) for key in sorted(self._terms)
        )

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0, 0), 0)

    def as_monomial(self) -> Optional[ParamMono]:
        """Return the single term if the polynomial is a monomial, else None."""
        if len(self._terms) != 1:
            return None
        (key, coeff), = self._terms.items()
        return ParamMono(coeff, key[0], key[1])

    def is_unit_monomial(self) -> bool:
        mono = self.as_monomial()
        return mono is not None and mono.is_unit()

    def _check(self, other: 'ParamPoly') -> None:
        if other.denominator != self.denominator:
            raise ConfigurationError(
                f"Denominator mismatch: {self.denominator} vs {other.denominator}"
            )

    def _coerce(self, other) -> Optional['ParamPoly']:
        if isinstance(other, ParamPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return ParamPoly.constant(other, self.denominator)
        if isinstance(other, ParamMono):
            return ParamPoly.from_monos([other], self.denominator)
        return None

    def __add__(self, other) -> 'ParamPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        add_into(acc, other._terms)
        return ParamPoly.wrap(prune(acc), self.denominator)

    __radd__ = __add__

    def __neg__(self) -> 'ParamPoly':
        return ParamPoly.wrap({k: -c for k, c in self._terms.items()}, self.denominator)

    def __sub__(self, other) -> 'ParamPoly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        add_into(acc, other._terms, -1)
        return ParamPoly.wrap(prune(acc), self.denominator)

    def __rsub__(self, other) -> 'ParamPoly':
        return (-self) + other

    def __mul__(self, other) -> 'ParamPoly':
        if isinstance(other, int):
            if other == 0:
                return ParamPoly.zero(self.denominator)
            return ParamPoly.wrap({k: c * other for k, c in self._terms.items()}, self.denominator)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc: Terms = {}
        mul_into(acc, self._terms, other._terms)
        return ParamPoly.wrap(prune(acc), self.denominator)

    __rmul__ = __mul__

    def shift(self, xexp: ScaledExp, yexp: ScaledExp) -> 'ParamPoly':
        """Multiply by x^(xexp/D) y^(yexp/D)."""
        if not xexp and not yexp:
            return self
        return ParamPoly.wrap(
            {(kx + xexp, ky + yexp): c for (kx, ky), c in self._terms.items()},
            self.denominator,
        )

    def div_exact(self, divisor: Union[int, ParamMono]) -> 'ParamPoly':
        """
        Exact division by a nonzero integer or by a single monomial.

        Raises:
            ParityError: If an integer divisor leaves a remainder
            ExactnessError: If a monomial's coefficient does not divide exactly
        """
        if isinstance(divisor, ParamMono):
            if divisor.coeff == 0:
                raise ZeroDivisionError("division by a zero monomial")
            quotient = self._div_coeffs(divisor.coeff, ExactnessError)
            return quotient.shift(-divisor.xexp, -divisor.yexp)
        if divisor == 0:
            raise ZeroDivisionError("division by zero")
        return self._div_coeffs(divisor, ParityError)

    def _div_coeffs(self, divisor: int, error) -> 'ParamPoly':
        out: Terms = {}
        for key, coeff in self._terms.items():
            q, r = divmod(coeff, divisor)
            if r:
                raise error(f"Coefficient {coeff} of {self._format_key(key)} is not divisible by {divisor}")
            out[key] = q
        return ParamPoly.wrap(out, self.denominator)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ({(0, 0): other} if other else {})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.denominator == other.denominator and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.denominator, frozenset(self._terms.items())))
        return self._hash

    def _format_key(self, key: Key) -> str:
        parts = [
            _format_power('x', key[0], self.denominator),
            _format_power('y', key[1], self.denominator),
        ]
        return '*'.join(p for p in parts if p) or '1'

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        out = []
        for mono in self.terms:
            body = self._format_key(mono.key)
            sign = '-' if mono.coeff < 0 else '+'
            mag = abs(mono.coeff)
            if body == '1':
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            out.append((sign, text))
        first_sign, first_text = out[0]
        head = ('-' if first_sign == '-' else '') + first_text
        return head + ''.join(f" {s} {t}" for s, t in out[1:])

    def __repr__(self) -> str:
        return f"ParamPoly({self})"

    def to_json_terms(self) -> list:
        """Serialize as ordered [coeff, xexp_num, yexp_num, denom] lists."""
        return [[m.coeff, m.xexp, m.yexp, self.denominator] for m in self.terms]


def poly_add(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    return a + b


def poly_mul(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    return a * b


def poly_div_exact(a: ParamPoly, d: Union[int, ParamMono]) -> ParamPoly:
    return a.div_exact(d)
