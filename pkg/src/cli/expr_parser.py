"""
Parser for compact Pochhammer-product expressions such as ``1/(q,q^4;q^5)_inf``.

Grammar::

    expr    := product ("/" product)?
    product := factor ("*" factor)*
    factor  := "(" mono ("," mono)* ";" mono ")" "_" ("inf" | integer) | mono
    mono    := ["+" | "-"] atom ("*" atom)*
    atom    := ("q" | "x" | "y") ("^" frac)? | integer
    frac    := ["-"] integer ("/" integer)?

Whitespace is ignored. Error offsets are byte offsets into the original text.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from src.components.errors import ConfigurationError, ExpressionSyntaxError
from src.components.exactalg import DEFAULT_DENOMINATOR, to_scaled
from src.components.qseries import (
    INFINITE,
    ONE,
    Environment,
    FactorSpec,
    Monomial,
    QSeries,
    product_quotient,
)

logger = logging.getLogger(__name__)


class Token(NamedTuple):
    kind: str
    text: str
    offset: int


_PUNCT = {
    '(': 'LPAREN',
    ')': 'RPAREN',
    ',': 'COMMA',
    ';': 'SEMI',
    '_': 'UNDERSCORE',
    '^': 'CARET',
    '/': 'SLASH',
    '*': 'STAR',
    '+': 'PLUS',
    '-': 'MINUS',
}


def tokenize(text: str) -> List[Token]:
    """
    Split ``text`` into tokens.

    Raises:
        ExpressionSyntaxError: On a character outside the grammar
    """
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        offset = len(text[:i].encode('utf-8'))
        if ch.isspace():
            i += 1
        elif ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, offset))
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token('INT', text[i:j], offset))
            i = j
        elif text.startswith('inf', i):
            tokens.append(Token('INF', 'inf', offset))
            i += 3
        elif ch in 'qxy':
            tokens.append(Token('NAME', ch, offset))
            i += 1
        else:
            raise ExpressionSyntaxError(f"unexpected character {ch!r}", offset)
    tokens.append(Token('END', '', len(text.encode('utf-8'))))
    return tokens


@dataclass(frozen=True)
class PochAst:
    """(a_1,...,a_k; base)_count with count None for inf."""

    args: Tuple[Monomial, ...]
    base: Monomial
    count: Optional[int] = INFINITE


Factor = Union[PochAst, Monomial]


@dataclass(frozen=True)
class ExprAst:
    """A ratio of two factor lists."""

    numerator: Tuple[Factor, ...]
    denominator: Tuple[Factor, ...] = ()


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def fail(self, expected: Sequence[str]):
        token = self.current
        what = 'end of input' if token.kind == 'END' else repr(token.text)
        raise ExpressionSyntaxError(f"unexpected {what}", token.offset, expected)

    def expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            self.fail([kind])
        return self.advance()

    def expr(self) -> ExprAst:
        numerator = self.product()
        denominator: Tuple[Factor, ...] = ()
        if self.current.kind == 'SLASH':
            self.advance()
            denominator = self.product()
        if self.current.kind != 'END':
            self.fail(['END', 'SLASH', 'STAR'] if not denominator else ['END', 'STAR'])
        return ExprAst(numerator, denominator)

    def product(self) -> Tuple[Factor, ...]:
        factors = [self.factor()]
        while self.current.kind == 'STAR':
            self.advance()
            factors.append(self.factor())
        return tuple(factors)

    def factor(self) -> Factor:
        if self.current.kind != 'LPAREN':
            return self.mono()
        self.advance()
        args = [self.mono()]
        while self.current.kind == 'COMMA':
            self.advance()
            args.append(self.mono())
        if self.current.kind != 'SEMI':
            self.fail(['COMMA', 'SEMI', 'STAR', 'CARET'])
        self.advance()
        base = self.mono()
        if self.current.kind != 'RPAREN':
            self.fail(['RPAREN', 'STAR', 'CARET'])
        self.advance()
        self.expect('UNDERSCORE')
        if self.current.kind == 'INF':
            self.advance()
            count = INFINITE
        elif self.current.kind == 'INT':
            count = int(self.advance().text)
        else:
            self.fail(['INF', 'INT'])
        return PochAst(tuple(args), base, count)

    def mono(self) -> Monomial:
        sign = 1
        if self.current.kind in ('PLUS', 'MINUS'):
            sign = -1 if self.advance().kind == 'MINUS' else 1
        value = self.atom()
        # '*' continues the monomial only when an atom follows
        while self.current.kind == 'STAR' and self.peek().kind in ('NAME', 'INT'):
            self.advance()
            value = value * self.atom()
        return value * sign

    def atom(self) -> Monomial:
        token = self.current
        if token.kind == 'INT':
            self.advance()
            return Monomial(int(token.text))
        if token.kind != 'NAME':
            self.fail(['INT', 'NAME', 'PLUS', 'MINUS'])
        self.advance()
        power = Fraction(1)
        if self.current.kind == 'CARET':
            self.advance()
            power = self.frac()
        elif self.current.kind in ('INT', 'NAME', 'LPAREN', 'INF'):
            self.fail(['CARET', 'STAR', 'COMMA', 'SEMI', 'RPAREN', 'SLASH', 'END'])
        return Monomial(1, **{token.text: power})

    def frac(self) -> Fraction:
        sign = 1
        if self.current.kind == 'MINUS':
            self.advance()
            sign = -1
        numerator = int(self.expect('INT').text)
        denominator = 1
        if self.current.kind == 'SLASH' and self.peek().kind == 'INT':
            self.advance()
            token = self.advance()
            denominator = int(token.text)
            if denominator == 0:
                raise ExpressionSyntaxError("zero denominator in exponent", token.offset)
        return Fraction(sign * numerator, denominator)


def parse_expr(text: str) -> ExprAst:
    """
    Parse a product expression.

    Args:
        text: Expression text, e.g. "(q,q^4;q^5)_inf"

    Returns:
        The parsed ratio of factor lists

    Raises:
        ExpressionSyntaxError: With the byte offset and the expected token kinds
    """
    return _Parser(text).expr()


def parse_monomial(text: str) -> Monomial:
    """Parse a single monomial such as ``-q^1/2`` (used for ``--set p=mono``)."""
    parser = _Parser(text)
    value = parser.mono()
    if parser.current.kind != 'END':
        parser.fail(['END', 'STAR', 'CARET'])
    return value


def _format_factor(factor: Factor) -> str:
    if isinstance(factor, Monomial):
        return str(factor)
    count = 'inf' if factor.count is None else str(factor.count)
    args = ','.join(str(a) for a in factor.args)
    return f"({args};{factor.base})_{count}"


def format_expr(ast: ExprAst) -> str:
    """Canonical text of an expression; parse_expr(format_expr(a)) == a."""
    text = '*'.join(_format_factor(f) for f in ast.numerator) or '1'
    if ast.denominator:
        text += '/' + '*'.join(_format_factor(f) for f in ast.denominator)
    return text


def _split(
    factors: Sequence[Factor], env: Environment
) -> Tuple[List[FactorSpec], Monomial]:
    specs: List[FactorSpec] = []
    scalar = ONE
    for factor in factors:
        if isinstance(factor, Monomial):
            scalar = scalar * env.resolve(factor)
            continue
        base = factor.base
        if base.coeff != 1 or base.has_params or base.q <= 0:
            raise ConfigurationError(f"Pochhammer base must be a positive power of q, got {base}")
        specs.extend(FactorSpec(env.resolve(a), base.q, factor.count) for a in factor.args)
    return specs, scalar


def evaluate_expr(
    ast: ExprAst,
    order: int,
    denominator: int = DEFAULT_DENOMINATOR,
    env: Optional[Environment] = None,
) -> QSeries:
    """
    Expand an expression to ``order`` whole powers of q.

    Raises:
        InversionError: If the denominator product's lowest term is not a unit monomial
        ExactnessError: If a scalar denominator does not divide the numerator scalar
    """
    if order < 0:
        raise ConfigurationError(f"order must be nonnegative, got {order}")
    env = env or Environment.symbolic()
    nums, top = _split(ast.numerator, env)
    dens, bottom = _split(ast.denominator, env)
    scalar = top / bottom
    ncut = order * denominator
    shift = to_scaled(scalar.q, denominator)
    series = product_quotient(nums, dens, ncut - shift, denominator)
    logger.debug(f"expand: {len(nums)} numerator and {len(dens)} denominator factors")
    return series.mul_monomial(scalar).truncate(ncut)
