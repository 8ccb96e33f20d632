"""Text format for polynomials and polynomial maps.

Grammar (ASCII only, whitespace ignored)::

    map     := poly ((";" | newline) poly)*
    poly    := ["+" | "-"] term (("+" | "-") term)*
    term    := factor (["*"] factor)*
    factor  := atom ["^" INT]
    atom    := INT ["/" INT] | VAR | "(" poly ")"

Variables are single letters: ``x y z`` for space maps, ``u v`` for plane
maps.  Output is canonical: graded-lex order with x > y > z (u > v),
explicit ``*``, and coefficients of 1 omitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import UsageError
from .poly import VARIABLES, Poly

# Guards against inputs such as "(x+y)^99999" that would expand forever.
MAX_EXPONENT = 10_000
MAX_EXPANDED_DEGREE = 200
MAX_DIGITS = 1_000
MAX_COEFF_BITS = 100_000


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")


class ParseError(UsageError):
    def __init__(self, message: str, span: SourceSpan, text: str = "") -> None:
        super().__init__(f"{message} at {span.start}..{span.end}")
        self.message = message
        self.span = span
        self.text = text

    def shifted(self, offset: int, text: str) -> "ParseError":
        span = SourceSpan(self.span.start + offset, self.span.end + offset)
        return ParseError(self.message, span, text)


_PUNCT = set("+-*/^()")


def _tokenize(text: str, variables: tuple) -> list:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
        elif ch.isascii() and ch.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            if j - i > MAX_DIGITS:
                raise ParseError("integer literal too long", SourceSpan(i, j), text)
            tokens.append(("int", int(text[i:j]), SourceSpan(i, j)))
            i = j
        elif ch.isascii() and ch.isalpha():
            if ch not in variables:
                raise ParseError(f"unknown variable {ch!r} (expected one of {', '.join(variables)})",
                                 SourceSpan(i, i + 1), text)
            tokens.append(("var", variables.index(ch), SourceSpan(i, i + 1)))
            i += 1
        elif ch in _PUNCT:
            tokens.append((ch, ch, SourceSpan(i, i + 1)))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", SourceSpan(i, i + 1), text)
    tokens.append(("end", None, SourceSpan(n, n)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple) -> None:
        self.text = text
        self.arity = len(variables)
        self.tokens = _tokenize(text, variables)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok=None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok[2], self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        p = self.poly()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def poly(self) -> Poly:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            acc = acc + self.term().scale(sign)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("int", "var", "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("expected a positive integer exponent", tok)
            n = tok[1]
            if n < 1:
                raise self.error("exponent must be positive", tok)
            if n > MAX_EXPONENT:
                raise self.error(f"exponent {n} exceeds limit {MAX_EXPONENT}", tok)
            if len(base) > 1 and base.total_degree() * n > MAX_EXPANDED_DEGREE:
                raise self.error(f"expanded degree exceeds limit {MAX_EXPANDED_DEGREE}", tok)
            bits = max(max(c.numerator.bit_length(), c.denominator.bit_length())
                       for c in base.terms.values()) if not base.is_zero() else 0
            if bits * n > MAX_COEFF_BITS:
                raise self.error(f"coefficient size exceeds limit {MAX_COEFF_BITS} bits", tok)
            base = base ** n
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind = tok[0]
        if kind == "int":
            value = Fraction(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den = self.take()
                if den[0] != "int":
                    raise self.error("expected an integer denominator", den)
                if den[1] == 0:
                    raise self.error("zero denominator", den)
                value = value / den[1]
            return Poly.const(value, self.arity)
        if kind == "var":
            return Poly.var(tok[1], self.arity)
        if kind == "(":
            inner = self.poly()
            close = self.take()
            if close[0] != ")":
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {tok[1]!r}", tok)


def _as_text(text: Union[str, bytes]) -> str:
    if isinstance(text, (bytes, bytearray)):
        try:
            return bytes(text).decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not ASCII", SourceSpan(exc.start, exc.end)) from None
    return text


def parse_poly(text: Union[str, bytes], variables: Union[int, tuple, str] = 3) -> Poly:
    """Parse one polynomial.  ``variables`` is an arity or a variable tuple."""
    text = _as_text(text)
    if isinstance(variables, int):
        variables = VARIABLES[variables]
    variables = tuple(variables)
    if variables not in VARIABLES.values():
        raise UsageError(f"variable set must be {{x,y,z}} or {{u,v}}, got {variables}")
    return _Parser(text, variables).parse()


def _split_components(text: str) -> list:
    parts, start = [], 0
    for i, ch in enumerate(text):
        if ch in ";\n":
            parts.append((start, text[start:i]))
            start = i + 1
    parts.append((start, text[start:]))
    # a final newline in a file does not start a new component
    while parts and not parts[-1][1].strip() and len(parts) > 1:
        parts.pop()
    return parts


def parse_map(text: Union[str, bytes]):
    """Parse ``"f; g; h"`` (space map) or ``"f; g"`` (plane map)."""
    from .endo import PolyMap

    text = _as_text(text)
    parts = _split_components(text)
    if len(parts) not in (2, 3):
        raise ParseError(f"a map needs 2 or 3 components, got {len(parts)}",
                         SourceSpan(0, len(text)), text)
    variables = VARIABLES[len(parts)]
    images = []
    for offset, chunk in parts:
        try:
            images.append(_Parser(chunk, variables).parse())
        except ParseError as exc:
            raise exc.shifted(offset, text) from None
    return PolyMap(tuple(images))


def format_rational(c: Fraction) -> str:
    return str(Fraction(c))


def _sort_key(item):
    m = item[0]
    return (sum(m), m)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    names = p.variables
    pieces = []
    for i, (m, c) in enumerate(sorted(p.terms.items(), key=_sort_key, reverse=True)):
        mag = abs(c)
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = format_rational(mag) + "*" + "*".join(factors)
        if i == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


def format(obj) -> str:  # noqa: A001 - public name fixed by the text format API
    """Canonical text for a :class:`Poly` or a :class:`PolyMap`."""
    from .endo import PolyMap

    if isinstance(obj, Poly):
        return format_poly(obj)
    if isinstance(obj, PolyMap):
        return "; ".join(format_poly(p) for p in obj.images)
    raise UsageError(f"cannot format {type(obj).__name__}")
