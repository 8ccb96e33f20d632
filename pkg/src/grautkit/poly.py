"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` lives in either the plane ring Q[u, v] (arity 2) or the
space ring Q[x, y, z] (arity 3).  Terms are stored as a map from exponent
tuples to nonzero :class:`fractions.Fraction` coefficients, so equality of
polynomials is plain dict equality.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import InternalError, UsageError

VARIABLES = {2: ("u", "v"), 3: ("x", "y", "z")}

Monomial = tuple  # exponent vector, e.g. (2, 0, 3) for x^2*z^3
Scalar = Union[int, Fraction]

# Re-validate the no-zero-coefficient invariant after every operation.
CHECK_INVARIANTS = os.environ.get("GRAUTKIT_DEBUG", "") not in ("", "0")


def _check_arity(arity: int) -> None:
    if arity not in VARIABLES:
        raise UsageError(f"arity must be 2 or 3, got {arity}")


def monomial(*exponents: int) -> Monomial:
    """Build a validated exponent vector."""
    _check_arity(len(exponents))
    for e in exponents:
        if not isinstance(e, int) or isinstance(e, bool) or e < 0:
            raise UsageError(f"exponents must be nonnegative integers, got {exponents!r}")
    return tuple(exponents)


class _EveryDegree:
    """Marker returned by :func:`gamma_degree` for the zero polynomial."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EVERY_DEGREE"


EVERY_DEGREE = _EveryDegree()


@dataclass(frozen=True)
class WeightVector:
    """Integer degree assigned to each variable."""

    weights: tuple

    def __post_init__(self) -> None:
        _check_arity(len(self.weights))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    @property
    def arity(self) -> int:
        return len(self.weights)

    def degree_of(self, m: Monomial) -> int:
        return sum(e * w for e, w in zip(m, self.weights))


class Poly:
    """Immutable sparse polynomial over Q in 2 or 3 variables."""

    __slots__ = ("_terms", "arity", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | Iterable = (), arity: int | None = None) -> None:
        items = list(terms.items()) if isinstance(terms, Mapping) else list(terms)
        if arity is None:
            if not items:
                raise UsageError("arity is required for an empty polynomial")
            arity = len(items[0][0])
        _check_arity(arity)
        clean: dict[Monomial, Fraction] = {}
        for m, c in items:
            m = tuple(m)
            if len(m) != arity:
                raise UsageError(f"monomial {m} does not have arity {arity}")
            monomial(*m)
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self._terms = clean
        self.arity = arity
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, arity: int) -> "Poly":
        # trusted constructor: keys valid, values nonzero Fractions
        p = object.__new__(cls)
        p._terms = terms
        p.arity = arity
        p._hash = None
        if CHECK_INVARIANTS:
            p.check_invariants()
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, arity: int) -> "Poly":
        _check_arity(arity)
        return cls._raw({}, arity)

    @classmethod
    def const(cls, c: Scalar, arity: int) -> "Poly":
        _check_arity(arity)
        c = Fraction(c)
        return cls._raw({(0,) * arity: c} if c else {}, arity)

    @classmethod
    def var(cls, index: int, arity: int) -> "Poly":
        _check_arity(arity)
        if not 0 <= index < arity:
            raise UsageError(f"variable index {index} out of range for arity {arity}")
        m = tuple(1 if i == index else 0 for i in range(arity))
        return cls._raw({m: Fraction(1)}, arity)

    @classmethod
    def term(cls, exponents: Sequence[int], coeff: Scalar = 1) -> "Poly":
        m = monomial(*exponents)
        c = Fraction(coeff)
        return cls._raw({m: c} if c else {}, len(m))

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def variables(self) -> tuple:
        return VARIABLES[self.arity]

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def total_degree(self) -> int:
        """Largest total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def leading_form(self) -> "Poly":
        d = self.total_degree()
        return Poly._raw({m: c for m, c in self._terms.items() if sum(m) == d}, self.arity)

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly._raw({m: c for m, c in self._terms.items() if sum(m) == degree}, self.arity)

    def without_degree_below(self, degree: int) -> "Poly":
        return Poly._raw({m: c for m, c in self._terms.items() if sum(m) >= degree}, self.arity)

    def involves(self, index: int) -> bool:
        return any(m[index] for m in self._terms)

    def used_variables(self) -> tuple:
        return tuple(i for i in range(self.arity) if self.involves(i))

    def coefficient(self, m: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.arity)

    def check_invariants(self) -> None:
        for m, c in self._terms.items():
            if len(m) != self.arity or not isinstance(c, Fraction) or c == 0:
                raise InternalError(f"corrupt term {m!r}: {c!r}")

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.arity != self.arity:
                raise UsageError(f"arity mismatch: {self.arity} vs {other.arity}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.const(other, self.arity)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out, self.arity)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()}, self.arity)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.arity)
        return Poly._raw({m: v * c for m, v in self._terms.items()}, self.arity)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) < len(other._terms):
            a, b = self._terms, other._terms
        else:
            a, b = other._terms, self._terms
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c}, self.arity)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise UsageError(f"exponent must be a nonnegative integer, got {n!r}")
        if len(self._terms) == 1:
            (m, c), = self._terms.items()
            return Poly._raw({tuple(e * n for e in m): c ** n}, self.arity)
        result = Poly.const(1, self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Poly.const(other, self.arity)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .expr import format_poly

        return f"Poly({format_poly(self)!r}, arity={self.arity})"

    def __str__(self) -> str:
        from .expr import format_poly

        return format_poly(self)

    # evaluation ---------------------------------------------------------
    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace variable i by ``images[i]`` and expand."""
        if len(images) != self.arity:
            raise UsageError(f"expected {self.arity} images, got {len(images)}")
        target = images[0].arity
        for img in images:
            if not isinstance(img, Poly) or img.arity != target:
                raise UsageError("all images must be polynomials of one arity")
        powers: list[dict[int, Poly]] = [{0: Poly.const(1, target)} for _ in images]

        def power(i: int, e: int) -> Poly:
            cache = powers[i]
            # cache keys are always 0..top, contiguous
            for k in range(len(cache), e + 1):
                cache[k] = cache[k - 1] * images[i]
            return cache[e]

        acc: dict = {}
        for m, c in sorted(self._terms.items()):
            t = Poly.const(c, target)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            for tm, tc in t._terms.items():
                acc[tm] = acc.get(tm, 0) + tc
        return Poly._raw({m: c for m, c in acc.items() if c}, target)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.arity:
            raise UsageError(f"expected a point with {self.arity} coordinates")
        pt = [Fraction(p) for p in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for x, e in zip(pt, m):
                if e:
                    t *= x ** e
            total += t
        return total


# module-level operations ------------------------------------------------

def add(p: Poly, q: Poly) -> Poly:
    if p.arity != q.arity:
        raise UsageError(f"arity mismatch: {p.arity} vs {q.arity}")
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    if p.arity != q.arity:
        raise UsageError(f"arity mismatch: {p.arity} vs {q.arity}")
    return p * q


def substitute(p: Poly, images: Sequence[Poly]) -> Poly:
    return p.substitute(images)


def gamma_degree(p: Poly, w: WeightVector):
    """Weighted degree of a homogeneous polynomial.

    Returns an int, ``None`` when ``p`` is not homogeneous, or
    :data:`EVERY_DEGREE` for the zero polynomial.
    """
    if w.arity != p.arity:
        raise UsageError(f"weight vector arity {w.arity} does not match polynomial arity {p.arity}")
    degrees = {w.degree_of(m) for m in p.terms}
    if not degrees:
        return EVERY_DEGREE
    if len(degrees) == 1:
        return degrees.pop()
    return None


def univariate_degree_span(f: Poly) -> tuple:
    """(lowest exponent, highest exponent) of a polynomial in one variable.

    The zero polynomial gives ``(inf, -inf)``.
    """
    used = f.used_variables()
    if len(used) > 1:
        raise UsageError("polynomial involves more than one variable")
    if f.is_zero():
        return (math.inf, -math.inf)
    exps = [sum(m) for m in f.terms]
    return (min(exps), max(exps))


def coefficient_of(p: Poly, m: Sequence[int]) -> Fraction:
    if len(m) != p.arity:
        raise UsageError(f"monomial arity {len(m)} does not match polynomial arity {p.arity}")
    return p.coefficient(m)


def univariate(coeffs: Mapping[int, Scalar], index: int, arity: int) -> Poly:
    """Polynomial sum(c * var_index**e) from an exponent -> coefficient map."""
    terms = {}
    for e, c in coeffs.items():
        m = [0] * arity
        m[index] = e
        terms[tuple(m)] = c
    return Poly(terms, arity)
