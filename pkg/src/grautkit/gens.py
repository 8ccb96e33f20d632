"""Generators of the graded automorphism group and the master decomposition.

Plane generators (all graded for the induced Z_c grading):

* ``DElement``  -- ``(u, lam*v + mu*u^k)`` with ``k*a = b (mod c)``
* ``UElement``  -- ``(lam*u + f(v), v)`` whose monomials v^q all have ``b*q >= a``
* ``WElement``  -- ``(lam*u + f(v), v)`` whose monomials v^q all have ``b*q < a``
* ``SElement``  -- ``s o tau^-1 o theta o tau`` for tau in W, theta in D and the
  correction ``s`` in W that makes the product liftable

A :class:`GenWord` is a product of U and S lifts and torus factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .endo import ElemAuto, PolyMap, compose, compose_all, is_graded, jvdk_decompose, normalize_linear_parts
from .errors import InternalError, UnsupportedGrading, UsageError
from .grading import NormalizedGrading, induced_cyclic
from .lift import TorusFactor, lift, lift_obstruction, restrict, split_torus
from .poly import Poly, univariate_degree_span

U_VAR = Poly.var(0, 2)
V_VAR = Poly.var(1, 2)


def _is_v_only(f: Poly) -> bool:
    return f.arity == 2 and not f.involves(0)


def _graded_shift(f: Poly, g: NormalizedGrading) -> bool:
    cyc = induced_cyclic(g)
    return all(cyc.degree_of(m) == cyc.a_bar for m in f.terms)


def _first_type_map(lam: Fraction, f: Poly) -> PolyMap:
    return PolyMap((U_VAR.scale(lam) + f, V_VAR))


def _first_type_compose(outer: tuple, inner: tuple) -> tuple:
    # (l1*u + f1) o (l2*u + f2) = l1*l2*u + l1*f2 + f1
    (l1, f1), (l2, f2) = outer, inner
    return (l1 * l2, f2.scale(l1) + f1)


def _first_type_inverse(lam: Fraction, f: Poly) -> tuple:
    return (1 / lam, f.scale(-1 / lam))


@dataclass(frozen=True)
class DElement:
    lam: Fraction
    mu: Fraction
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "mu", Fraction(self.mu))
        if self.lam == 0:
            raise UsageError("D element needs lam != 0")
        if not isinstance(self.k, int) or self.k < 1:
            raise UsageError("D element needs a positive integer k")

    def as_map(self) -> PolyMap:
        return PolyMap((U_VAR, V_VAR.scale(self.lam) + (U_VAR ** self.k).scale(self.mu)))

    def check(self, g: NormalizedGrading) -> None:
        if self.mu != 0 and (self.k * g.a - g.b) % g.c:
            raise UsageError(f"D element exponent k={self.k} violates k*a = b (mod c) for {g}")


class _FirstType:
    kind = ""

    def _validate(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam == 0:
            raise UsageError(f"{self.kind} element needs lam != 0")
        if not _is_v_only(self.f):
            raise UsageError(f"{self.kind} element shift must be a plane polynomial in v only")

    def as_map(self) -> PolyMap:
        return _first_type_map(self.lam, self.f)

    def is_identity(self) -> bool:
        return self.lam == 1 and self.f.is_zero()

    def _check_graded(self, g: NormalizedGrading) -> None:
        if not _graded_shift(self.f, g):
            raise UsageError(f"{self.kind} element shift {self.f} is not graded for {g}")


@dataclass(frozen=True)
class UElement(_FirstType):
    lam: Fraction
    f: Poly
    kind = "U"

    def __post_init__(self) -> None:
        self._validate()

    def check(self, g: NormalizedGrading) -> None:
        self._check_graded(g)
        low, _ = univariate_degree_span(self.f)
        if low * g.b < g.a:
            raise UsageError(f"U element shift {self.f} has a monomial of degree below a/b")


@dataclass(frozen=True)
class WElement(_FirstType):
    lam: Fraction
    f: Poly
    kind = "W"

    def __post_init__(self) -> None:
        self._validate()

    def check(self, g: NormalizedGrading) -> None:
        self._check_graded(g)
        _, high = univariate_degree_span(self.f)
        if high * g.b >= g.a:
            raise UsageError(f"W element shift {self.f} has a monomial of degree at least a/b")

    def inverse(self) -> "WElement":
        return WElement(*_first_type_inverse(self.lam, self.f))


@dataclass(frozen=True)
class SElement:
    tau: WElement
    theta: DElement
    s: WElement
    tau_theta: WElement = field(default=None)

    def __post_init__(self) -> None:
        expected = WElement(*_first_type_compose((self.s.lam, self.s.f), _first_type_inverse(self.tau.lam, self.tau.f)))
        if self.tau_theta is None:
            object.__setattr__(self, "tau_theta", expected)
        elif self.tau_theta != expected:
            raise UsageError("tau_theta must equal s o tau^-1")

    def plane_map(self) -> PolyMap:
        """``tau_theta o theta o tau``."""
        return compose_all([self.tau_theta.as_map(), self.theta.as_map(), self.tau.as_map()], 2)

    def check(self, g: NormalizedGrading) -> None:
        self.tau.check(g)
        self.theta.check(g)
        self.s.check(g)
        self.tau_theta.check(g)
        reason = lift_obstruction(self.plane_map(), g)
        if reason is not None:
            raise UsageError(f"S element does not lift: {reason}")


Generator = Union[TorusFactor, UElement, SElement]


@dataclass(frozen=True)
class FirstType:
    lam: Fraction
    f: Poly


def classify_elementary(xi: ElemAuto, g: NormalizedGrading):
    """A list of D elements for a second-type factor, else :class:`FirstType`."""
    if xi.arity != 2:
        raise UsageError("classify_elementary takes plane factors")
    if not xi.fixes_origin():
        raise UsageError(f"factor {xi} moves the origin")
    if not is_graded(xi.as_map(), induced_cyclic(g)):
        raise UsageError(f"factor {xi} is not graded for {g}")
    if xi.axis == 0:
        return FirstType(xi.scale, xi.shift)
    terms = sorted((m[0], c) for m, c in xi.shift.terms.items())
    if not terms:
        return [DElement(xi.scale, 0, _default_k(g))]
    out = [DElement(1, c, k) for k, c in terms[:-1]]
    k, c = terms[-1]
    out.append(DElement(xi.scale, c, k))
    return out


def _default_k(g: NormalizedGrading) -> int:
    # the exponent is irrelevant when mu = 0; use the least admissible one if any
    for k in range(1, g.c + 1):
        if (k * g.a - g.b) % g.c == 0:
            return k
    return 1


def split_first_type(lam, f: Poly, g: NormalizedGrading) -> tuple:
    """``(lam*u + f, v) = tau o tau1`` with tau in W (scale 1) and tau1 in U."""
    lam = Fraction(lam)
    low = {m: c for m, c in f.terms.items() if m[1] * g.b < g.a}
    high = {m: c for m, c in f.terms.items() if m[1] * g.b >= g.a}
    return WElement(1, Poly(low, 2)), UElement(lam, Poly(high, 2))


def correction(tau: WElement, theta: DElement, g: NormalizedGrading) -> WElement:
    """The W element s with ``s o tau^-1 o theta o tau`` liftable."""
    psi = compose_all([tau.inverse().as_map(), theta.as_map(), tau.as_map()], 2)
    total = Poly.zero(2)
    bound = math.ceil(g.a / g.b)
    previous = -1
    for _ in range(bound + 1):
        low = sorted((m[1], c) for m, c in psi.images[0].terms.items() if m[0] == 0 and m[1] * g.b < g.a)
        if not low:
            return WElement(1, total)
        m1, nu = low[0]
        if m1 <= previous:
            raise InternalError("offending v-degree did not increase")
        previous = m1
        lam = psi.images[1].coefficient((0, 1))
        if lam == 0:
            raise InternalError("coefficient of v in the second image vanished")
        if (m1 * g.b - g.a) % g.c:
            raise InternalError(f"correction monomial v^{m1} is not graded")
        step = (V_VAR ** m1).scale(-nu / lam ** m1)
        psi = compose(_first_type_map(Fraction(1), step), psi)
        total = total + step
    raise InternalError(f"correction did not terminate within {bound} steps")


def make_s_element(tau: WElement, theta: DElement, g: NormalizedGrading) -> SElement:
    s = correction(tau, theta, g)
    elem = SElement(tau, theta, s)
    reason = lift_obstruction(elem.plane_map(), g)
    if reason is not None:
        raise InternalError(f"corrected S element still does not lift: {reason}")
    return elem


def generator_map(gen: Generator, g: NormalizedGrading) -> PolyMap:
    """The space automorphism a generator stands for."""
    if isinstance(gen, TorusFactor):
        return gen.as_map()
    if isinstance(gen, UElement):
        gen.check(g)
        return lift(gen.as_map(), g).map
    if isinstance(gen, SElement):
        gen.check(g)
        return lift(gen.plane_map(), g).map
    raise UsageError(f"not a generator: {gen!r}")


@dataclass(frozen=True)
class GenWord:
    """Generators outermost first, i.e. ``factors[0] o factors[1] o ...``."""

    factors: tuple
    grading: NormalizedGrading

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)


def recompose(word: GenWord) -> PolyMap:
    return compose_all([generator_map(gen, word.grading) for gen in word.factors], 3)


def _check_supported(g: NormalizedGrading) -> None:
    if not isinstance(g, NormalizedGrading):
        raise UsageError("decompose_graded needs a NormalizedGrading")
    if g.a <= g.b:
        raise UnsupportedGrading(f"grading {g} needs a > b")


def decompose_plane(phi: PolyMap, g: NormalizedGrading) -> list:
    """Plane generators (outermost first) of a liftable graded plane automorphism."""
    _check_supported(g)
    cyc = induced_cyclic(g)
    seq = jvdk_decompose(phi, cyc)
    seq = normalize_linear_parts(seq, cyc)

    emitted: list = []  # innermost first
    prefix = (Fraction(1), Poly.zero(2))
    for xi in reversed(seq.factors):
        kind = classify_elementary(xi, g)
        if isinstance(kind, FirstType):
            prefix = _first_type_compose((kind.lam, kind.f), prefix)
            continue
        for theta in reversed(kind):
            theta.check(g)
            tau, tau1 = split_first_type(*prefix, g)
            tau.check(g)
            tau1.check(g)
            if not tau1.is_identity():
                emitted.append(tau1)
            s_elem = make_s_element(tau, theta, g)
            emitted.append(s_elem)
            # carry tau o s^-1 into the remaining prefix
            prefix = _first_type_compose((tau.lam, tau.f), _first_type_inverse(s_elem.s.lam, s_elem.s.f))
    final = UElement(*prefix)
    try:
        final.check(g)
    except UsageError as exc:
        raise InternalError(f"leftover first-type prefix is not in U: {exc}") from None
    if not final.is_identity():
        emitted.append(final)
    return list(reversed(emitted))


def decompose_graded(phi: PolyMap, g: NormalizedGrading) -> GenWord:
    """Write a graded space automorphism as U lifts, S lifts and a torus factor.

    The returned word is checked to recompose to ``phi`` exactly.
    """
    _check_supported(g)
    if phi.arity != 3:
        raise UsageError("decompose_graded takes space maps")
    if not is_graded(phi, g):
        raise UsageError(f"map is not graded for {g}")
    member, torus = split_torus(phi, g)
    plane = restrict(member)
    factors = decompose_plane(plane, g)
    if torus.lam != 1:
        factors.append(torus)
    word = GenWord(tuple(factors), g)
    if recompose(word) != phi:
        raise InternalError("decomposition does not recompose to the input")
    return word


# -- JSON wire format -----------------------------------------------------

def _rat(x: Fraction) -> str:
    return str(Fraction(x))


def _first_type_json(e) -> dict:
    from .expr import format_poly

    return {"lambda": _rat(e.lam), "f": format_poly(e.f)}


def generator_to_json(gen: Generator) -> dict:
    if isinstance(gen, TorusFactor):
        return {"type": "T", "lambda": _rat(gen.lam)}
    if isinstance(gen, UElement):
        return {"type": "U", **_first_type_json(gen)}
    if isinstance(gen, SElement):
        return {
            "type": "S",
            "tau": _first_type_json(gen.tau),
            "theta": {"lambda": _rat(gen.theta.lam), "mu": _rat(gen.theta.mu), "k": gen.theta.k},
            "s": _first_type_json(gen.s),
        }
    raise UsageError(f"not a generator: {gen!r}")


def word_to_json(word: GenWord) -> list:
    return [generator_to_json(gen) for gen in word.factors]


def _parse_rat(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise UsageError(f"rational must be a 'p/q' string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {value!r}") from None


def _first_type_from_json(obj, cls):
    from .expr import parse_poly

    if not isinstance(obj, dict) or set(obj) != {"lambda", "f"}:
        raise UsageError(f"expected {{'lambda', 'f'}}, got {obj!r}")
    return cls(_parse_rat(obj["lambda"]), parse_poly(obj["f"], 2))


def generator_from_json(obj) -> Generator:
    if not isinstance(obj, dict) or "type" not in obj:
        raise UsageError(f"generator must be an object with a 'type', got {obj!r}")
    kind = obj["type"]
    body = {k: v for k, v in obj.items() if k != "type"}
    if kind == "T" and set(body) == {"lambda"}:
        return TorusFactor(_parse_rat(body["lambda"]))
    if kind == "U":
        return _first_type_from_json(body, UElement)
    if kind == "S" and set(body) == {"tau", "theta", "s"}:
        theta = body["theta"]
        if not isinstance(theta, dict) or set(theta) != {"lambda", "mu", "k"} or not isinstance(theta["k"], int):
            raise UsageError(f"bad theta {theta!r}")
        return SElement(
            _first_type_from_json(body["tau"], WElement),
            DElement(_parse_rat(theta["lambda"]), _parse_rat(theta["mu"]), theta["k"]),
            _first_type_from_json(body["s"], WElement),
        )
    raise UsageError(f"unrecognised generator {obj!r}")


def word_from_json(data, g: NormalizedGrading) -> GenWord:
    if not isinstance(data, list):
        raise UsageError("a generator word is a JSON array")
    return GenWord(tuple(generator_from_json(item) for item in data), g)


def describe_generator(gen: Generator) -> str:
    from .expr import format

    if isinstance(gen, TorusFactor):
        return f"T  lambda = {_rat(gen.lam)}"
    if isinstance(gen, UElement):
        return f"U  ({format(gen.as_map())})"
    th = gen.theta
    return (f"S  tau = ({format(gen.tau.as_map())})  theta = ({format(th.as_map())})"
            f"  s = ({format(gen.s.as_map())})")
