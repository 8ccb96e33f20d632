"""Passing between graded space maps fixing z and graded plane maps.

``restrict`` evaluates at z = 1.  ``lift`` goes back by rehomogenizing
every monomial with the power of z that restores its degree, which is the
only graded preimage since restriction is injective.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .endo import PolyMap, compose, is_graded
from .errors import InternalError, NotLiftable, NotSplittable, UsageError
from .grading import NormalizedGrading, induced_cyclic
from .poly import Poly


@dataclass(frozen=True)
class TorusFactor:
    lam: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam == 0:
            raise UsageError("torus factor must be nonzero")

    def as_map(self) -> PolyMap:
        return torus_map(self.lam)


def torus_map(lam) -> PolyMap:
    return PolyMap((Poly.var(0, 3), Poly.var(1, 3), Poly.var(2, 3).scale(lam)))


@dataclass(frozen=True)
class EMember:
    """A graded space automorphism with third image exactly z."""

    map: PolyMap
    grading: NormalizedGrading

    def __post_init__(self) -> None:
        if self.map.arity != 3:
            raise UsageError("E members are space maps")
        if self.map.images[2] != Poly.var(2, 3):
            raise UsageError("an E member must fix z")
        if not is_graded(self.map, self.grading):
            raise UsageError(f"map is not graded for {self.grading}")


def split_torus(phi: PolyMap, g: NormalizedGrading) -> tuple:
    """Write ``phi = phi_E o (x, y, lam*z)`` and return ``(EMember, TorusFactor)``."""
    if phi.arity != 3:
        raise UsageError("split_torus takes space maps")
    if not is_graded(phi, g):
        raise UsageError(f"map is not graded for {g}")
    third = phi.images[2]
    lam = third.coefficient((0, 0, 1))
    if lam == 0 or third != Poly.var(2, 3).scale(lam):
        raise NotSplittable(f"third image {third} is not a nonzero multiple of z")
    sub = (Poly.var(0, 3), Poly.var(1, 3), Poly.var(2, 3).scale(1 / lam))
    phi_e = PolyMap(tuple(p.substitute(sub) for p in phi.images))
    if compose(phi_e, torus_map(lam)) != phi:
        raise InternalError("torus split does not recompose")
    return EMember(phi_e, g), TorusFactor(lam)


def restrict(phi: EMember | PolyMap) -> PolyMap:
    m = phi.map if isinstance(phi, EMember) else phi
    if m.arity != 3 or m.images[2] != Poly.var(2, 3):
        raise UsageError("restrict takes space maps fixing z")
    sub = (Poly.var(0, 2), Poly.var(1, 2), Poly.const(1, 2))
    return PolyMap(tuple(p.substitute(sub) for p in m.images[:2]))


def lift_obstruction(phi: PolyMap, g: NormalizedGrading) -> str | None:
    """Why a graded plane map has no graded preimage, or None if it has one."""
    if phi.arity != 2:
        raise UsageError("liftability is a property of plane maps")
    if not is_graded(phi, induced_cyclic(g)):
        raise UsageError(f"plane map is not graded for the induced Z_{g.c} grading")
    f, h = phi.images
    for (p, q), _ in sorted(f.terms.items()):
        if p == 0 and g.b * q < g.a:
            return f"monomial v^{q} with b*q={g.b * q} < a={g.a}"
    if h.constant_term() != 0:
        return f"second image has nonzero constant term {h.constant_term()}"
    return None


def liftable(phi: PolyMap, g: NormalizedGrading) -> bool:
    return lift_obstruction(phi, g) is None


def rehomogenize(phi: PolyMap, g: NormalizedGrading) -> PolyMap | None:
    """Attach z powers to every monomial; None if some exponent is negative."""
    images = []
    for img, target in zip(phi.images, (g.a, g.b)):
        terms = {}
        for (p, q), coeff in img.terms.items():
            num = p * g.a + q * g.b - target
            if num % g.c:
                raise InternalError(f"z exponent for u^{p}*v^{q} is not an integer")
            if num < 0:
                return None
            terms[(p, q, num // g.c)] = coeff
        images.append(Poly(terms, 3))
    images.append(Poly.var(2, 3))
    return PolyMap(tuple(images))


def lift(phi: PolyMap, g: NormalizedGrading) -> EMember:
    reason = lift_obstruction(phi, g)
    lifted = rehomogenize(phi, g)
    if (reason is None) != (lifted is not None):
        raise InternalError("liftability predicate disagrees with rehomogenization")
    if lifted is None:
        raise NotLiftable(f"not liftable: {reason}")
    member = EMember(lifted, g)
    if restrict(member) != phi:
        raise InternalError("lift does not restrict back to its input")
    return member
