"""Random graded maps for property and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction

from grautkit.endo import ElemAuto, PolyMap, compose_all
from grautkit.gens import DElement, UElement, WElement, make_s_element
from grautkit.grading import NormalizedGrading
from grautkit.lift import lift, torus_map
from grautkit.poly import Poly

V = Poly.var(1, 2)


def rational(rng: random.Random, nonzero: bool = True, size: int = 5) -> Fraction:
    while True:
        x = Fraction(rng.randint(-size, size), rng.randint(1, 3))
        if x or not nonzero:
            return x


def d_exponents(g: NormalizedGrading, kmax: int = 3) -> list:
    return [k for k in range(1, kmax + 1) if (k * g.a - g.b) % g.c == 0]


def u_exponents(g: NormalizedGrading, extra: int = 2) -> list:
    qs = [q for q in range(1, 40) if q * g.b >= g.a and (q * g.b - g.a) % g.c == 0]
    return qs[: extra]


def w_exponents(g: NormalizedGrading) -> list:
    return [q for q in range(2, 40) if q * g.b < g.a and (q * g.b - g.a) % g.c == 0]


def random_d(g, rng) -> DElement:
    ks = d_exponents(g)
    if not ks or rng.random() < 0.15:
        return DElement(rational(rng), 0, ks[0] if ks else 1)
    return DElement(rational(rng), rational(rng), rng.choice(ks))


def _random_shift(rng, qs) -> Poly:
    f = Poly.zero(2)
    for q in qs:
        if rng.random() < 0.6:
            f = f + (V ** q).scale(rational(rng))
    return f


def random_u(g, rng) -> UElement:
    return UElement(rational(rng), _random_shift(rng, u_exponents(g)))


def random_w(g, rng) -> WElement:
    return WElement(1, _random_shift(rng, w_exponents(g)))


def _degree(m: PolyMap) -> int:
    return max(1, m.total_degree())


def random_plane_word(g, rng, length: int, budget: int = 16, kinds: str = "DU") -> list:
    """Plane maps of the requested kinds whose degree product stays within budget."""
    while True:
        word = []
        for _ in range(length):
            kind = rng.choice(kinds)
            if kind == "D":
                word.append(random_d(g, rng).as_map())
            elif kind == "U":
                word.append(random_u(g, rng).as_map())
            elif kind == "W":
                word.append(random_w(g, rng).as_map())
            elif kind == "S":
                word.append(make_s_element(random_w(g, rng), random_d(g, rng), g).plane_map())
        prod = 1
        for m in word:
            prod *= _degree(m)
        if prod <= budget:
            return word


def random_e_member(g, rng, length: int, budget: int = 16, kinds: str = "DU") -> PolyMap:
    word = random_plane_word(g, rng, length, budget, kinds)
    return compose_all([lift(m, g).map for m in word], 3)


def random_graded_auto(g, rng, length: int, budget: int = 16, kinds: str = "DU") -> PolyMap:
    """Lifted generators with a torus factor inserted at a random position."""
    word = [lift(m, g).map for m in random_plane_word(g, rng, length, budget, kinds)]
    word.insert(rng.randint(0, len(word)), torus_map(rational(rng)))
    return compose_all(word, 3)


def random_elementary(rng, max_degree: int = 5, origin: bool = False) -> ElemAuto:
    axis = rng.randint(0, 1)
    other = 1 - axis
    shift = Poly.zero(2)
    for e in range(0 if not origin else 1, rng.randint(1, max_degree) + 1):
        if rng.random() < 0.5:
            m = [0, 0]
            m[other] = e
            shift = shift + Poly.term(m, rational(rng))
    return ElemAuto(axis, rational(rng), shift)


def random_elementary_word(rng, length: int, max_degree: int = 5, budget: int = 40) -> list:
    while True:
        word = [random_elementary(rng, max_degree) for _ in range(length)]
        prod = 1
        for e in word:
            prod *= max(1, e.shift.total_degree())
        if prod <= budget:
            return word


def random_graded_elementary(cyc, rng, max_degree: int = 4) -> ElemAuto:
    """Origin-fixing elementary plane map, graded for a cyclic grading."""
    axis = rng.randint(0, 1)
    own, other = (cyc.a_bar, cyc.b_bar) if axis == 0 else (cyc.b_bar, cyc.a_bar)
    shift = Poly.zero(2)
    for e in range(1, max_degree + 1):
        if (e * other - own) % cyc.modulus == 0 and rng.random() < 0.5:
            m = [0, 0]
            m[1 - axis] = e
            shift = shift + Poly.term(m, rational(rng))
    return ElemAuto(axis, rational(rng), shift)
