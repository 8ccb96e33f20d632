import random

import pytest

from grautkit.endo import PolyMap, compose, is_graded
from grautkit.errors import NotLiftable, NotSplittable, UsageError
from grautkit.examples import NAGATA_GRADING, nagata_plane, nagata_sigma
from grautkit.expr import parse_map
from grautkit.grading import NormalizedGrading, induced_cyclic
from grautkit.lift import EMember, TorusFactor, lift, liftable, rehomogenize, restrict, split_torus, torus_map
from grautkit.poly import Poly
from randgen import random_e_member, random_plane_word, rational
from grautkit.endo import compose_all

G = NAGATA_GRADING


def test_split_torus_examples():
    member, torus = split_torus(parse_map("x; y; 5*z"), G)
    assert member.map == PolyMap.identity(3) and torus.lam == 5
    member, torus = split_torus(nagata_sigma(), G)
    assert member.map == nagata_sigma() and torus.lam == 1
    phi = compose(nagata_sigma(), torus_map(2))
    member, torus = split_torus(phi, G)
    assert member.map == nagata_sigma() and torus.lam == 2
    assert compose(member.map, TorusFactor(2).as_map()) == phi


def test_split_torus_rejects():
    with pytest.raises(NotSplittable):
        split_torus(parse_map("x; y; z + x*z^4"), G)
    with pytest.raises(UsageError):
        split_torus(parse_map("x + z; y; z"), G)


def test_restrict_examples():
    assert restrict(EMember(nagata_sigma(), G)) == nagata_plane()
    assert restrict(EMember(PolyMap.identity(3), G)) == PolyMap.identity(2)


@pytest.mark.parametrize("abc", [(3, 1, 1), (5, 2, 1), (8, 3, 2)])
def test_restrict_is_homomorphism(abc):
    g = NormalizedGrading(*abc)
    rng = random.Random(sum(abc))
    for _ in range(30):
        phi, psi = (random_e_member(g, rng, rng.randint(1, 3), budget=8) for _ in range(2))
        lhs = restrict(EMember(compose(phi, psi), g))
        assert lhs == compose(restrict(EMember(phi, g)), restrict(EMember(psi, g)))
        assert is_graded(lhs, induced_cyclic(g))


def test_liftable_examples():
    assert not liftable(parse_map("u + v^2; v"), G)
    assert not liftable(parse_map("u; v + 1"), G)
    assert liftable(nagata_plane(), G)
    with pytest.raises(UsageError):
        liftable(parse_map("u + v; v"), NormalizedGrading(8, 3, 2))


def test_lift_examples():
    assert lift(nagata_plane(), G).map == nagata_sigma()
    assert lift(PolyMap.identity(2), G).map == PolyMap.identity(3)
    with pytest.raises(NotLiftable, match="v\\^2 with b\\*q=2 < a=3"):
        lift(parse_map("u + v^2; v"), G)


@pytest.mark.parametrize("abc", [(3, 1, 1), (5, 2, 1), (8, 3, 2)])
def test_lift_restrict_roundtrip(abc):
    g = NormalizedGrading(*abc)
    rng = random.Random(abc[0])
    for _ in range(40):
        phi = random_e_member(g, rng, rng.randint(1, 4))
        lifted = lift(restrict(EMember(phi, g)), g)
        assert lifted.map == phi
        assert is_graded(lifted.map, g) and lifted.map.images[2] == Poly.var(2, 3)


@pytest.mark.parametrize("abc", [(3, 1, 1), (5, 2, 1), (7, 2, 3)])
def test_predicate_agrees_with_construction(abc):
    g = NormalizedGrading(*abc)
    rng = random.Random(abc[2])
    seen = set()
    for _ in range(60):
        plane = compose_all(random_plane_word(g, rng, rng.randint(1, 3), budget=8, kinds="DUW"), 2)
        ok = liftable(plane, g)
        seen.add(ok)
        assert ok == (rehomogenize(plane, g) is not None)
    assert seen == {True, False}
