"""The Nagata automorphism and the plane maps it is built from."""

from __future__ import annotations

from .endo import PolyMap
from .expr import parse_map
from .grading import NormalizedGrading

NAGATA_GRADING = NormalizedGrading(3, 1, 1)

NAGATA_TEXT = "x - x^2*z^3 - y^4*z - 2*x*y*z - 2*y^3 - 2*x*y^2*z^2; y + x*z^2 + y^2*z; z"


def nagata_tau() -> PolyMap:
    return parse_map("u + v^2; v")


def nagata_theta() -> PolyMap:
    return parse_map("u; v + u")


def nagata_plane() -> PolyMap:
    """tau^-1 o theta o tau."""
    return parse_map("u - u^2 - v^4 - 2*u*v - 2*v^3 - 2*u*v^2; v + u + v^2")


def nagata_sigma() -> PolyMap:
    return parse_map(NAGATA_TEXT)
