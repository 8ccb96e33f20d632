"""Exact computations with Z-graded polynomial automorphisms of Q[x, y, z]."""

from .poly import EVERY_DEGREE, Poly, WeightVector
from .expr import parse_map, parse_poly, format
from .grading import (
    CyclicGrading,
    GradingClass,
    NormalizedGrading,
    RawGrading,
    WildCertificate,
    admits_wild,
    classify,
    induced_cyclic,
    normalize,
    parse_grading,
)
from .endo import ElemAuto, ElemSeq, PolyMap, compose, is_graded, jvdk_decompose, normalize_linear_parts
from .lift import EMember, TorusFactor, lift, liftable, restrict, split_torus
from .gens import (
    DElement,
    GenWord,
    SElement,
    UElement,
    WElement,
    correction,
    decompose_graded,
    make_s_element,
    recompose,
)

__all__ = [name for name in dir() if not name.startswith("_")]
