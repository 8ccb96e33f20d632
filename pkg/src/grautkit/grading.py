"""Z-gradings of Q[x, y, z]: classification, normalization, wildness test."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import UsageError
from .poly import WeightVector


class GradingClass(enum.Enum):
    TRIVIAL = "Trivial"
    HAS_ZERO = "HasZero"
    SAME_SIGN = "SameSign"
    MIXED = "Mixed"


@dataclass(frozen=True)
class RawGrading:
    degrees: tuple

    def __post_init__(self) -> None:
        if len(self.degrees) != 3:
            raise UsageError(f"a grading needs three degrees, got {len(self.degrees)}")
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    @classmethod
    def parse(cls, text: str) -> "RawGrading":
        parts = text.replace(",", " ").split()
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError:
            raise UsageError(f"grading must be three integers, got {text!r}") from None

    def __str__(self) -> str:
        return " ".join(str(d) for d in self.degrees)


@dataclass(frozen=True)
class NormalizedGrading:
    """Degrees (a, b, -c) on (x, y, z) with gcd 1 and a >= b.

    ``permutation[i]`` is the raw variable index placed in normalized slot
    ``i``; the raw degrees are recovered as
    ``raw[permutation[i]] == sign * scale * (a, b, -c)[i]``.
    """

    a: int
    b: int
    c: int
    sign: int = 1
    permutation: tuple = (0, 1, 2)
    scale: int = 1

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) <= 0:
            raise UsageError("a, b, c must be positive")
        if math.gcd(self.a, self.b, self.c) != 1:
            raise UsageError("gcd(a, b, c) must be 1")
        if self.a < self.b:
            raise UsageError("normalized grading needs a >= b")
        if self.sign not in (1, -1) or sorted(self.permutation) != [0, 1, 2] or self.scale < 1:
            raise UsageError("malformed normalization bookkeeping")

    @property
    def weights(self) -> WeightVector:
        return WeightVector((self.a, self.b, -self.c))

    def raw(self) -> RawGrading:
        out = [0, 0, 0]
        for slot, d in enumerate((self.a, self.b, -self.c)):
            out[self.permutation[slot]] = self.sign * self.scale * d
        return RawGrading(tuple(out))

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, -{self.c})"


@dataclass(frozen=True)
class CyclicGrading:
    """Z_c grading of Q[u, v] with deg u = a mod c, deg v = b mod c."""

    modulus: int
    a_bar: int
    b_bar: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise UsageError("modulus must be positive")
        object.__setattr__(self, "a_bar", self.a_bar % self.modulus)
        object.__setattr__(self, "b_bar", self.b_bar % self.modulus)

    def degree_of(self, m) -> int:
        return (m[0] * self.a_bar + m[1] * self.b_bar) % self.modulus

    @property
    def weights(self) -> tuple:
        return (self.a_bar, self.b_bar)


@dataclass(frozen=True)
class WildCertificate:
    P: int
    Q: int


def classify(raw: RawGrading) -> GradingClass:
    d = raw.degrees
    zeros = sum(1 for x in d if x == 0)
    if zeros == 3:
        return GradingClass.TRIVIAL
    if zeros:
        return GradingClass.HAS_ZERO
    if all(x > 0 for x in d) or all(x < 0 for x in d):
        return GradingClass.SAME_SIGN
    return GradingClass.MIXED


def normalize(raw: RawGrading) -> NormalizedGrading:
    kind = classify(raw)
    if kind is not GradingClass.MIXED:
        raise UsageError(f"only mixed-sign gradings can be normalized; {raw} is {kind.value}")
    d = raw.degrees
    scale = math.gcd(*d)
    d = [x // scale for x in d]
    sign = 1
    if sum(1 for x in d if x < 0) != 1:
        sign = -1
        d = [-x for x in d]
    neg = next(i for i, x in enumerate(d) if x < 0)
    pos = [i for i in range(3) if i != neg]
    # stable sort keeps raw order when the two positive degrees tie
    pos.sort(key=lambda i: -d[i])
    return NormalizedGrading(d[pos[0]], d[pos[1]], -d[neg], sign, (pos[0], pos[1], neg), scale)


def _p_admissible(P: int) -> bool:
    # "natural numbers" read as P >= 1; flip here to allow P = 0
    return P >= 1


def admits_wild(g: NormalizedGrading) -> Optional[WildCertificate]:
    """Smallest-Q (then smallest-P) solution of a = c*P + b*Q with Q >= 2."""
    a, b, c = g.a, g.b, g.c
    Q = 2
    while b * Q <= a:
        rest = a - b * Q
        if rest % c == 0 and _p_admissible(rest // c):
            cert = WildCertificate(rest // c, Q)
            assert a == c * cert.P + b * cert.Q and a > b
            return cert
        Q += 1
    return None


def induced_cyclic(g: NormalizedGrading) -> CyclicGrading:
    return CyclicGrading(g.c, g.a % g.c, g.b % g.c)


def parse_grading(text: str) -> NormalizedGrading:
    return normalize(RawGrading.parse(text))
