"""Polynomial maps, elementary automorphisms and plane decompositions.

Composition follows maps of affine space: ``compose(outer, inner)`` applies
``inner`` first, so its i-th image is ``outer[i]`` with the images of
``inner`` substituted for the variables.  Sequences of elementary factors
are stored outermost first, i.e. ``[xi_n, ..., xi_1]`` for
``xi_n o ... o xi_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import InternalError, NotAutomorphism, UsageError
from .grading import CyclicGrading, NormalizedGrading
from .poly import EVERY_DEGREE, Poly, Scalar, WeightVector, gamma_degree


@dataclass(frozen=True)
class PolyMap:
    images: tuple

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if len(images) not in (2, 3):
            raise UsageError(f"a map needs 2 or 3 images, got {len(images)}")
        for img in images:
            if not isinstance(img, Poly) or img.arity != len(images):
                raise UsageError("every image must be a polynomial in the map's own variables")
        object.__setattr__(self, "images", images)

    @property
    def arity(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, arity: int) -> "PolyMap":
        return cls(tuple(Poly.var(i, arity) for i in range(arity)))

    def __getitem__(self, i: int) -> Poly:
        return self.images[i]

    def __iter__(self):
        return iter(self.images)

    def evaluate(self, point: Sequence[Scalar]) -> tuple:
        return tuple(p.evaluate(point) for p in self.images)

    def total_degree(self) -> int:
        return max(p.total_degree() for p in self.images)

    def fixes_origin(self) -> bool:
        return all(p.constant_term() == 0 for p in self.images)

    def is_identity(self) -> bool:
        return self == PolyMap.identity(self.arity)

    def __str__(self) -> str:
        from .expr import format

        return format(self)


def compose(outer: PolyMap, inner: PolyMap) -> PolyMap:
    if outer.arity != inner.arity:
        raise UsageError(f"arity mismatch: {outer.arity} vs {inner.arity}")
    return PolyMap(tuple(p.substitute(inner.images) for p in outer.images))


def compose_all(maps: Sequence[PolyMap], arity: int) -> PolyMap:
    """``maps[0] o maps[1] o ...``; the identity for an empty list."""
    out = PolyMap.identity(arity)
    for m in reversed(maps):
        out = compose(m, out)
    return out


@dataclass(frozen=True)
class ElemAuto:
    """``var[axis] -> scale * var[axis] + shift`` with the other variables fixed."""

    axis: int
    scale: Fraction
    shift: Poly

    def __post_init__(self) -> None:
        object.__setattr__(self, "scale", Fraction(self.scale))
        if not 0 <= self.axis < self.shift.arity:
            raise UsageError(f"axis {self.axis} out of range")
        if self.scale == 0:
            raise UsageError("elementary scale must be nonzero")
        if self.shift.involves(self.axis):
            raise UsageError("elementary shift must not involve its own variable")

    @property
    def arity(self) -> int:
        return self.shift.arity

    def as_map(self) -> PolyMap:
        n = self.arity
        images = [Poly.var(i, n) for i in range(n)]
        images[self.axis] = images[self.axis].scale(self.scale) + self.shift
        return PolyMap(tuple(images))

    def inverse(self) -> "ElemAuto":
        return ElemAuto(self.axis, 1 / self.scale, self.shift.scale(-1 / self.scale))

    def is_identity(self) -> bool:
        return self.scale == 1 and self.shift.is_zero()

    def fixes_origin(self) -> bool:
        return self.shift.constant_term() == 0

    def __str__(self) -> str:
        return str(self.as_map())


def elementary_inverse(e: ElemAuto) -> ElemAuto:
    return e.inverse()


@dataclass(frozen=True)
class ElemSeq:
    factors: tuple

    def __post_init__(self) -> None:
        factors = tuple(self.factors)
        if len({f.arity for f in factors}) > 1:
            raise UsageError("all factors must share one arity")
        object.__setattr__(self, "factors", factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def compose(self, arity: int = 2) -> PolyMap:
        if self.factors:
            arity = self.factors[0].arity
        return compose_all([f.as_map() for f in self.factors], arity)


Grading = Union[WeightVector, CyclicGrading, NormalizedGrading]


def is_graded(phi: PolyMap, grading: Grading) -> bool:
    """Each image is homogeneous of the degree of its variable."""
    if isinstance(grading, NormalizedGrading):
        grading = grading.weights
    if isinstance(grading, CyclicGrading):
        if phi.arity != 2:
            raise UsageError("a cyclic grading applies to plane maps")
        for i, img in enumerate(phi.images):
            target = grading.weights[i] % grading.modulus
            if any(grading.degree_of(m) != target for m in img.terms):
                return False
        return True
    if grading.arity != phi.arity:
        raise UsageError(f"weight vector arity {grading.arity} does not match map arity {phi.arity}")
    for i, img in enumerate(phi.images):
        d = gamma_degree(img, grading)
        if d is not EVERY_DEGREE and d != grading.weights[i]:
            return False
    return True


def permute_variables(phi: PolyMap, perm: Sequence[int]) -> PolyMap:
    """Conjugate by the relabelling that puts old variable ``perm[i]`` in slot ``i``."""
    n = phi.arity
    inv = [0] * n
    for new, old in enumerate(perm):
        inv[old] = new
    sub = [Poly.var(inv[j], n) for j in range(n)]
    return PolyMap(tuple(phi.images[perm[i]].substitute(sub) for i in range(n)))


def unpermute_variables(phi: PolyMap, perm: Sequence[int]) -> PolyMap:
    n = phi.arity
    inv = [0] * n
    for new, old in enumerate(perm):
        inv[old] = new
    return permute_variables(phi, inv)


# -- 2x2 linear algebra, rows are images ---------------------------------

def _matmul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _inverse(A):
    det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    if det == 0:
        raise InternalError("singular linear map")
    return ((A[1][1] / det, -A[0][1] / det), (-A[1][0] / det, A[0][0] / det))


_ID = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def linear_matrix(phi: PolyMap):
    return tuple(tuple(img.coefficient(e) for e in ((1, 0), (0, 1))) for img in phi.images)


def _elem_matrix(e: ElemAuto):
    rows = [list(r) for r in _ID]
    other = 1 - e.axis
    rows[e.axis][e.axis] = e.scale
    rows[e.axis][other] = e.shift.coefficient((1, 0) if other == 0 else (0, 1))
    return tuple(tuple(r) for r in rows)


def _linear_form(h0: Fraction, h1: Fraction) -> Poly:
    return Poly.var(0, 2).scale(h0) + Poly.var(1, 2).scale(h1)


def _shear(axis: int, coef: Fraction) -> ElemAuto:
    return ElemAuto(axis, 1, Poly.var(1 - axis, 2).scale(coef))


def _scaling(axis: int, lam: Fraction) -> ElemAuto:
    return ElemAuto(axis, lam, Poly.zero(2))


def _decompose_linear(A) -> list:
    """Elementary factors (outermost first) of an invertible 2x2 matrix."""
    (p, q), (r, s) = A
    det = p * s - q * r
    if det == 0:
        raise NotAutomorphism("linear part is singular", stage="linear")
    if p != 0:
        return [ElemAuto(1, det / p, Poly.var(0, 2).scale(r / p)),
                ElemAuto(0, p, Poly.var(1, 2).scale(q))]
    # pivot on v: A = A' o swap, swap = (u, -v) o (u+v, v) o (u, v-u) o (u+v, v)
    swap = [_scaling(1, Fraction(-1)), _shear(0, Fraction(1)), _shear(1, Fraction(-1)), _shear(0, Fraction(1))]
    return _decompose_linear(((q, p), (s, r))) + swap


def jvdk_decompose(phi: PolyMap, grading: CyclicGrading | None = None) -> ElemSeq:
    """Split a plane automorphism into elementary factors by degree reduction.

    Raises :class:`NotAutomorphism` (with ``stage`` set) when the reduction
    gets stuck, which happens exactly when ``phi`` is not invertible.
    """
    if phi.arity != 2:
        raise UsageError("jvdk_decompose takes plane maps")
    origin_fixed = phi.fixes_origin()
    factors: list[ElemAuto] = []
    cur = list(phi.images)
    while max(p.total_degree() for p in cur) > 1:
        degs = [p.total_degree() for p in cur]
        idx = 0 if degs[0] > degs[1] else 1
        h, l = cur[idx], cur[1 - idx]
        dh, dl = degs[idx], degs[1 - idx]
        if dl < 1:
            raise NotAutomorphism(f"component {2 - idx} has degree {dl}", stage="degree")
        if dh % dl:
            raise NotAutomorphism(f"degree {dl} does not divide degree {dh}", stage="divisibility")
        k = dh // dl
        lf_h = h.leading_form()
        lf_lk = l.leading_form() ** k
        m0 = next(iter(lf_lk.terms))
        rho = lf_h.coefficient(m0) / lf_lk.coefficient(m0)
        if rho == 0 or lf_h != lf_lk.scale(rho):
            raise NotAutomorphism("leading forms are not proportional", stage="leading-form")
        reduced = h - (l ** k).scale(rho)
        if reduced.total_degree() + dl >= dh + dl:
            raise InternalError("degree reduction did not decrease total degree")
        factors.append(ElemAuto(idx, 1, Poly.var(1 - idx, 2) ** k * rho))
        cur[idx] = reduced
    consts = [p.constant_term() for p in cur]
    if any(consts):
        if origin_fixed:
            raise InternalError("origin-fixing input produced a translation")
        factors.append(ElemAuto(0, 1, Poly.const(consts[0], 2)))
        factors.append(ElemAuto(1, 1, Poly.const(consts[1], 2)))
    factors.extend(_decompose_linear(linear_matrix(PolyMap(tuple(cur)))))
    factors = [f for f in factors if not f.is_identity()]
    if grading is not None:
        for f in factors:
            if not is_graded(f.as_map(), grading):
                raise InternalError(f"emitted factor {f} is not graded")
    return ElemSeq(tuple(factors))


def has_normal_linear_part(e: ElemAuto) -> bool:
    """First-type factors must have linear part ``scale * u``."""
    return e.axis == 1 or e.shift.coefficient((0, 1)) == 0


def normalize_linear_parts(seq: ElemSeq, grading: CyclicGrading) -> ElemSeq:
    """Rewrite ``seq`` so that every first-type factor has linear part ``lambda*u``.

    Linear parts are pushed rightwards through the word.  A pending linear
    map ``L`` in front of a nonlinear factor is moved across it either by
    conjugation (when ``L`` keeps the factor's shift direction on an axis)
    or by the three-factor rewrite ``L o xi = C o E o (C^-1 o L o ell)``,
    where ``C`` is lower triangular and ``E`` is first-type.
    """
    for f in seq:
        if f.arity != 2:
            raise UsageError("normalize_linear_parts takes plane factors")
        if not f.fixes_origin():
            raise UsageError(f"factor {f} moves the origin")
        if not is_graded(f.as_map(), grading):
            raise UsageError(f"factor {f} is not graded")
    target = seq.compose()
    if linear_matrix(target)[0][1] != 0:
        raise UsageError("the composed map's first image has a v term in its linear part")

    out: list[ElemAuto] = []
    L = _ID
    for xi in seq:
        other = 1 - xi.axis
        ell = _elem_matrix(xi)
        nonlinear = xi.shift.without_degree_below(2)
        if not nonlinear.is_zero():
            d = (L[0][xi.axis], L[1][xi.axis])
            h0, h1 = _inverse(L)[other]
            def shifted(form: Poly) -> Poly:
                sub = [Poly.zero(2), Poly.zero(2)]
                sub[other] = form
                return nonlinear.substitute(sub)
            if d[1] == 0:
                assert h0 == 0
                out.append(ElemAuto(0, 1, shifted(_linear_form(0, h1)).scale(d[0])))
            elif d[0] == 0:
                assert h1 == 0
                out.append(ElemAuto(1, 1, shifted(_linear_form(h0, 0)).scale(d[1])))
            else:
                C = ((d[0], Fraction(0)), (d[1], Fraction(1)))
                out.append(_shear(1, d[1] / d[0]))
                out.append(_scaling(0, d[0]))
                out.append(ElemAuto(0, 1, shifted(_linear_form(0, h1))))
                L = _matmul(_inverse(C), L)
        L = _matmul(L, ell)
    (lam, q), (gam, delta) = L
    if q != 0:
        raise InternalError("leftover linear map is not lower triangular")
    out.append(ElemAuto(1, delta, Poly.var(0, 2).scale(gam / lam)))
    out.append(_scaling(0, lam))

    result = ElemSeq(tuple(f for f in out if not f.is_identity()))
    for f in result:
        if not has_normal_linear_part(f) or not f.fixes_origin() or not is_graded(f.as_map(), grading):
            raise InternalError(f"normalized factor {f} violates the postcondition")
    if result.compose() != target:
        raise InternalError("normalization changed the composed map")
    return result
