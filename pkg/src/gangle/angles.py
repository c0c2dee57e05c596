"""g-angles: vector-vector, line-vs-subspace and plane-vs-subspace.

Vector angles use the signed cosine g(y, x) / (|x| |y|) and live in [0, pi].
Subspace angles are defined through cos^2 and live in [0, pi/2]:

* line vs t-dim subspace -- cos^2 = g(u_V, u)^2 / (|u|^2 |u_V|^2) with u_V the
  g-orthogonal projection of u onto V.  The projected-length ratio
  |u_V|^2 / |u|^2 is reported alongside: the two coincide in inner-product
  spaces but need not elsewhere, so the gap is measured, never assumed zero.
* plane vs t-dim subspace -- cos^2 = L(u1_V, u2_V)^2 / L(u1, u2)^2 where L is
  the parallelogram-area functional of :func:`lambda_functional`.

Out-of-range cos^2 beyond round-off slack raises ConsistencyError instead of
being clamped silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .errors import ConsistencyError, DegenerateSubspaceError, ZeroVectorError
from .gram import Subspace, det, left_orthonormalize, project
from .semi_inner import g
from .vectors import (
    Coeff,
    LpSpace,
    SparseVector,
    Space,
    exact_sqrt,
    norm,
    norm_sq,
    sgn,
)

_CLAMP_SLACK = 1e-12

PATH_VECTOR = "vector"
PATH_LINE_PROJECTION = "dim1-projection"
PATH_LINE_EXPLICIT = "dim1-explicit-sum"
PATH_PLANE_LAMBDA = "dim2-lambda"


@dataclass(frozen=True)
class AngleResult:
    """cos^2, the angle in radians, and which computation path produced it.

    ``cos`` is the signed cosine (vector path only).  ``cos_sq_ratio`` is the
    projected-length ratio and ``ratio_gap`` its absolute deviation from
    ``cos_sq`` (line-subspace path only)."""

    cos_sq: Coeff
    angle_rad: float
    path: str
    cos: Optional[float] = None
    cos_sq_ratio: Optional[Coeff] = None
    ratio_gap: Optional[float] = None


@dataclass(frozen=True)
class LambdaValue:
    """Parallelogram-area functional: value_sq = |x|^2 |y|^2 - |g(x,y)| |g(y,x)|.

    ``value`` is its square root -- exact when the square root is rational,
    a float otherwise."""

    value: Coeff
    value_sq: Coeff


def _clamp_unit(v, what: str = "cos^2"):
    """Force v into [0, 1], allowing only round-off slack for floats."""
    if not isinstance(v, float):
        if v < 0 or v > 1:
            raise ConsistencyError(f"{what} = {v} falls outside [0, 1]")
        return v
    if -_CLAMP_SLACK <= v < 0.0:
        return 0.0
    if 1.0 < v <= 1.0 + _CLAMP_SLACK:
        return 1.0
    if v < 0.0 or v > 1.0:
        raise ConsistencyError(f"{what} = {v} falls outside [0, 1] beyond round-off slack")
    return v


def _subspace_angle(cos_sq) -> float:
    return math.acos(math.sqrt(float(cos_sq)))


def vector_angle(x: SparseVector, y: SparseVector, space: Space) -> AngleResult:
    """Angle between nonzero vectors: arccos of g(y, x) / (|x| |y|).

    Note the argument order: the semi-inner product takes y in its first
    slot, so the angle is generally not symmetric in (x, y)."""
    if x.is_zero or y.is_zero:
        raise ZeroVectorError("the angle between vectors needs both nonzero")
    gyx = g(y, x, space)
    nsx = norm_sq(x, space)
    nsy = norm_sq(y, space)
    cos = float(gyx) / math.sqrt(float(nsx) * float(nsy))
    if cos < -1.0 - _CLAMP_SLACK or cos > 1.0 + _CLAMP_SLACK:
        raise ConsistencyError(f"cosine {cos} falls outside [-1, 1] beyond round-off slack")
    cos = max(-1.0, min(1.0, cos))
    cos_sq = _clamp_unit(gyx * gyx / (nsx * nsy))
    return AngleResult(cos_sq, math.acos(cos), PATH_VECTOR, cos=cos)


def angle_line_subspace(u: SparseVector, V: Subspace) -> AngleResult:
    """Angle between span{u} and V, via the g-orthogonal projection of u.

    If the projection is zero the angle is pi/2 by convention (the primary
    formula degenerates to 0/0 there)."""
    if u.is_zero:
        raise ZeroVectorError("the line must be spanned by a nonzero vector")
    pr = project(u, V)
    u_v = pr.projected
    nsu = norm_sq(u, V.space)
    if u_v.is_zero or (
        isinstance(nsu, float) and norm_sq(u_v, V.space) <= 1e-24 * nsu
    ):
        zero = 0.0 if isinstance(nsu, float) else Fraction(0)
        return AngleResult(
            zero, math.pi / 2, PATH_LINE_PROJECTION, cos_sq_ratio=zero, ratio_gap=0.0
        )
    nsuv = norm_sq(u_v, V.space)
    guvu = g(u_v, u, V.space)
    primary = _clamp_unit(guvu * guvu / (nsu * nsuv))
    ratio = nsuv / nsu  # can exceed 1 when |u_V| > |u|; reported, not clamped
    return AngleResult(
        primary,
        _subspace_angle(primary),
        PATH_LINE_PROJECTION,
        cos_sq_ratio=ratio,
        ratio_gap=abs(float(primary) - float(ratio)),
    )


def cos_sq_explicit_sum(u: SparseVector, V: Subspace) -> Coeff:
    """cos^2 of the line-vs-subspace angle by the explicit multi-index sum.

    Left g-orthonormalizes the basis of V, then accumulates, over the finite
    union of supports, weighted (t+1)-by-(t+1) determinants whose rows are the
    orthonormalized basis vectors and whose bottom row holds the coordinates
    of u.  Equals the projected-length ratio |u_V*|^2 / |u|^2 for the
    projection onto the orthonormalized basis.  t <= 3 only (the sum has t+1
    nested indices)."""
    space = V.space
    if not isinstance(space, LpSpace):
        raise ValueError("the explicit sum is defined for lp spaces only")
    t = V.dim
    if t > 3:
        raise ValueError("explicit sum limited to subspaces of dimension <= 3")
    if u.is_zero:
        raise ZeroVectorError("the line must be spanned by a nonzero vector")
    starred = left_orthonormalize(V.basis, space)
    p = space.p
    nu = norm(u, space)
    exact = not isinstance(nu, float)
    supports = [v.support for v in starred]
    outer_cols = sorted(set().union(*supports))

    def weight(vec, idx):
        v = vec.get(idx)
        if exact:
            if p == 1:
                return sgn(v)
            return v  # p == 2: |v| * sgn(v)
        return abs(v) ** (float(p) - 1.0) * sgn(v)

    total = Fraction(0) if exact else 0.0
    for j_last in outer_cols:
        inner = Fraction(0) if exact else 0.0
        for combo in product(*supports):
            w = 1
            for i, j_i in enumerate(combo):
                w *= weight(starred[i], j_i)
            cols = combo + (j_last,)
            rows = [[v.get(c) for c in cols] for v in starred]
            rows.append([u.get(c) for c in combo] + [0])
            inner += w * det(rows)
        total += abs(inner / nu) ** (p if exact else float(p))
    if exact:
        return total * total if p == 1 else total
    return total ** (2.0 / float(p))


def lambda_functional(x: SparseVector, y: SparseVector, space: Space) -> LambdaValue:
    """Area-like functional |x|^2 |y|^2 - |g(x,y)| |g(y,x)| under a root.

    Zero for linearly dependent pairs; symmetric; absolutely homogeneous in
    each slot; bounded by |x| |y|.  Fails the triangle inequality in general
    normed spaces."""
    nsx = norm_sq(x, space)
    nsy = norm_sq(y, space)
    gxy = g(x, y, space)
    gyx = g(y, x, space)
    value_sq = nsx * nsy - abs(gxy) * abs(gyx)
    if value_sq < 0:
        if isinstance(value_sq, float) and abs(value_sq) <= _CLAMP_SLACK * max(
            float(nsx) * float(nsy), 1e-300
        ):
            value_sq = 0.0
        else:
            raise ConsistencyError(
                f"squared area {value_sq} is negative beyond round-off slack"
            )
    if isinstance(value_sq, Fraction):
        root = exact_sqrt(value_sq)
        value = root if root is not None else math.sqrt(float(value_sq))
    else:
        value = math.sqrt(value_sq)
    return LambdaValue(value, value_sq)


def angle_plane_subspace(U: Subspace, V: Subspace) -> AngleResult:
    """Angle between a 2-dimensional U and a t-dimensional V (t >= 2):
    cos^2 is the squared-area ratio of the projected spanning pair."""
    if U.dim != 2:
        raise ValueError("U must be spanned by exactly two vectors")
    if V.dim < 2:
        raise ValueError("V must have dimension at least 2")
    space = V.space
    u1, u2 = U.basis
    lam = lambda_functional(u1, u2, space)
    base_sq = lam.value_sq
    if base_sq == 0 or (
        isinstance(base_sq, float)
        and base_sq
        <= _CLAMP_SLACK * float(norm_sq(u1, space)) * float(norm_sq(u2, space))
    ):
        raise DegenerateSubspaceError(
            "the spanning pair of U has zero area; the angle is undefined"
        )
    p1 = project(u1, V)
    p2 = project(u2, V)
    lam_proj = lambda_functional(p1.projected, p2.projected, space)
    cos_sq = _clamp_unit(lam_proj.value_sq / base_sq)
    return AngleResult(cos_sq, _subspace_angle(cos_sq), PATH_PLANE_LAMBDA)
