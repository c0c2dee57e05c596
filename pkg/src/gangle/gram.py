"""Gram matrices, g-orthogonal projections and left g-orthonormalization.

The projection of y onto span{x_1, ..., x_n} is the vector y_S in the span
whose residual satisfies g(x_i, y - y_S) = 0 for every basis vector.  It is
computed from the n-by-n linear system

    sum_k c_k * g(x_i, x_k) = g(x_i, y),        y_S = sum_k c_k * x_k,

which is equivalent (by Cramer's rule) to the bordered-determinant formula;
:func:`project_bordered` implements the literal first-row cofactor expansion
for n <= 3 as a cross-check oracle.

Beware that g is not linear in its first argument, so for p != 2 the
projection genuinely depends on the *basis* chosen for the span, not just on
the span itself (the orthogonality conditions g(x_i, r) = 0 are attached to
the basis vectors).  Likewise left g-orthonormalization depends on the order
of the input vectors.  Neither is "fixed" here; callers choose the basis.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .errors import DegenerateSubspaceError, DependenceError, ZeroVectorError
from .semi_inner import g
from .vectors import EXACT, Coeff, SparseVector, Space, norm

# Scale-aware float singularity threshold: |det| <= REL_SINGULAR * prod(diag)
# is treated as a zero Gram determinant (the diagonal entries are |x_i|^2).
REL_SINGULAR = 1e-10


def det(rows: Sequence[Sequence[Coeff]]) -> Coeff:
    """Determinant by Gaussian elimination with partial pivoting.

    Works for Fraction and float entries alike (exact for Fractions)."""
    n = len(rows)
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    sign = 1
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0:
            return a[0][0] * 0  # zero in the right backend
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
    result = a[0][0]
    for i in range(1, n):
        result = result * a[i][i]
    return sign * result


def det_cofactor(rows: Sequence[Sequence[Coeff]]) -> Coeff:
    """Determinant by first-row cofactor expansion (reference path)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = rows[0][0] * 0
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = rows[0][j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def solve(rows: Sequence[Sequence[Coeff]], rhs: Sequence[Coeff]) -> list:
    """Solve a square linear system by elimination with partial pivoting."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0:
            raise DegenerateSubspaceError("singular linear system")
        a[col], a[pivot] = a[pivot], a[col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            for c in range(col, n + 1):
                a[r][c] -= f * a[col][c]
    x = [None] * n
    for i in range(n - 1, -1, -1):
        acc = a[i][n]
        for j in range(i + 1, n):
            acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return x


@dataclass(frozen=True)
class GramData:
    """Matrix [g(x_i, x_k)] (row i, column k) and its determinant."""

    matrix: Tuple[Tuple[Coeff, ...], ...]
    det: Coeff

    @property
    def diagonal_product(self) -> Coeff:
        prod = self.matrix[0][0]
        for i in range(1, len(self.matrix)):
            prod = prod * self.matrix[i][i]
        return prod

    @property
    def is_degenerate(self) -> bool:
        if isinstance(self.det, Fraction):
            return self.det == 0
        return abs(self.det) <= REL_SINGULAR * abs(float(self.diagonal_product))


def gram(basis: Sequence[SparseVector], space: Space) -> GramData:
    """Gram data of an ordered set of nonzero vectors."""
    basis = tuple(basis)
    if not basis:
        raise ValueError("basis must be nonempty")
    if any(v.is_zero for v in basis):
        raise ZeroVectorError("basis vectors must be nonzero")
    matrix = tuple(tuple(g(xi, xk, space) for xk in basis) for xi in basis)
    return GramData(matrix, det(matrix))


def certifies_independence(data: GramData) -> bool:
    """True guarantees linear independence of the set behind ``data``.

    False is inconclusive: independent sets can have a zero Gram determinant
    in a general normed space."""
    return not data.is_degenerate


class Subspace:
    """Ordered basis of nonzero vectors plus its ambient space.

    Gram data is computed lazily, once, and shared across threads."""

    def __init__(self, basis: Sequence[SparseVector], space: Space):
        basis = tuple(basis)
        if not basis:
            raise ValueError("a subspace needs at least one basis vector")
        if any(v.is_zero for v in basis):
            raise ZeroVectorError("basis vectors must be nonzero")
        self.basis = basis
        self.space = space
        self._gram = None
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def gram(self) -> GramData:
        if self._gram is None:
            with self._lock:
                if self._gram is None:
                    self._gram = gram(self.basis, self.space)
        return self._gram

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, space={self.space!r})"


@dataclass(frozen=True)
class Projection:
    """Result of projecting y: coefficients c with y_S = sum c_k x_k,
    the projected vector, and the residual y - y_S."""

    coefficients: Tuple[Coeff, ...]
    projected: SparseVector
    residual: SparseVector


def project(y: SparseVector, sub: Subspace) -> Projection:
    """g-orthogonal projection of y onto the subspace's basis."""
    data = sub.gram()
    if data.is_degenerate:
        raise DegenerateSubspaceError(
            "Gram determinant is zero; the projection is undefined"
        )
    rhs = [g(xi, y, sub.space) for xi in sub.basis]
    coeffs = solve(data.matrix, rhs)
    projected = SparseVector()
    for c, xk in zip(coeffs, sub.basis):
        projected = projected.add(xk.scale(c))
    return Projection(tuple(coeffs), projected, y.sub(projected))


def project_bordered(y: SparseVector, sub: Subspace) -> SparseVector:
    """Literal cofactor expansion of the bordered determinant whose first row
    carries the basis vectors.  Cross-check oracle; n <= 3 only."""
    n = sub.dim
    if n > 3:
        raise ValueError("bordered cofactor expansion is provided only for n <= 3")
    data = sub.gram()
    if data.is_degenerate:
        raise DegenerateSubspaceError("Gram determinant is zero")
    rhs = [g(xi, y, sub.space) for xi in sub.basis]
    # Numeric part of the bordered matrix: column 0 holds g(x_i, y), columns
    # 1..n hold the Gram matrix.  Expanding along the first row (0, x_1..x_n):
    # y_S = -(1/Gamma) * sum_j (-1)^j x_j * minor(0, j).
    numeric = [[rhs[i]] + list(data.matrix[i]) for i in range(n)]
    result = SparseVector()
    for j in range(1, n + 1):
        minor = [[row[c] for c in range(n + 1) if c != j] for row in numeric]
        cofactor = det(minor) if n > 1 else minor[0][0]
        term = sub.basis[j - 1].scale(cofactor)
        result = result.add(term.scale(-1) if j % 2 == 1 else term)
    return result.scale(-1 / data.det if isinstance(data.det, float) else Fraction(-1) / data.det)


def left_orthonormalize(basis: Sequence[SparseVector], space: Space) -> list:
    """Gram-Schmidt-like recursion producing unit vectors x_k* with
    g(x_k*, x_l*) = 0 for k < l.  Order-sensitive by construction."""
    out = []
    for k, xk in enumerate(basis):
        if k == 0:
            residual = xk
        else:
            residual = project(xk, Subspace(out, space)).residual
        if residual.is_zero:
            raise DependenceError(f"vector {k + 1} lies in the span of its predecessors")
        r = norm(residual, space)
        if isinstance(r, float) and r <= 1e-12 * max(float(norm(xk, space)), 1e-300):
            raise DependenceError(f"vector {k + 1} lies in the span of its predecessors")
        out.append(residual.scale(1 / r if isinstance(r, float) else Fraction(1) / r))
    return out
