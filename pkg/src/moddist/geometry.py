"""Exact point sets, squared-distance matrices, Gram matrices and ranks.

A :class:`PointSet` keeps its coordinates in one quadratic field and carries
a global squared scale ``s``: the realized configuration is ``sqrt(s) * X``,
so every squared distance is ``s`` times the raw coordinate distance. This
lets irrational scalings such as ``1/sqrt(2)`` act without leaving the field.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .arith import QQ, FieldMismatchError, QElem, QuadField, as_fraction

__all__ = [
    "Model",
    "PointSet",
    "sqdist_matrix",
    "distance_set",
    "gram_double_centered",
    "rank_exact",
    "det_exact",
    "embedding_dimension",
    "gram_difference_matrix",
    "difference_gram_det",
    "to_field_matrix",
]


class Model(enum.Enum):
    HYPERPLANE = "hyperplane"  # H_d: coordinate sum 1 inside R^(d+1)
    CARTESIAN = "cartesian"


def _elem(field: QuadField, x) -> QElem:
    if isinstance(x, QElem):
        if x.field == field:
            return x
        return x.lift(field)
    return field(as_fraction(x))


@dataclass(frozen=True)
class PointSet:
    """A finite configuration ``sqrt(sq_scale) * points`` in R^d."""

    field: QuadField
    model: Model
    d: int
    points: tuple
    sq_scale: QElem

    def __post_init__(self):
        K = self.field
        if self.d < 0:
            raise ValueError(f"dimension must be nonnegative, got {self.d}")
        pts = tuple(tuple(_elem(K, x) for x in row) for row in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "sq_scale", _elem(K, self.sq_scale))
        width = self.coord_count
        for i, row in enumerate(pts):
            if len(row) != width:
                raise ValueError(f"point {i} has {len(row)} coordinates, expected {width}")
            if self.model is Model.HYPERPLANE and sum(row, K.zero) != 1:
                raise ValueError(f"point {i} does not lie in the hyperplane: coordinate sum {sum(row, K.zero)} != 1")
        if self.sq_scale.sign() != 1:
            raise ValueError(f"squared scale must be positive, got {self.sq_scale}")
        if len(set(pts)) != len(pts):
            seen = {}
            for i, row in enumerate(pts):
                if row in seen:
                    raise ValueError(f"points {seen[row]} and {i} coincide")
                seen[row] = i

    @classmethod
    def build(cls, field: QuadField, model: Model | str, d: int, points, sq_scale=1) -> "PointSet":
        return cls(field, Model(model), d, tuple(tuple(r) for r in points), sq_scale)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def coord_count(self) -> int:
        return self.d + 1 if self.model is Model.HYPERPLANE else self.d

    @cached_property
    def _sqdist(self) -> tuple:
        return tuple(tuple(row) for row in _sqdist_rows(self))

    @cached_property
    def _difference_gram(self) -> tuple[int, QElem]:
        # (rank, det) of the difference Gram matrix, shared by the dimension
        # and the determinant obstruction so each set is eliminated once
        if self.n == 1:
            return 0, self.field.one
        M = gram_difference_matrix(self)
        _, rank, pivots, swaps = _eliminate(M)
        if rank < len(M):
            return rank, self.field.zero
        det = self.field.one
        for v in pivots:
            det = det * v
        return rank, -det if swaps % 2 else det

    def rescaled(self, factor) -> "PointSet":
        """Multiply every squared distance by the positive ``factor``."""
        return PointSet(self.field, self.model, self.d, self.points, self.sq_scale * _elem(self.field, factor))

    def lifted(self, field: QuadField) -> "PointSet":
        """The same configuration with coordinates viewed in ``field``."""
        if field == self.field:
            return self
        try:
            pts = tuple(tuple(x.lift(field) for x in row) for row in self.points)
            s = self.sq_scale.lift(field)
        except FieldMismatchError:
            raise FieldMismatchError(f"point set over {self.field!r} does not embed in {field!r}") from None
        return PointSet(field, self.model, self.d, pts, s)


def sqdist_matrix(X: PointSet) -> list[list[QElem]]:
    """Squared distances ``s * |x_i - x_j|^2`` as a symmetric matrix."""
    return [list(row) for row in X._sqdist]


def _sqdist_rows(X: PointSet) -> list[list[QElem]]:
    K = X.field
    n = X.n
    zero = K.zero
    M = [[zero] * n for _ in range(n)]
    pts = X.points
    for i in range(n):
        xi = pts[i]
        for j in range(i + 1, n):
            acc = zero
            for a, b in zip(xi, pts[j]):
                if a != b:
                    t = a - b
                    acc = acc + t * t
            v = acc * X.sq_scale
            M[i][j] = v
            M[j][i] = v
    return M


def distance_set(X: PointSet) -> list[QElem]:
    """Distinct squared distances, in order of first appearance (row-major, i < j)."""
    if X.n < 2:
        raise ValueError("a distance set needs at least two points")
    M = sqdist_matrix(X)
    seen = {}
    for i in range(X.n):
        for j in range(i + 1, X.n):
            seen.setdefault(M[i][j], None)
    return list(seen)


def to_field_matrix(A) -> tuple[QuadField, list[list[QElem]]]:
    """Coerce a matrix of QElem / int / Fraction entries to one field."""
    fields = {x.field for row in A for x in row if isinstance(x, QElem) and not x.is_rational}
    if len(fields) > 1:
        raise FieldMismatchError(f"matrix mixes fields {sorted(f.r for f in fields)}")
    K = fields.pop() if fields else next(
        (x.field for row in A for x in row if isinstance(x, QElem)), QQ
    )
    return K, [[_elem(K, x) for x in row] for row in A]


def gram_double_centered(M) -> list[list[QElem]]:
    """``N = -1/2 (I - J/n) M (I - J/n)`` for a symmetric matrix ``M``."""
    K, M = to_field_matrix(M)
    n = len(M)
    if n == 0:
        return []
    inv_n = Fraction(1, n)
    row_mean = [sum(row, K.zero) * inv_n for row in M]
    col_mean = [sum((M[i][j] for i in range(n)), K.zero) * inv_n for j in range(n)]
    total = sum(row_mean, K.zero) * inv_n
    half = Fraction(-1, 2)
    return [[(M[i][j] - row_mean[i] - col_mean[j] + total) * half for j in range(n)] for i in range(n)]


def _eliminate(A):
    """Row echelon form by exact Gaussian elimination.

    Returns ``(field, rank, pivots, swaps)``.
    """
    K, rows = to_field_matrix(A)
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    swaps = 0
    pivots = []
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if rows[i][col]), None)
        if piv is None:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            swaps += 1
        pr = rows[rank]
        pv = pr[col]
        inv = pv.inverse()
        pivots.append(pv)
        for i in range(rank + 1, nrows):
            ri = rows[i]
            if ri[col]:
                factor = ri[col] * inv
                for j in range(col + 1, ncols):
                    if pr[j]:
                        ri[j] = ri[j] - factor * pr[j]
                ri[col] = K.zero
        rank += 1
        if rank == nrows:
            break
    return K, rank, pivots, swaps


def rank_exact(A) -> int:
    if not A or not A[0]:
        return 0
    return _eliminate(A)[1]


def det_exact(A) -> QElem:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return QQ.one
    K, rank, pivots, swaps = _eliminate(A)
    if rank < n:
        return K.zero
    det = K.one
    for p in pivots:
        det = det * p
    return -det if swaps % 2 else det


def embedding_dimension(X: PointSet) -> int:
    """Affine dimension of the configuration.

    Computed as the rank of the difference Gram matrix, which equals the rank
    of the double-centered Gram matrix (both are Gram matrices of the same
    vectors up to translation).
    """
    return X._difference_gram[0]


def difference_gram_det(X: PointSet) -> QElem:
    """``det(2 <x_i - x_0, x_j - x_0>)``, cached with the dimension."""
    return X._difference_gram[1]


def gram_difference_matrix(X: PointSet, base: int = 0, M=None) -> list[list[QElem]]:
    """``(2 <u_i, u_j>)`` for ``u_i = x_i - x_base``, from squared distances only.

    ``M`` may pass a precomputed squared-distance matrix.
    """
    if X.n < 2:
        raise ValueError("need at least two points")
    if not 0 <= base < X.n:
        raise IndexError(f"base index {base} out of range")
    M = sqdist_matrix(X) if M is None else M
    idx = [i for i in range(X.n) if i != base]
    return [[M[i][base] + M[j][base] - M[i][j] for j in idx] for i in idx]
