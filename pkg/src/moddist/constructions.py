"""Explicit point configurations and the analyses built on them.

* the regular simplex and the simplex with its center, in the hyperplane
  model ``H_d = {x in R^(d+1) : sum(x) = 1}``;
* the ``d + 2`` point set made of ``d`` scaled basis vectors and two points
  on the diagonal (``example_regular_plus_two``);
* two-distance extensions of the simplex by one point (``t_family``);
* perturbations that keep residues modulo a place;
* the squared distance of a two-distance set read off from its graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import poly
from .arith import QQ, FieldMismatchError, QElem, QuadField, squarefree_part
from .geometry import Model, PointSet, distance_set, sqdist_matrix
from .ideals import PrimePlace, ord, residue_equal
from .modular import find_collapsing_prime, lrs_ratios, ord_profile

__all__ = [
    "Sign",
    "TFamilySpec",
    "TFamilyVerdict",
    "GraphParameter",
    "regular_simplex",
    "simplex_with_center",
    "example_regular_plus_two",
    "t_family",
    "classify_t_family",
    "closed_form_exists",
    "perturbation_exponent",
    "perturb",
    "graph_two_distance_parameter",
]

HALF = Fraction(1, 2)


def _unit(i: int, size: int) -> list[int]:
    row = [0] * size
    row[i] = 1
    return row


def regular_simplex(d: int) -> PointSet:
    """``e_1, ..., e_(d+1)`` in ``H_d`` with side length 1."""
    if d < 1:
        raise ValueError("d must be at least 1")
    return PointSet.build(QQ, Model.HYPERPLANE, d, [_unit(i, d + 1) for i in range(d + 1)], HALF)


def simplex_with_center(d: int) -> PointSet:
    """The unit regular simplex plus its barycenter."""
    if d < 1:
        raise ValueError("d must be at least 1")
    pts = [_unit(i, d + 1) for i in range(d + 1)]
    pts.append([Fraction(1, d + 1)] * (d + 1))
    return PointSet.build(QQ, Model.HYPERPLANE, d, pts, HALF)


def example_regular_plus_two(d: int) -> PointSet:
    """``(e_1, ..., e_d, (alpha,...,alpha), (beta,...,beta)) / sqrt(2)`` in R^d.

    ``alpha, beta = (1 +- sqrt(d+1)) / d``; the squared distances are
    ``1`` and ``1 + (d+2)/d``.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    K = QuadField.containing_sqrt(d + 1)
    root = K.sqrt(d + 1)
    alpha = (1 + root) / d
    beta = (1 - root) / d
    pts = [_unit(i, d) for i in range(d)]
    pts.append([alpha] * d)
    pts.append([beta] * d)
    return PointSet.build(K, Model.CARTESIAN, d, pts, HALF)


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class TFamilySpec:
    """Parameters of the point ``x`` with ``k`` coordinates ``c`` and the rest ``c + beta``."""

    d: int
    k: int
    sign: Sign = Sign.PLUS

    def __post_init__(self):
        object.__setattr__(self, "sign", Sign(self.sign))
        if self.d < 2:
            raise ValueError("d must be at least 2")
        if not 1 <= self.k <= self.d + 1:
            raise ValueError(f"k must lie in [1, {self.d + 1}], got {self.k}")

    @property
    def radicand(self) -> int:
        d, k = self.d, self.k
        return k * (d + 1) * (d + 2 - k)

    @property
    def field_r(self) -> int:
        if self.k in (1, self.d + 1):
            return 1
        return squarefree_part(self.radicand)[1]

    @property
    def field(self) -> QuadField:
        return QuadField(self.field_r)

    @property
    def beta(self) -> QElem:
        d, k = self.d, self.k
        K = self.field
        if k == 1:
            return K(1 + Fraction(2, d))
        if k == d + 1:
            return K(Fraction(-(d + 2), 2 * (d + 1)))
        root = K.sqrt(self.radicand)
        if self.sign is Sign.MINUS:
            root = -root
        return (k + root) / (k * (d + 1 - k))

    @property
    def c(self) -> QElem:
        d, k = self.d, self.k
        return Fraction(1, d + 1) - self.beta * Fraction(d + 1 - k, d + 1)


def t_family(spec: TFamilySpec) -> PointSet:
    """The simplex in ``H_d`` plus the point with first ``k`` coordinates ``c``."""
    d, k = spec.d, spec.k
    K = spec.field
    c = spec.c
    x = [c] * k + [c + spec.beta] * (d + 1 - k)
    pts = [[K(v) for v in _unit(i, d + 1)] for i in range(d + 1)]
    pts.append(x)
    try:
        X = PointSet.build(K, Model.HYPERPLANE, d, pts, HALF)
    except ValueError as exc:
        raise ValueError(f"degenerate parameters d={d}, k={k}: {exc}") from None
    D = distance_set(X)
    if len(D) != 2 or any(a.sign() <= 0 for a in D):
        raise ValueError(f"degenerate parameters d={d}, k={k}: distances {[str(a) for a in D]}")
    return X


def closed_form_exists(d: int, k: int) -> bool:
    """Closed-form criterion: ``k != (d+2)/2`` or ``d`` not divisible by 4."""
    return 2 * k != d + 2 or d % 4 != 0


@dataclass(frozen=True)
class TFamilyVerdict:
    d: int
    k: int
    closed_form: bool
    computed: bool
    lrs_ratio: QElem
    place: PrimePlace | None

    @property
    def agree(self) -> bool:
        return self.closed_form == self.computed


def classify_t_family(d: int, k: int, sign: Sign | str = Sign.PLUS) -> TFamilyVerdict:
    """Compare the closed-form criterion with a direct integrality test.

    The computed side builds the configuration, reads its two distances
    ``{1, a}`` and tests whether the LRS ratio ``1/(1-a)`` is an algebraic
    integer; if not, a place where ``a = 1`` is located.
    """
    spec = TFamilySpec(d, k, sign)
    if not 2 <= k <= d:
        raise ValueError("k = 1 and k = d+1 give rational distances; use find_collapsing_prime directly")
    if spec.field_r == 1:
        raise ValueError(f"sqrt({spec.radicand}) is rational for d={d}, k={k}")
    X = t_family(spec)
    D = distance_set(X)
    others = [x for x in D if x != 1]
    if len(D) != 2 or len(others) != 1:
        raise AssertionError(f"expected distances {{1, a}}, got {[str(x) for x in D]}")
    a = others[0]
    t = lrs_ratios([X.field.one, a])[1]
    computed = not t.is_integral()
    P = find_collapsing_prime(a)
    if (P is not None) != computed:
        raise AssertionError("collapsing prime search disagrees with integrality")
    return TFamilyVerdict(d, k, closed_form_exists(d, k), computed, t, P)


# ---------------------------------------------------------------------------
# perturbation


def _place_field_points(X: PointSet, P: PrimePlace) -> PointSet:
    if X.field == P.field:
        return X
    try:
        return X.lifted(P.field)
    except FieldMismatchError:
        raise FieldMismatchError(f"coordinates over {X.field!r} do not lie in the field of {P.label()}") from None


def perturbation_exponent(X: PointSet, P: PrimePlace) -> int:
    """``t = max(0, -min ord_P(2 x_ij))`` over all nonzero coordinates."""
    X = _place_field_points(X, P)
    ords = [ord(P, 2 * x) for row in X.points for x in row if x]
    return max(0, -min(ords, default=0))


def perturb(X: PointSet, P: PrimePlace, seeds) -> PointSet:
    """Move each point by ``pi**m * seed_i`` without changing distance residues at ``P``.

    ``m = t + 1 + h`` where ``t`` is :func:`perturbation_exponent` and ``h``
    compensates for the squared scale: ``h = max(0, N - ord_P(s))`` with ``N``
    the common valuation of the distances (``h = 0`` for unscaled sets whose
    distances are local units). In the hyperplane model the last entry of
    each seed row absorbs the row sum so the moved points stay in ``H_d``.
    """
    X = _place_field_points(X, P)
    K = X.field
    seeds = [list(row) for row in seeds]
    if len(seeds) != X.n or any(len(row) != X.coord_count for row in seeds):
        raise ValueError(f"seeds must be a {X.n} x {X.coord_count} integer array")
    if any(not isinstance(v, int) for row in seeds for v in row):
        raise TypeError("seeds must be integers")
    if X.model is Model.HYPERPLANE:
        for row in seeds:
            row[-1] -= sum(row)
    old = sqdist_matrix(X)
    old_vals = [v for row in old for v in row if v]
    ords = set(ord_profile(old_vals, P))
    if len(ords) != 1:
        raise ValueError(f"distances have unequal valuations {sorted(ords)} at {P.label()}")
    N = ords.pop()
    t = perturbation_exponent(X, P)
    h = max(0, N - ord(P, X.sq_scale))
    step = P.uniformizer ** (t + 1 + h)
    pts = [[x + step * s for x, s in zip(row, srow)] for row, srow in zip(X.points, seeds)]
    Y = PointSet(K, X.model, X.d, tuple(tuple(r) for r in pts), X.sq_scale)
    new = sqdist_matrix(Y)
    unscale = P.uniformizer ** (-N)
    for i in range(X.n):
        for j in range(i + 1, X.n):
            a, b = old[i][j] * unscale, new[i][j] * unscale
            if ord(P, b) != 0 or not residue_equal(P, a, b):
                raise RuntimeError(f"perturbation changed the residue of distance ({i}, {j})")
    return Y


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class GraphParameter:
    """Result of :func:`graph_two_distance_parameter`.

    ``status`` is ``"ok"``, ``"degenerate"`` (``lambda = 0`` or ``a`` outside
    ``(0, 1)``) or ``"unsupported"`` (the eigenvalue has degree > 2).
    """

    status: str
    a: QElem | None
    eigenvalue: QElem | None
    interval: tuple[Fraction, Fraction]
    minpoly: list


def _check_adjacency(adj) -> list[list[int]]:
    A = [list(row) for row in adj]
    n = len(A)
    if n < 2 or any(len(row) != n for row in A):
        raise ValueError("adjacency must be a square matrix of size >= 2")
    for i in range(n):
        if A[i][i] != 0:
            raise ValueError(f"adjacency has a loop at vertex {i}")
        for j in range(n):
            if A[i][j] not in (0, 1):
                raise ValueError(f"adjacency entry ({i}, {j}) is not 0/1")
            if A[i][j] != A[j][i]:
                raise ValueError(f"adjacency is not symmetric at ({i}, {j})")
    return [[int(v) for v in row] for row in A]


def _centered(A: list[list[int]]) -> list[list[Fraction]]:
    n = len(A)
    row = [Fraction(sum(r), n) for r in A]
    total = Fraction(sum(map(sum, A)), n * n)
    return [[A[i][j] - row[i] - row[j] + total for j in range(n)] for i in range(n)]


def _rational_minpoly_root(factor, lo, hi):
    """Exact root in ``(lo, hi]`` of an irreducible factor of degree <= 2."""
    if poly.degree(factor) == 1:
        return QQ(-factor[0] / factor[1])
    c0, c1, c2 = factor
    disc = c1 * c1 - 4 * c2 * c0
    K = QuadField.containing_sqrt(disc.numerator * disc.denominator)
    root = K.sqrt(disc)
    for cand in ((-c1 - root) / (2 * c2), (-c1 + root) / (2 * c2)):
        if cand > lo and cand <= hi:
            return cand
    raise AssertionError("quadratic root not found in its isolating interval")


def graph_two_distance_parameter(adj) -> GraphParameter:
    """The distance ``a = (lambda + 1) / lambda`` attached to a simple graph.

    ``lambda`` is the smallest eigenvalue of ``P A P`` restricted to the
    complement of the all-ones vector, ``P = I - J/n``. It is isolated by
    Sturm bisection on the exact characteristic polynomial and made exact
    when its minimal polynomial has degree at most 2.
    """
    A = _check_adjacency(adj)
    B = _centered(A)
    chi = poly.charpoly(B)
    # P A P kills the all-ones vector: drop one factor of x
    q, rem = poly.poly_divmod(chi, [0, 1])
    if rem:
        raise AssertionError("centered adjacency is not singular")
    lo, hi = poly.smallest_root_interval(q)
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(q))
    _, factors = sympy.factor_list(expr, x, domain="QQ")
    minpoly = None
    for fac, _mult in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(sympy.Poly(fac, x).all_coeffs())]
        if poly.degree(coeffs) >= 1 and poly.count_roots(poly.sturm_sequence(coeffs), lo, hi) == 1:
            minpoly = [c / coeffs[-1] for c in coeffs]
            break
    if minpoly is None:
        raise AssertionError("no irreducible factor vanishes in the isolating interval")
    if poly.degree(minpoly) > 2:
        return GraphParameter("unsupported", None, None, (lo, hi), minpoly)
    lam = _rational_minpoly_root(minpoly, lo, hi)
    if not lam:
        return GraphParameter("degenerate", None, lam, (lo, hi), minpoly)
    a = (lam + 1) / lam
    status = "ok" if 0 < a < 1 else "degenerate"
    return GraphParameter(status, a, lam, (lo, hi), minpoly)
