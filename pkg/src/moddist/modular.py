"""Distance sets modulo a prime place.

The squared distances of a configuration are reduced modulo the maximal
ideal of the localization at a place ``P``. Residues are never built
explicitly: two local integers agree modulo ``P`` exactly when their
difference has positive valuation, which is all that counting classes needs.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy

from .arith import QQ, QElem, QuadField, as_fraction
from .geometry import PointSet, difference_gram_det, distance_set, embedding_dimension, gram_difference_matrix
from .ideals import PrimePlace, factor_principal, ord, primes_above, residue_equal, residue_is_zero

__all__ = [
    "DistanceProfile",
    "TightVerdict",
    "ObstructionReport",
    "SweepRow",
    "Variant",
    "ord_profile",
    "normalize_distances",
    "residue_partition",
    "check_cardinality_bound",
    "verify_tight_one_distance",
    "obstruction_determinant",
    "predict_tight_existence",
    "lrs_ratios",
    "find_collapsing_prime",
    "mod_profile_sweep",
]


def _in_field(P: PrimePlace, x) -> QElem:
    if isinstance(x, QElem):
        return x if x.field == P.field else x.lift(P.field)
    return P.field(as_fraction(x))


def ord_profile(D, P: PrimePlace) -> list[int]:
    """Valuation of each distance at ``P``."""
    out = []
    for a in D:
        v = ord(P, a)
        if v == math.inf:
            raise ValueError("zero distance in a distance list")
        out.append(v)
    return out


def normalize_distances(D, P: PrimePlace) -> tuple[QElem, list[QElem]] | None:
    """Rescale ``D`` into the units of the local ring at ``P``.

    Returns ``(r, [r*a for a in D])`` with ``r`` a positive power of the
    uniformizer when every distance has the same valuation ``n``; otherwise
    ``None`` (no positive scaler makes all of them nonzero residues).
    """
    D = [_in_field(P, a) for a in D]
    ords = ord_profile(D, P)
    if len(set(ords)) > 1:
        return None
    n = ords[0] if ords else 0
    r = P.uniformizer ** (-n)
    return r, [r * a for a in D]


def _shift_nonnegative(D: list[QElem], P: PrimePlace, ords: list[int]) -> tuple[QElem, list[QElem]]:
    r = P.uniformizer ** (-min(ords))
    return r, [r * a for a in D]


@dataclass(frozen=True)
class DistanceProfile:
    distances: list
    place: PrimePlace
    ords: list
    residue_classes: list  # blocks of indices into ``distances``
    contains_zero_residue: bool

    @property
    def s_mod(self) -> int:
        return len(self.residue_classes)


def residue_partition(D, P: PrimePlace) -> DistanceProfile:
    """Group local integers by their residue modulo ``P``."""
    D = [_in_field(P, a) for a in D]
    ords = ord_profile(D, P)
    if any(v < 0 for v in ords):
        raise ValueError(f"distances with negative valuation at {P.label()} have no residue")
    blocks: list[list[int]] = []
    for i, a in enumerate(D):
        for block in blocks:
            if residue_equal(P, D[block[0]], a):
                block.append(i)
                break
        else:
            blocks.append([i])
    zero = any(residue_is_zero(P, a) for a in D)
    return DistanceProfile(D, P, ords, blocks, zero)


def check_cardinality_bound(n: int, d: int, s: int) -> bool:
    """``n <= C(d+s, s) + C(d+s-1, s-1)``."""
    if n < 1 or d < 1 or s < 1:
        raise ValueError("n, d and s must be positive")
    return n <= math.comb(d + s, s) + math.comb(d + s - 1, s - 1)


@dataclass(frozen=True)
class TightVerdict:
    is_tight: bool
    n: int
    d: int
    s_mod: int
    reasons: list
    place: PrimePlace = dc_field(repr=False)
    normalizable: bool = True
    zero_residue: bool = False
    scaler: QElem | None = dc_field(default=None, repr=False)
    distances: list = dc_field(default_factory=list, repr=False)
    residues: DistanceProfile | None = dc_field(default=None, repr=False)


def _profile_of(D: list[QElem], P: PrimePlace):
    ords = ord_profile(D, P)
    normalizable = len(set(ords)) == 1
    r, shifted = _shift_nonnegative(D, P, ords)
    return normalizable, r, residue_partition(shifted, P)


def verify_tight_one_distance(X: PointSet, P: PrimePlace, *, d: int | None = None) -> TightVerdict:
    """Decide whether ``X`` is a tight 1-distance set modulo ``P``.

    The dimension is the rank of the Gram matrix unless ``d`` is passed
    (callers that already computed it). Every failing clause is listed in
    ``reasons``.
    """
    if d is None:
        d = embedding_dimension(X)
    D = [_in_field(P, a) for a in distance_set(X)]
    normalizable, r, prof = _profile_of(D, P)
    reasons = []
    if X.n != d + 2:
        reasons.append("size")
    if not normalizable:
        reasons.append("not-normalizable")
    if prof.s_mod != 1:
        reasons.append("s-mod")
    if prof.contains_zero_residue:
        reasons.append("zero-residue")
    tight = X.n == d + 2 and prof.s_mod == 1 and not prof.contains_zero_residue
    return TightVerdict(
        tight, X.n, d, prof.s_mod, reasons, P,
        normalizable=normalizable,
        zero_residue=prof.contains_zero_residue,
        scaler=r,
        distances=prof.distances,
        residues=prof,
    )


@dataclass(frozen=True)
class ObstructionReport:
    n: int
    d: int
    det: QElem
    det_is_zero: bool
    pattern_holds: bool
    det_congruent_to_n: bool
    n_mod_p: int
    n_mod_4: int | None
    applies: bool  # n == d + 2, so the chain forces p | n

    @property
    def consistent(self) -> bool:
        """The three assertions hold and, when applicable, ``p | d + 2``."""
        if not self.pattern_holds or not self.det_congruent_to_n:
            return False
        if self.applies:
            return self.det_is_zero and self.n_mod_p == 0
        return True


def obstruction_determinant(X: PointSet, P: PrimePlace) -> ObstructionReport:
    """Check the determinant chain ``0 = det M = det(J + I) = n (mod P)``.

    ``X`` must be a 1-distance set modulo ``P``; it is first rescaled so that
    one of its distances is 1, making every distance congruent to 1.
    """
    verdict = verify_tight_one_distance(X, P)
    if verdict.s_mod != 1 or verdict.zero_residue:
        raise ValueError(f"not a 1-distance set modulo {P.label()}: {verdict.reasons}")
    first = distance_set(X)[0]
    Y = X.rescaled(first.inverse())
    M = gram_difference_matrix(Y)
    size = len(M)
    seen = {}  # M has only a handful of distinct entries

    def congruent(x, target):
        key = (x, target)
        if key not in seen:
            seen[key] = ord(P, x) >= 0 and residue_equal(P, x, target)
        return seen[key]

    pattern = all(congruent(M[i][j], 2 if i == j else 1) for i in range(size) for j in range(size))
    # M = M_X / first, so det M = det M_X / first^size
    det = difference_gram_det(X) / first ** size
    n = X.n
    congruent = ord(P, det - n) >= 1
    return ObstructionReport(
        n=n,
        d=verdict.d,
        det=det,
        det_is_zero=not det,
        pattern_holds=pattern,
        det_congruent_to_n=congruent,
        n_mod_p=n % P.p,
        n_mod_4=n % 4 if P.p == 2 else None,
        applies=n == verdict.d + 2,
    )


class Variant(enum.Enum):
    GENERAL = "general"
    ODD_INTEGRAL = "odd_integral"  # squared odd distances, 2 unramified


def predict_tight_existence(d: int, p: int, variant: Variant | str = Variant.GENERAL) -> bool:
    """Whether a tight 1-distance set modulo a place above ``p`` exists in R^d."""
    variant = Variant(variant)
    if d < 1:
        raise ValueError("dimension must be positive")
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if variant is Variant.ODD_INTEGRAL:
        if p != 2:
            raise ValueError("the odd-integral variant only concerns p = 2")
        return (d + 2) % 16 == 0
    if p == 2:
        return d % 4 == 2
    return (d + 2) % p == 0


def lrs_ratios(D) -> list:
    """``k_i = prod_{j != i} a_j / (a_j - a_i)``."""
    D = list(D)
    if len(D) < 2:
        raise ValueError("need at least two distances")
    if any(not a for a in D):
        raise ValueError("zero distance")
    if len(set(D)) != len(D):
        raise ValueError("repeated distance")
    out = []
    for i, ai in enumerate(D):
        k = Fraction(1) if not isinstance(ai, QElem) else ai.field.one
        for j, aj in enumerate(D):
            if j != i:
                k = k * aj / (aj - ai)
        out.append(k)
    return out


def find_collapsing_prime(a) -> PrimePlace | None:
    """A place where ``a = 1`` modulo the maximal ideal, if one exists.

    For ``D = {1, a}`` this exists exactly when the LRS ratio ``1/(1-a)``
    is not an algebraic integer.
    """
    if not isinstance(a, QElem):
        a = QQ(as_fraction(a))
    if a == 0 or a == 1:
        raise ValueError("a must differ from 0 and 1")
    one_minus = 1 - a
    if one_minus.inverse().is_integral():
        return None
    for P, v in factor_principal(one_minus):
        if v >= 1:
            return P
    raise AssertionError("non-integral LRS ratio without a positive valuation")


@dataclass(frozen=True)
class SweepRow:
    p: int
    splitting: str
    c: int | None
    normalizable: bool
    s_mod: int
    zero_residue: bool
    tight: bool

    def as_tuple(self):
        return (self.p, self.splitting, self.c, self.normalizable, self.s_mod, self.zero_residue, self.tight)


def _sweep_prime(args) -> list[SweepRow]:
    field, D, n, d, p = args
    rows = []
    for P in primes_above(field, p):
        Dp = [_in_field(P, a) for a in D]
        normalizable, _, prof = _profile_of(Dp, P)
        tight = n == d + 2 and prof.s_mod == 1 and not prof.contains_zero_residue
        rows.append(SweepRow(p, P.splitting.value, P.c, normalizable, prof.s_mod, prof.contains_zero_residue, tight))
    return rows


def mod_profile_sweep(X: PointSet, p_max: int, jobs: int = 1, field: QuadField | None = None) -> list[SweepRow]:
    """One row per place above every prime ``p <= p_max``, in (p, c) order.

    Places are taken in ``field`` (default: the point set's own field).
    """
    if p_max < 2:
        raise ValueError("p_max must be at least 2")
    field = X.field if field is None else field
    D = distance_set(X)
    d = embedding_dimension(X)
    tasks = [(field, D, X.n, d, p) for p in sympy.primerange(2, p_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_sweep_prime, tasks))
    else:
        chunks = [_sweep_prime(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]
