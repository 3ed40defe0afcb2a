"""Prime places, ideals and valuations in real quadratic fields.

A place is a nonzero prime ideal of the ring of integers. Valuations are
computed with an anti-uniformizer ``tau``: an element with valuation -1 at
the place and nonnegative valuation everywhere else, so that for integral
``y`` the valuation is the largest ``k`` with ``y * tau**k`` still integral.

Ideals are carried as Hermite normal form Z-modules in the basis
``{1, omega}``; they serve as an independent check on the valuation routine.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy

from .arith import QQ, FieldMismatchError, QElem, QuadField, as_fraction

__all__ = [
    "Splitting",
    "PrimePlace",
    "IdealHNF",
    "primes_above",
    "place",
    "ideal_from_generators",
    "ideal_mul",
    "ideal_contains",
    "ideal_power",
    "unit_ideal",
    "ord",
    "residue_equal",
    "residue_is_zero",
    "factor_principal",
    "valuation_cap",
]

INF = math.inf

#: hard cap on the valuation search loop
valuation_cap = 64


class Splitting(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"
    RATIONAL = "rational"  # the place pZ of Q itself


@dataclass(frozen=True)
class PrimePlace:
    """A prime ideal above the rational prime ``p``.

    ``c`` is the root of the minimal polynomial of omega modulo ``p`` that
    defines the ideal ``(p, omega - c)``; it is ``None`` for inert primes and
    for the rational field.
    """

    field: QuadField
    p: int
    splitting: Splitting
    c: int | None
    f: int = dc_field(compare=False)
    e: int = dc_field(compare=False)
    uniformizer: QElem = dc_field(compare=False, repr=False)
    anti_uniformizer: QElem = dc_field(compare=False, repr=False)
    generator: QElem | None = dc_field(compare=False, repr=False, default=None)

    @property
    def ord2(self) -> int:
        return self.e if self.p == 2 else 0

    @property
    def g(self) -> int:
        """Number of places above ``p`` (so that e*f*g == degree)."""
        return 2 if self.splitting is Splitting.SPLIT else 1

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.p, -1 if self.c is None else self.c)

    def hnf(self) -> "IdealHNF":
        """The place as an ideal ``(p, omega - c)`` (or ``(p)`` if inert)."""
        if self.field.is_rational:
            raise ValueError("HNF ideals are only defined for quadratic fields")
        gens = [self.field(self.p)]
        if self.generator is not None:
            gens.append(self.generator)
        return ideal_from_generators(self.field, gens)

    def label(self) -> str:
        if self.c is None:
            return f"({self.p})"
        return f"({self.p}, w-{self.c})"


def _check_prime(p: int) -> None:
    if isinstance(p, bool) or not isinstance(p, int) or not sympy.isprime(p):
        raise ValueError(f"{p!r} is not a rational prime")


def _splitting(K: QuadField, p: int) -> Splitting:
    r = K.r
    if p == 2:
        if r % 4 in (2, 3):
            return Splitting.RAMIFIED
        return Splitting.SPLIT if r % 8 == 1 else Splitting.INERT
    if r % p == 0:
        return Splitting.RAMIFIED
    return Splitting.SPLIT if pow(r % p, (p - 1) // 2, p) == 1 else Splitting.INERT


def _positive(x: QElem) -> QElem:
    return -x if x.sign() < 0 else x


def primes_above(K: QuadField, p: int) -> list[PrimePlace]:
    """All places of ``K`` above ``p``, ordered by the root ``c``."""
    _check_prime(p)
    if K.is_rational:
        return [
            PrimePlace(QQ, p, Splitting.RATIONAL, None, f=1, e=1,
                       uniformizer=QQ(p), anti_uniformizer=QQ(Fraction(1, p)))
        ]
    kind = _splitting(K, p)
    if kind is Splitting.INERT:
        return [
            PrimePlace(K, p, kind, None, f=2, e=1,
                       uniformizer=K(p), anti_uniformizer=K(Fraction(1, p)))
        ]
    s, t = K.omega_minpoly()
    roots = [c for c in range(p) if (c * c - s * c - t) % p == 0]
    omega = K.omega
    places = []
    for c in roots:
        g = omega - c
        if kind is Splitting.SPLIT:
            if g.norm().numerator % (p * p) == 0:
                g = omega - (c + p)
            tau = g.conj() / p
            e, f = 1, 1
        else:
            tau = g / p
            e, f = 2, 1
        places.append(
            PrimePlace(K, p, kind, c, f=f, e=e,
                       uniformizer=_positive(g), anti_uniformizer=tau, generator=g)
        )
    if kind is Splitting.SPLIT and len(places) != 2:
        raise AssertionError(f"expected two roots for split prime {p} in {K!r}")
    return places


def place(K: QuadField, p: int, c: int | None = None) -> PrimePlace:
    """Select the place above ``p`` with root ``c`` (required when ``p`` splits)."""
    places = primes_above(K, p)
    if c is None:
        if len(places) > 1:
            raise ValueError(f"{p} splits in {K!r}; pass the root c (one of {[P.c for P in places]})")
        return places[0]
    for P in places:
        if P.c == c % p:
            return P
    raise ValueError(f"no place above {p} with root {c} in {K!r}")


# ---------------------------------------------------------------------------
# valuations


def _vp(n: int, p: int) -> int:
    if n == 0:
        return INF
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _vp_fraction(x: Fraction, p: int) -> int:
    return _vp(x.numerator, p) - _vp(x.denominator, p)


def _coerce(P: PrimePlace, x) -> QElem:
    if not isinstance(x, QElem):
        return P.field(as_fraction(x))
    if x.field != P.field:
        try:
            return x.lift(P.field)
        except FieldMismatchError:
            raise FieldMismatchError(f"{x!r} is not in the field of {P!r}") from None
    return x


def _integral_ord(P: PrimePlace, y: QElem) -> int:
    """Valuation of a nonzero integral element by the anti-uniformizer loop."""
    p = P.p
    k = 0
    u, v = y.integral_coords()
    u, v = int(u), int(v)
    # strip rational factors of p first; each contributes e
    while u % p == 0 and v % p == 0:
        u //= p
        v //= p
        k += P.e
    z = y.field(u) + y.field(v) * y.field.omega
    tau = P.anti_uniformizer
    steps = 0
    while True:
        w = z * tau
        if not w.is_integral():
            return k
        z = w
        k += 1
        steps += 1
        if steps > valuation_cap:
            raise ArithmeticError(f"valuation search exceeded {valuation_cap} steps at {P.label()}")


def ord(P: PrimePlace, x) -> int | float:
    """The valuation of ``x`` at the place ``P``; ``math.inf`` for zero."""
    x = _coerce(P, x)
    if not x:
        return INF
    if P.field.is_rational:
        return _vp_fraction(x.a, P.p)
    # x = y / D with y = A + B sqrt(r) integral
    y = QElem._raw(x.field, x._A, x._B, 1)
    return _integral_ord(P, y) - P.e * _vp(x._D, P.p)


def residue_equal(P: PrimePlace, x, y) -> bool:
    """Whether ``x`` and ``y`` agree modulo the maximal ideal of the localization."""
    x = _coerce(P, x)
    y = _coerce(P, y)
    if ord(P, x) < 0 or ord(P, y) < 0:
        raise ValueError(f"residues need nonnegative valuation at {P.label()}")
    return x == y or ord(P, x - y) >= 1


def residue_is_zero(P: PrimePlace, x) -> bool:
    v = ord(P, x)
    if v < 0:
        raise ValueError(f"residues need nonnegative valuation at {P.label()}")
    return v >= 1


def _prime_support(n: int) -> list[int]:
    return sorted(sympy.factorint(abs(n))) if abs(n) > 1 else []


def factor_principal(x) -> list[tuple[PrimePlace, int]]:
    """Places with nonzero valuation of ``x`` and the valuations, in (p, c) order."""
    if isinstance(x, QElem):
        K = x.field
    else:
        K = QQ
        x = QQ(as_fraction(x))
    if not x:
        raise ValueError("cannot factor zero")
    y = QElem._raw(K, x._A, x._B, 1)
    primes = set(_prime_support(x._D))
    nm = y.norm()
    primes.update(_prime_support(nm.numerator))
    out = []
    for p in sorted(primes):
        for P in primes_above(K, p):
            v = ord(P, x)
            if v != 0:
                out.append((P, v))
    return out


# ---------------------------------------------------------------------------
# ideals as Hermite normal form Z-modules


@dataclass(frozen=True)
class IdealHNF:
    """The Z-module ``m*Z + (c + d*omega)*Z`` with ``0 <= c < m`` and ``d | m``."""

    field: QuadField
    m: int
    c: int
    d: int

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.m, 0), (self.c, self.d))

    @property
    def basis(self) -> tuple[QElem, QElem]:
        K = self.field
        return K(self.m), K(self.c) + K(self.d) * K.omega

    def norm(self) -> int:
        return self.m * self.d

    def __contains__(self, x) -> bool:
        return ideal_contains(self, x)


def _int_coords(x: QElem) -> tuple[int, int]:
    u, v = x.integral_coords()
    if u.denominator != 1 or v.denominator != 1:
        raise ValueError(f"{x} is not an algebraic integer")
    return int(u), int(v)


def _hnf(field: QuadField, vectors: list[tuple[int, int]]) -> IdealHNF:
    cu, d = 0, 0
    rest = 0
    for u, v in vectors:
        if v == 0:
            rest = math.gcd(rest, u)
            continue
        g, s, t = _xgcd(d, v)
        rest = math.gcd(rest, (v // g) * cu - (d // g) * u)
        cu, d = s * cu + t * u, g
    if d == 0 or rest == 0:
        raise ValueError("generators span a module of rank < 2 (zero ideal?)")
    if d < 0:
        cu, d = -cu, -d
    m = abs(rest)
    return IdealHNF(field, m, cu % m, d)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def ideal_from_generators(K: QuadField, gens) -> IdealHNF:
    """HNF of the ideal generated by the given algebraic integers."""
    if K.is_rational:
        raise ValueError("HNF ideals are only defined for quadratic fields")
    omega = K.omega
    vectors = []
    for g in gens:
        g = g if isinstance(g, QElem) else K(as_fraction(g))
        if g.field != K:
            g = g.lift(K)
        vectors.append(_int_coords(g))
        vectors.append(_int_coords(g * omega))
    return _hnf(K, vectors)


def ideal_mul(I: IdealHNF, J: IdealHNF) -> IdealHNF:
    if I.field != J.field:
        raise FieldMismatchError("ideals from different fields")
    vectors = [_int_coords(a * b) for a in I.basis for b in J.basis]
    return _hnf(I.field, vectors)


def ideal_power(I: IdealHNF, k: int) -> IdealHNF:
    result = IdealHNF(I.field, 1, 0, 1)
    for _ in range(k):
        result = ideal_mul(result, I)
    return result


def ideal_contains(I: IdealHNF, x) -> bool:
    x = x if isinstance(x, QElem) else I.field(as_fraction(x))
    u, v = x.integral_coords()
    if u.denominator != 1 or v.denominator != 1:
        return False
    u, v = int(u), int(v)
    if v % I.d:
        return False
    return (u - (v // I.d) * I.c) % I.m == 0


def unit_ideal(K: QuadField) -> IdealHNF:
    return IdealHNF(K, 1, 0, 1)

