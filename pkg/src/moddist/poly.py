"""Exact univariate polynomials over Q and Sturm-sequence root isolation.

Polynomials are lists of Fractions, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "trim",
    "degree",
    "evaluate",
    "derivative",
    "poly_divmod",
    "poly_gcd",
    "squarefree",
    "charpoly",
    "sturm_sequence",
    "sign_changes",
    "count_roots",
    "root_bound",
    "isolate_roots",
    "smallest_root_interval",
]


def trim(f):
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f) -> int:
    return len(f) - 1


def evaluate(f, x):
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def derivative(f):
    return trim([i * c for i, c in enumerate(f)][1:])


def poly_divmod(f, g):
    f, g = trim(f), trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    lead = g[-1]
    while len(r) >= len(g) and r:
        shift = len(r) - len(g)
        coef = r[-1] / lead
        q[shift] = coef
        for i, gc in enumerate(g):
            r[shift + i] -= coef * gc
        r = trim(r)
    return trim(q), r


def _monic(f):
    return [c / f[-1] for c in f] if f else f


def poly_gcd(f, g):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, poly_divmod(f, g)[1]
    return _monic(f)


def squarefree(f):
    """``f / gcd(f, f')``, monic."""
    f = trim(f)
    g = poly_gcd(f, derivative(f))
    return _monic(poly_divmod(f, g)[0]) if degree(g) > 0 else _monic(f)


def charpoly(A):
    """Characteristic polynomial ``det(x I - A)`` by Faddeev-LeVerrier.

    ``A`` is a square matrix of rationals; the result is monic of degree n.
    """
    n = len(A)
    A = [[Fraction(x) for x in row] for row in A]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]  # M_0 = 0
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        c_prev = coeffs[n - k + 1]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += c_prev
        M = AM
        AMk = sum(sum(A[i][t] * M[t][i] for t in range(n)) for i in range(n))
        coeffs[n - k] = -AMk / k
    return coeffs


def sturm_sequence(f):
    f = trim(f)
    seq = [f, derivative(f)]
    while seq[-1]:
        r = poly_divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def sign_changes(seq, x) -> int:
    signs = []
    for s in seq:
        v = evaluate(s, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq, lo, hi) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    return sign_changes(seq, lo) - sign_changes(seq, hi)


def root_bound(f) -> Fraction:
    """Cauchy bound: every real root lies strictly inside ``(-B, B)``."""
    f = trim(f)
    lead = abs(f[-1])
    return 1 + max((abs(c) / lead for c in f[:-1]), default=Fraction(0))


def isolate_roots(f, width=None):
    """Disjoint intervals ``(lo, hi]``, each holding exactly one real root of ``f``.

    Intervals are sorted left to right; when ``width`` is given every
    interval is bisected further until it is no wider than ``width``.
    """
    f = squarefree(f)
    if degree(f) < 1:
        return []
    seq = sturm_sequence(f)
    B = root_bound(f)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        k = count_roots(seq, lo, hi)
        if k == 0:
            continue
        if k == 1 and (width is None or hi - lo <= width):
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def smallest_root_interval(f, width=None) -> tuple[Fraction, Fraction]:
    """An isolating interval ``(lo, hi]`` for the smallest real root of ``f``."""
    f = squarefree(f)
    if degree(f) < 1:
        raise ValueError("polynomial has no roots")
    seq = sturm_sequence(f)
    lo, hi = -root_bound(f), root_bound(f)
    if count_roots(seq, lo, hi) == 0:
        raise ValueError("polynomial has no real roots")
    # keep the leftmost half that still holds a root
    while True:
        k = count_roots(seq, lo, hi)
        if k == 1 and (width is None or hi - lo <= width):
            return lo, hi
        mid = (lo + hi) / 2
        if count_roots(seq, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
