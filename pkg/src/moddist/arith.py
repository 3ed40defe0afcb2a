"""Exact arithmetic in real quadratic fields Q(sqrt(r)).

Rationals are :class:`fractions.Fraction`. A field element ``a + b*sqrt(r)``
is stored internally as three integers ``(A, B, D)`` with value
``(A + B*sqrt(r)) / D``, ``D > 0`` and ``gcd(A, B, D) == 1``, which is a
canonical form. ``r = 1`` stands for the rational field itself.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "FieldMismatchError",
    "OmegaKind",
    "QuadField",
    "QElem",
    "QQ",
    "as_fraction",
    "conj",
    "norm",
    "trace",
    "sign_real",
    "is_algebraic_integer",
    "squarefree_part",
    "to_integral_basis",
]


class FieldMismatchError(ValueError):
    """Raised when elements of two different fields are combined."""


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(q, r)`` with ``n == q*q*r`` and ``r`` squarefree.

    Trial division; meant for the small integers that appear as radicands.

    >>> squarefree_part(45)
    (3, 5)
    """
    if n <= 0:
        raise ValueError(f"squarefree_part needs a positive integer, got {n}")
    q, r = 1, 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            q *= p ** (e // 2)
            if e % 2:
                r *= p
        p += 1 if p == 2 else 2
    r *= m
    return q, r


def _square_factor(n: int) -> int | None:
    """Smallest prime p with p*p | n, or None."""
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return p
        p += 1 if p == 2 else 2
    return None


class OmegaKind(enum.Enum):
    SQRT_R = "sqrt_r"  # r = 2, 3 (mod 4): omega = sqrt(r)
    HALF_ONE_PLUS_SQRT_R = "half_one_plus_sqrt_r"  # r = 1 (mod 4): omega = (1 + sqrt(r))/2
    RATIONAL_FIELD = "rational_field"  # r = 1


class QuadField:
    """The real field Q(sqrt(r)) for a squarefree ``r >= 1``."""

    __slots__ = ("r",)

    def __init__(self, r: int):
        if isinstance(r, bool) or not isinstance(r, int):
            raise TypeError(f"r must be an integer, got {r!r}")
        if r < 1:
            raise ValueError(f"only real quadratic fields are supported (r >= 1), got r = {r}")
        p = _square_factor(r)
        if p is not None:
            raise ValueError(f"r = {r} is not squarefree: divisible by {p}^2 = {p * p}")
        object.__setattr__(self, "r", r)

    def __setattr__(self, name, value):
        raise AttributeError("QuadField is immutable")

    @classmethod
    def containing_sqrt(cls, n: int) -> "QuadField":
        """The field Q(sqrt(n)) for any positive integer n."""
        return cls(squarefree_part(n)[1])

    @property
    def is_rational(self) -> bool:
        return self.r == 1

    @property
    def omega_kind(self) -> OmegaKind:
        if self.r == 1:
            return OmegaKind.RATIONAL_FIELD
        if self.r % 4 == 1:
            return OmegaKind.HALF_ONE_PLUS_SQRT_R
        return OmegaKind.SQRT_R

    @property
    def discriminant(self) -> int:
        if self.r == 1:
            return 1
        return self.r if self.r % 4 == 1 else 4 * self.r

    def __call__(self, a=0, b=0) -> "QElem":
        return QElem(self, a, b)

    @property
    def zero(self) -> "QElem":
        return QElem._raw(self, 0, 0, 1)

    @property
    def one(self) -> "QElem":
        return QElem._raw(self, 1, 0, 1)

    @property
    def sqrt_r(self) -> "QElem":
        if self.r == 1:
            return self.one
        return QElem._raw(self, 0, 1, 1)

    @property
    def omega(self) -> "QElem":
        """Generator of the ring of integers over Z."""
        kind = self.omega_kind
        if kind is OmegaKind.RATIONAL_FIELD:
            return self.one
        if kind is OmegaKind.SQRT_R:
            return QElem._raw(self, 0, 1, 1)
        return QElem._raw(self, 1, 1, 2)

    def omega_minpoly(self) -> tuple[int, int]:
        """``(s, t)`` such that omega**2 = s*omega + t."""
        kind = self.omega_kind
        if kind is OmegaKind.SQRT_R:
            return 0, self.r
        if kind is OmegaKind.HALF_ONE_PLUS_SQRT_R:
            return 1, (self.r - 1) // 4
        raise ValueError("the rational field has no quadratic generator")

    def sqrt(self, n) -> "QElem":
        """The positive square root of a nonnegative rational ``n`` in this field."""
        n = as_fraction(n)
        if n < 0:
            raise ValueError("negative radicand")
        if n == 0:
            return self.zero
        num, den = n.numerator * n.denominator, n.denominator
        q, r = squarefree_part(num)
        if r == 1:
            return self(Fraction(q, den))
        if r != self.r:
            raise FieldMismatchError(f"sqrt({n}) does not lie in Q(sqrt({self.r}))")
        return self(0, Fraction(q, den))

    def __eq__(self, other):
        return isinstance(other, QuadField) and other.r == self.r

    def __hash__(self):
        return hash(("QuadField", self.r))

    def __repr__(self):
        return "QQ" if self.r == 1 else f"QuadField({self.r})"

    def __reduce__(self):
        return (QuadField, (self.r,))


QQ = QuadField(1)


class QElem:
    """An element ``a + b*sqrt(r)`` of a :class:`QuadField`; immutable."""

    __slots__ = ("field", "_A", "_B", "_D")

    def __init__(self, field: QuadField, a=0, b=0):
        a = as_fraction(a)
        b = as_fraction(b)
        if field.r == 1:
            a, b = a + b, Fraction(0)
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        A = a.numerator * (den // a.denominator)
        B = b.numerator * (den // b.denominator)
        self._set(field, A, B, den)

    def _set(self, field, A, B, D):
        g = math.gcd(A, B, D)
        if g != 1:
            A //= g
            B //= g
            D //= g
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_A", A)
        object.__setattr__(self, "_B", B)
        object.__setattr__(self, "_D", D)

    @classmethod
    def _raw(cls, field, A, B, D):
        obj = object.__new__(cls)
        obj._set(field, A, B, D)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QElem is immutable")

    def __reduce__(self):
        return (QElem, (self.field, self.a, self.b))

    @property
    def a(self) -> Fraction:
        return Fraction(self._A, self._D)

    @property
    def b(self) -> Fraction:
        return Fraction(self._B, self._D)

    @property
    def is_rational(self) -> bool:
        return self._B == 0

    def lift(self, field: QuadField) -> "QElem":
        """View this element inside ``field`` (allowed from Q or same field)."""
        if field == self.field:
            return self
        if self._B != 0:
            raise FieldMismatchError(f"{self!r} does not lie in {field!r}")
        return QElem._raw(field, self._A, 0, self._D)

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "QElem":
        if isinstance(other, QElem):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return QElem._raw(self.field, other, 0, 1)
        if isinstance(other, Fraction):
            return QElem._raw(self.field, other.numerator, 0, other.denominator)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._D == o._D:
            return QElem._raw(self.field, self._A + o._A, self._B + o._B, self._D)
        return QElem._raw(
            self.field,
            self._A * o._D + o._A * self._D,
            self._B * o._D + o._B * self._D,
            self._D * o._D,
        )

    __radd__ = __add__

    def __neg__(self):
        return QElem._raw(self.field, -self._A, -self._B, self._D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._B == 0 and o._B == 0:
            return QElem._raw(self.field, self._A * o._A, 0, self._D * o._D)
        r = self.field.r
        return QElem._raw(
            self.field,
            self._A * o._A + r * self._B * o._B,
            self._A * o._B + self._B * o._A,
            self._D * o._D,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QElem":
        # 1/x = conj(x) / norm(x); norm numerator A^2 - r B^2 over D^2
        n = self._A * self._A - self.field.r * self._B * self._B
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QElem._raw(self.field, self._A * self._D, -self._B * self._D, n) if n > 0 else QElem._raw(
            self.field, -self._A * self._D, self._B * self._D, -n
        )

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure --------------------------------------------------------

    def conj(self) -> "QElem":
        return QElem._raw(self.field, self._A, -self._B, self._D)

    def norm(self) -> Fraction:
        return Fraction(self._A * self._A - self.field.r * self._B * self._B, self._D * self._D)

    def trace(self) -> Fraction:
        return Fraction(2 * self._A, self._D)

    def sign(self) -> int:
        """Sign of the real embedding, decided exactly."""
        A, B = self._A, self._B
        sa = (A > 0) - (A < 0)
        sb = (B > 0) - (B < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare A^2 with r B^2
        cmp = A * A - self.field.r * B * B
        return sa if cmp > 0 else -sa

    def is_integral(self) -> bool:
        tr = self.trace()
        nm = self.norm()
        return tr.denominator == 1 and nm.denominator == 1

    def integral_coords(self) -> tuple[Fraction, Fraction]:
        """Coordinates ``(u, v)`` with ``x = u + v*omega``."""
        kind = self.field.omega_kind
        if kind is OmegaKind.HALF_ONE_PLUS_SQRT_R:
            # a + b sqrt(r) = (a - b) + 2b * (1 + sqrt r)/2
            return self.a - self.b, 2 * self.b
        if kind is OmegaKind.SQRT_R:
            return self.a, self.b
        return self.a, Fraction(0)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.field.r)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QElem):
            if other.field != self.field:
                # rationals compare across fields
                if self._B == 0 and other._B == 0:
                    return self._A == other._A and self._D == other._D
                return False
            return self._A == other._A and self._B == other._B and self._D == other._D
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._B == 0 and Fraction(self._A, self._D) == other
        return NotImplemented

    def __hash__(self):
        if self._B == 0:
            return hash(Fraction(self._A, self._D))
        return hash((self.field.r, self._A, self._B, self._D))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return self._A != 0 or self._B != 0

    def __repr__(self):
        if self._B == 0:
            return f"QElem({self.field!r}, {self.a})"
        return f"QElem({self.field!r}, {self.a}, {self.b})"

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        root = f"sqrt({self.field.r})"
        bpart = root if b == 1 else f"-{root}" if b == -1 else f"{b}*{root}"
        if a == 0:
            return bpart
        sep = " - " if b < 0 else " + "
        bmag = root if abs(b) == 1 else f"{abs(b)}*{root}"
        return f"{a}{sep}{bmag}"


def conj(x: QElem) -> QElem:
    return x.conj()


def norm(x: QElem) -> Fraction:
    return x.norm()


def trace(x: QElem) -> Fraction:
    return x.trace()


def sign_real(x: QElem) -> int:
    return x.sign()


def is_algebraic_integer(x: QElem) -> bool:
    """True iff ``x`` lies in the ring of integers of its field."""
    return x.is_integral()


def to_integral_basis(x: QElem) -> tuple[Fraction, Fraction]:
    return x.integral_coords()
