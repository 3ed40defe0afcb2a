"""Exact arithmetic in Q(sqrt 10), and how a prime splits there.

Run: python3 demos/01_field_arithmetic.py
"""

from fractions import Fraction

from moddist import QuadField, ord, primes_above

K = QuadField(10)
x = K(Fraction(1, 3), Fraction(1, 3))  # (1 + sqrt 10) / 3
print("x           =", x)
print("norm, trace =", x.norm(), x.trace())
print("integral?   ", x.is_integral())
print("x * conj(x) =", x * x.conj())

# 3 splits in Q(sqrt 10) because 10 = 1 is a square mod 3
for P in primes_above(K, 3):
    print(f"place {P.label():>10}  ord(x) = {ord(P, x):+d}  ord(1+sqrt10) = {ord(P, K(1, 1))}")

# sign decisions are exact, even for near-cancellations
K2 = QuadField(2)
y = K2(665857, -470832)
print("665857 - 470832*sqrt2 is", "positive" if y.sign() > 0 else "not positive", f"(about {float(y):.3e})")
