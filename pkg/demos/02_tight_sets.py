"""Tight 1-distance sets modulo a prime, and the determinant that forbids the rest.

The regular simplex plus two points is a 2-distance set over the reals with
distances {1, 2 + 2/d}. Modulo a prime dividing d + 2 the two values meet,
giving d + 2 points at a single modular distance.

Run: python3 demos/02_tight_sets.py
"""

from moddist import (
    QQ,
    distance_set,
    example_regular_plus_two,
    obstruction_determinant,
    place,
    primes_above,
    simplex_with_center,
    verify_tight_one_distance,
)

for d in (3, 5, 9):
    X = example_regular_plus_two(d)
    print(f"d={d}: field Q(sqrt {X.field.r}), distances {[str(a) for a in distance_set(X)]}")
    for p in (3, 5, 7, 11):
        for P in primes_above(X.field, p):
            v = verify_tight_one_distance(X, P)
            if v.is_tight:
                rep = obstruction_determinant(X, P)
                print(f"   tight at {P.label():>8}: det(M) = {rep.det}, d + 2 = {d + 2}")

# simplex plus its center works at p = 2 exactly when d = 2 mod 4
for d in (2, 4, 6, 8):
    v = verify_tight_one_distance(simplex_with_center(d), place(QQ, 2))
    print(f"simplex+center d={d}: sMod = {v.s_mod}, tight = {v.is_tight}")
