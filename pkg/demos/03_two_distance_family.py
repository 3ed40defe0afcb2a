"""When can the two distances of a simplex extension collapse modulo a prime?

For D = {1, a}, some prime identifies a with 1 exactly when 1/(1 - a) is not
an algebraic integer. The T-family grid compares that test with a closed form.

Run: python3 demos/03_two_distance_family.py
"""

from moddist import classify_t_family
from moddist.constructions import TFamilySpec, t_family
from moddist.geometry import distance_set

for d, k in [(4, 2), (4, 3), (6, 4), (8, 4)]:
    X = t_family(TFamilySpec(d, k))
    v = classify_t_family(d, k)
    where = v.place.label() + f" above {v.place.p}" if v.place else "none"
    print(f"d={d} k={k}: distances {[str(a) for a in distance_set(X)]}")
    print(f"           1/(1-a) = {v.lrs_ratio}, collapsing place: {where}, closed form agrees: {v.agree}")
