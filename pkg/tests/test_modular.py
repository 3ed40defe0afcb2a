import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moddist.arith import QQ, QuadField
from moddist.constructions import example_regular_plus_two, regular_simplex, simplex_with_center
from moddist.ideals import ord, place, primes_above, residue_equal
from moddist.modular import (
    check_cardinality_bound,
    find_collapsing_prime,
    lrs_ratios,
    mod_profile_sweep,
    normalize_distances,
    obstruction_determinant,
    predict_tight_existence,
    residue_partition,
    verify_tight_one_distance,
)

from conftest import qelems
from oracles import vp_fraction

F = Fraction


def test_normalize_example():
    P = place(QQ, 5)
    r, D = normalize_distances([5, 10], P)
    assert r == F(1, 5) and D == [1, 2]
    assert normalize_distances([5, 1], P) is None


def test_residue_partition_example():
    prof = residue_partition([1, 4, 2], place(QQ, 3))
    assert prof.residue_classes == [[0, 1], [2]]
    assert prof.s_mod == 2 and not prof.contains_zero_residue


def test_cardinality_bound():
    assert check_cardinality_bound(5, 3, 1)
    assert not check_cardinality_bound(6, 3, 1)
    assert check_cardinality_bound(15, 4, 2)  # C(6,2) + C(5,1) = 20
    assert not check_cardinality_bound(21, 4, 2)


def test_eq31_d3_is_tight_mod_5():
    X = example_regular_plus_two(3)
    v = verify_tight_one_distance(X, place(X.field, 5))
    assert v.is_tight and v.n == 5 and v.d == 3 and v.s_mod == 1
    rep = obstruction_determinant(X, place(X.field, 5))
    assert rep.det_is_zero and rep.pattern_holds and rep.consistent


def test_eq31_d3_not_tight_mod_3():
    X = example_regular_plus_two(3)
    v = verify_tight_one_distance(X, place(X.field, 3))
    assert not v.is_tight and "s-mod" in v.reasons


def test_simplex_center_d4_mod_2():
    X = simplex_with_center(4)
    v = verify_tight_one_distance(X, place(QQ, 2))
    assert not v.is_tight and v.s_mod == 2


def test_regular_simplex_is_not_tight():
    X = regular_simplex(4)
    v = verify_tight_one_distance(X, place(QQ, 3))
    assert v.reasons == ["size"] and v.s_mod == 1


def test_obstruction_rejects_non_one_distance():
    with pytest.raises(ValueError):
        obstruction_determinant(simplex_with_center(4), place(QQ, 2))


def test_obstruction_non_tight_one_distance_set():
    # the regular simplex is 1-distance everywhere but n = d + 1, so det(M) = det(J + I) = n
    rep = obstruction_determinant(regular_simplex(5), place(QQ, 7))
    assert not rep.applies and not rep.det_is_zero and rep.det == 6 and rep.consistent


@pytest.mark.parametrize(
    "d, p, expected",
    [(3, 5, True), (4, 3, True), (3, 3, False), (2, 2, True), (4, 2, False), (6, 2, True), (9, 11, True)],
)
def test_predict_tight_existence(d, p, expected):
    assert predict_tight_existence(d, p) is expected


def test_predict_odd_integral_variant():
    assert predict_tight_existence(14, 2, "odd_integral")
    assert not predict_tight_existence(6, 2, "odd_integral")


def test_lrs_example():
    assert lrs_ratios([1, F(2, 5)]) == [F(-2, 3), F(5, 3)]


@pytest.mark.parametrize("a", [F(2, 5), F(1, 3), F(8, 3), F(-4), F(7, 9)])
def test_collapsing_prime_rational(a):
    P = find_collapsing_prime(a)
    integral = (1 / (1 - a)).denominator == 1
    assert (P is None) == integral
    if P is not None:
        assert ord(P, a) >= 0 and residue_equal(P, a, 1)


def test_collapsing_prime_rejects_degenerate():
    with pytest.raises(ValueError):
        find_collapsing_prime(1)
    with pytest.raises(ValueError):
        find_collapsing_prime(0)


@settings(max_examples=200)
@given(qelems(max_num=40, max_den=9))
def test_collapsing_prime_iff_non_integral(a):
    if a == 0 or a == 1:
        return
    P = find_collapsing_prime(a)
    inv = (1 - a).inverse()
    # integrality through the minimal polynomial, independent of the library's predicate
    integral = inv.trace().denominator == 1 and inv.norm().denominator == 1
    assert (P is None) == integral
    if P is not None:
        assert ord(P, 1 - a) >= 1


@settings(max_examples=200)
@given(st.lists(qelems(field=QuadField(5)), min_size=2, max_size=5, unique=True))
def test_lrs_sum_is_one(D):
    if any(not a for a in D):
        return
    assert sum(lrs_ratios(D), QuadField(5).zero) == 1


@settings(max_examples=200)
@given(st.lists(st.fractions(min_value=F(1, 50), max_value=200, max_denominator=50), min_size=1, max_size=5),
       st.sampled_from([2, 3, 5, 7]))
def test_normalization_rational_oracle(D, p):
    D = [F(a) for a in D if a]
    if not D:
        return
    P = place(QQ, p)
    res = normalize_distances(D, P)
    vals = {vp_fraction(a, p) for a in D}
    assert (res is not None) == (len(vals) == 1)
    if res is not None:
        r, Dn = res
        assert r > 0
        assert all(vp_fraction(a.a, p) == 0 for a in Dn)


@pytest.mark.parametrize("d", [2, 4, 6, 8])
@pytest.mark.parametrize("r", [2, 3, 5])
def test_s_mod_invariant_under_extension(d, r):
    X = simplex_with_center(d)
    base = verify_tight_one_distance(X, place(QQ, 2)).s_mod
    K = QuadField(r)
    Y = X.lifted(K)
    for P in primes_above(K, 2):
        assert verify_tight_one_distance(Y, P).s_mod == base


def test_sweep_simplex_center_d6():
    rows = mod_profile_sweep(simplex_with_center(6), 13)
    assert [row.p for row in rows] == [2, 3, 5, 7, 11, 13]
    assert [row.s_mod for row in rows] == [1, 2, 2, 2, 2, 2]
    assert [row.tight for row in rows] == [True] + [False] * 5


def test_sweep_parallel_matches_serial():
    X = example_regular_plus_two(3)
    assert mod_profile_sweep(X, 30, jobs=2) == mod_profile_sweep(X, 30, jobs=1)


def test_sweep_split_places_listed_in_root_order():
    X = example_regular_plus_two(3)  # field Q
    K = QuadField(10)
    rows = mod_profile_sweep(X.lifted(K), 13)
    threes = [row for row in rows if row.p == 3]
    assert [row.c for row in threes] == [1, 2]
