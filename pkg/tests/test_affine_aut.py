import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qdsym import affine_aut as aff
from qdsym.modarith import GroupParams, StructureError, roots_of_unity, units


@st.composite
def labels(draw, max_k=12):
    p = GroupParams(draw(st.integers(2, max_k)))
    r = draw(st.sampled_from(units(p.m)))
    s = draw(st.integers(0, p.n - 1))
    return aff.AffineAut(r, s, p)


def iterate_order(t):
    """Order of x -> r x + s on Z_n by repeated application to every point."""
    n = t.params.n
    points = list(range(n))
    current, v = [t(x) for x in points], 1
    while current != points:
        current, v = [t(x) for x in current], v + 1
    return v


def test_validation():
    p = GroupParams(6)
    with pytest.raises(ValueError):
        aff.AffineAut(2, 0, p)
    with pytest.raises(ValueError):
        aff.AffineAut(5, 12, p)
    assert aff.AffineAut.of(29, -1, p).label == (5, 11)


def test_map_vs_label_equality():
    p = GroupParams(6)
    a, b = aff.AffineAut(5, 3, p), aff.AffineAut(17, 3, p)
    assert a == b and hash(a) == hash(b)
    assert not a.same_label(b)
    assert aff.AffineAut(13, 0, p).is_identity()
    assert str(a) == "5 x + 3 (mod n=12)"
    assert a.to_json() == {"r": 5, "s": 3, "n": 12, "m": 24}


@given(labels(), st.data())
def test_compose_is_function_composition(t1, data):
    p = t1.params
    t2 = aff.AffineAut(data.draw(st.sampled_from(units(p.m))), data.draw(st.integers(0, p.n - 1)), p)
    c = aff.compose(t1, t2)
    assert all(c(x) == t1(t2(x)) for x in range(p.n))


def test_compose_rejects_mixed_groups():
    with pytest.raises(StructureError):
        aff.compose(aff.AffineAut(1, 0, GroupParams(2)), aff.AffineAut(1, 0, GroupParams(3)))


@given(labels())
def test_inverse(t):
    assert aff.compose(t, aff.inverse(t)).is_identity()
    assert aff.compose(aff.inverse(t), t).is_identity()


@given(labels(max_k=25))
def test_affine_order_matches_point_iteration(t):
    assert aff.affine_order(t) == iterate_order(t)


@given(labels(max_k=25), st.integers(1, 6))
def test_order_criterion(t, v):
    assert aff.satisfies_order(t, v) == (v % iterate_order(t) == 0)


def test_order_three_examples():
    p = GroupParams(7)
    assert aff.affine_order(aff.AffineAut(9, 6, p)) == 3
    assert aff.affine_order(aff.AffineAut(9, 12, p)) == 3


@pytest.mark.parametrize("k", range(2, 13))
@pytest.mark.parametrize("v", range(1, 7))
def test_aut_v_count(k, v):
    p = GroupParams(k)
    brute = [t for t in aff.all_labels(p) if v % iterate_order(t) == 0]
    listed = aff.enumerate_aut_v(v, p)
    assert {t.label for t in listed} == {t.label for t in brute}
    assert aff.count_aut_v(v, p) == len(brute)


def test_aut_v_example():
    assert aff.count_aut_v(3, GroupParams(7)) == 30


def test_conjugacy_examples():
    p = GroupParams(8)
    assert aff.are_conjugate(aff.AffineAut(7, 3, p), aff.AffineAut(7, 14, p)) == (False, None)
    ok, witness = aff.are_conjugate(aff.AffineAut(7, 3, p), aff.AffineAut(7, 11, p))
    assert ok
    f, g = witness
    assert (f * 3 - 11 - g * 6) % p.n == 0


@settings(deadline=None)
@given(labels(max_k=6), st.data())
def test_conjugacy_criterion_vs_sigma_search(t1, data):
    p = t1.params
    t2 = aff.AffineAut(t1.r if data.draw(st.booleans()) else data.draw(st.sampled_from(units(p.m))),
                       data.draw(st.integers(0, p.n - 1)), p)
    ok, _ = aff.are_conjugate(t1, t2)
    sigma = aff.brute_conjugate(t1, t2)
    assert ok == (sigma is not None)
    if sigma:
        s_aut = aff.AffineAut(*sigma, p)
        assert aff.compose(s_aut, t1).same_label(aff.compose(t2, s_aut))


@settings(deadline=None, max_examples=30)
@given(labels(max_k=8))
def test_brute_class_matches_sigma_search(t):
    p = t.params
    klass = aff.brute_conjugacy_class(t)
    for other in aff.all_labels(p):
        assert (other.label in klass) == (aff.brute_conjugate(t, other) is not None)


@pytest.mark.parametrize("k", [2, 3, 5, 6, 8])
@pytest.mark.parametrize("v", [2, 3, 4])
def test_equivalence_classes_partition_aut_v(k, v):
    p = GroupParams(k)
    classes = aff.equivalence_classes(v, p)
    seen = [rep.label for c in classes for rep in c.representatives]
    assert sorted(seen) == sorted(t.label for t in aff.enumerate_aut_v(v, p))
    for c in classes:
        rep = c.representative
        for other in c.representatives:
            assert aff.are_conjugate(rep, other)[0]


def test_class_total_qd40():
    assert len(aff.equivalence_classes(2, GroupParams(5))) == 8


def test_orbit_count_examples():
    p = GroupParams(5)
    assert aff.orbit_quotient(9, 2, p) == Fraction(2)
    assert aff.orbit_count_formula(9, 2, p) == 2
    assert len(aff.unit_orbits_on_cosets(9, 2, p)) == 2


@pytest.mark.parametrize("k", range(2, 26))
def test_orbit_count_divisor_formula(k):
    p = GroupParams(k)
    for v in (2, 3, 4):
        for r in roots_of_unity(v, p):
            predicted = aff.orbit_count_formula(r, v, p)
            assert predicted is not None
            assert len(aff.unit_orbits_on_cosets(r, v, p)) == predicted


def test_involution_root_counts():
    assert aff.involution_root_count(GroupParams(24)) == 16
    for k in range(2, 201):
        p = GroupParams(k)
        assert aff.involution_root_count(p) == aff.involution_root_count_formula(p)


@pytest.mark.parametrize("k", range(2, 51))
def test_n_r_bound(k):
    p = GroupParams(k)
    for r in roots_of_unity(2, p):
        nr = aff.n_r(r, p)
        assert nr in (1, 2)
        assert (nr == 2) == aff.n_r_two_case(r, p)
        # independent count of Z_n-classes {y : (r+1) y = 0} / <r-1>
        n = p.n
        ann = [y for y in range(n) if ((r + 1) * y) % n == 0]
        step = math.gcd(r - 1, n)
        assert nr == len({y % step for y in ann})


def test_class_count_witness_qd384():
    p = GroupParams(48)
    assert aff.involution_class_count(p) == 8
    assert aff.class_count_witness(p) == (1, 31, 65, 95, 97, 127, 161, 191)
    assert aff.n_r(5, GroupParams(6)) == 2


@pytest.mark.parametrize("k", range(2, 13))
def test_aut2_sum(k):
    p = GroupParams(k)
    brute = sum(1 for t in aff.all_labels(p) if aff.compose(t, t).is_identity())
    assert aff.count_aut_2(p) == brute
