import pytest
from hypothesis import given, strategies as st

from qdsym import affine_aut as aff
from qdsym.canonical_aut import (
    ActionKind,
    CanonicalAut,
    action_array,
    apply,
    canonical_order,
    canonical_order_closed,
    compose_canonical,
    enumerate_canonical,
    is_automorphism,
)
from qdsym.modarith import GroupParams, SizeGuardError, euler_phi, units
from qdsym.qd_group import IDENTITY, GroupElement, all_elements, multiply


@st.composite
def thetas(draw, max_k=10):
    p = GroupParams(draw(st.integers(2, max_k)))
    return CanonicalAut(draw(st.sampled_from(units(p.m))), draw(st.integers(0, p.n - 1)), p)


def test_generators_images():
    p = GroupParams(6)
    t = CanonicalAut(5, 3, p)
    assert apply(t, GroupElement(1, 0)) == GroupElement(5, 0)
    assert apply(t, GroupElement(0, 1)) == GroupElement(6, 1)
    assert t.to_json() == {"r": 5, "s": 3, "kind": "canonical"}
    with pytest.raises(ValueError):
        CanonicalAut(3, 0, p)


@given(thetas())
def test_apply_matches_action_array(t):
    p = t.params
    for kind in ActionKind:
        arr = action_array(t.r, t.s, kind, p)
        for g in all_elements(p):
            assert arr[g.index(p)] == apply(t, g, kind).index(p)


@given(thetas(), st.data())
def test_canonical_is_homomorphism_sampled(t, data):
    p = t.params
    x = GroupElement(data.draw(st.integers(0, p.m - 1)), data.draw(st.integers(0, 1)))
    y = GroupElement(data.draw(st.integers(0, p.m - 1)), data.draw(st.integers(0, 1)))
    assert apply(t, multiply(x, y, p)) == multiply(apply(t, x), apply(t, y), p)


@pytest.mark.parametrize("k", range(2, 7))
def test_canonical_family_valid_and_counted(k):
    p = GroupParams(k)
    family = enumerate_canonical(p)
    assert len(family) == euler_phi(p.m) * p.n
    images = set()
    for t in family:
        assert is_automorphism(t.r, t.s, ActionKind.CANONICAL, p) == (True, None)
        images.add(tuple(action_array(t.r, t.s, ActionKind.CANONICAL, p)))
    assert len(images) == len(family)


def test_printed_action_fails_on_identity():
    p = GroupParams(6)
    ok, (x, y) = is_automorphism(7, 11, ActionKind.PAPER_EQ1, p)
    assert not ok and (x, y) == (IDENTITY, IDENTITY)
    b = GroupElement(0, 1)
    t = CanonicalAut(7, 11, p)
    assert apply(t, multiply(b, b, p), ActionKind.PAPER_EQ1) != multiply(
        apply(t, b, ActionKind.PAPER_EQ1), apply(t, b, ActionKind.PAPER_EQ1), p
    )


@given(thetas())
def test_printed_action_validity_characterised(t):
    # the rotation branch must fix 1 and b must go to an order-2 reflection
    p = t.params
    ok, _ = is_automorphism(t.r, t.s, ActionKind.PAPER_EQ1, p)
    assert ok == ((2 - p.n) * t.s % p.m == 0 and t.s % 2 == 0)


@given(thetas(), st.data())
def test_compose_matches_action(t1, data):
    p = t1.params
    t2 = CanonicalAut(data.draw(st.sampled_from(units(p.m))), data.draw(st.integers(0, p.n - 1)), p)
    c = compose_canonical(t1, t2)
    for g in all_elements(p):
        assert apply(c, g) == apply(t1, apply(t2, g))


@given(thetas(max_k=12))
def test_canonical_order_closed_form(t):
    assert canonical_order(t) == canonical_order_closed(t)


@given(thetas(max_k=12))
def test_affine_order_divides_canonical_order(t):
    a = aff.affine_order(aff.AffineAut(t.r, t.s, t.params))
    assert canonical_order(t) % a == 0


def test_order_discrepancy_r3_qd32():
    p = GroupParams(4)
    assert aff.affine_order(aff.AffineAut(3, 0, p)) == 2
    assert canonical_order(CanonicalAut(3, 0, p)) == 4


def test_enumeration_size_guard():
    with pytest.raises(SizeGuardError):
        enumerate_canonical(GroupParams(26))
    assert len(enumerate_canonical(GroupParams(26), max_k=26)) == euler_phi(104) * 52
