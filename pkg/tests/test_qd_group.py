import pytest
from hypothesis import given, strategies as st

from qdsym.modarith import GroupParams, StructureError
from qdsym.qd_group import (
    IDENTITY,
    ElementSet,
    GroupElement,
    all_elements,
    closure,
    conjugate,
    element,
    element_order,
    from_index,
    inverse,
    is_cyclic_set,
    is_subgroup,
    multiply,
    parse_element,
    power,
    tables,
)

ks = st.integers(min_value=2, max_value=12)


def as_map(g, p):
    """Faithful image of a^i b^t as the map x -> (n-1)^t x + i on Z_m."""
    return (pow(p.n - 1, g.refl, p.m), g.exp)


def compose_maps(f, g, m):
    return ((f[0] * g[0]) % m, (f[0] * g[1] + f[1]) % m)


@st.composite
def group_and_elements(draw, count=2):
    p = GroupParams(draw(ks))
    els = [GroupElement(draw(st.integers(0, p.m - 1)), draw(st.integers(0, 1))) for _ in range(count)]
    return p, els


def test_printing_and_parsing():
    p = GroupParams(6)
    for text in ("1", "a^3", "b", "a^5*b", "a^1*b"):
        assert str(parse_element(text, p)) == text
    with pytest.raises(ValueError):
        parse_element("c", p)
    with pytest.raises(ValueError):
        parse_element("a^24", p)


def test_index_order_matches_print_order():
    p = GroupParams(3)
    els = all_elements(p)
    assert [g.index(p) for g in els] == list(range(p.order))
    assert els == sorted(els)
    assert from_index(13, p) == GroupElement(1, 1)


@given(group_and_elements(2))
def test_product_matches_faithful_maps(data):
    p, (x, y) = data
    assert as_map(multiply(x, y, p), p) == compose_maps(as_map(x, p), as_map(y, p), p.m)


@given(group_and_elements(3))
def test_associativity(data):
    p, (x, y, z) = data
    assert multiply(multiply(x, y, p), z, p) == multiply(x, multiply(y, z, p), p)


@given(group_and_elements(1))
def test_inverse_and_identity(data):
    p, (x,) = data
    assert multiply(x, inverse(x, p), p) == IDENTITY
    assert multiply(IDENTITY, x, p) == x


def test_inverse_of_ab():
    p = GroupParams(6)
    assert inverse(GroupElement(1, 1), p) == GroupElement(p.n + 1, 1)


@pytest.mark.parametrize("k", range(2, 13))
def test_ba_relation_and_orders(k):
    p = GroupParams(k)
    b = GroupElement(0, 1)
    for i in range(p.m):
        assert multiply(b, GroupElement(i, 0), p) == GroupElement(i * (p.n - 1) % p.m, 1)
        assert element_order(GroupElement(i, 1), p) == (2 if i % 2 == 0 else 4)
    assert element_order(GroupElement(1, 0), p) == p.m


@given(group_and_elements(1), st.integers(-20, 20))
def test_power(data, e):
    p, (x,) = data
    expected = IDENTITY
    base = x if e >= 0 else inverse(x, p)
    for _ in range(abs(e)):
        expected = multiply(expected, base, p)
    assert power(x, e, p) == expected


@given(group_and_elements(2))
def test_conjugate(data):
    p, (g, x) = data
    assert conjugate(g, x, p) == multiply(multiply(g, x, p), inverse(g, p), p)


def test_element_bounds():
    p = GroupParams(2)
    assert element(-1, 3, p) == GroupElement(7, 1)
    with pytest.raises(StructureError):
        multiply(GroupElement(8, 0), IDENTITY, p)


@pytest.mark.parametrize("k", [2, 3, 6])
def test_tables_agree_with_multiply(k):
    p = GroupParams(k)
    t = tables(p)
    els = all_elements(p)
    for x in els:
        assert t.inv[x.index(p)] == inverse(x, p).index(p)
        for y in els:
            assert t.mul[x.index(p), y.index(p)] == multiply(x, y, p).index(p)


def test_closure_and_subgroups():
    p = GroupParams(6)
    rot = closure(ElementSet.of(p, [GroupElement(8, 0)]), p)
    assert str(rot) == "{1, a^8, a^16}"
    assert is_subgroup(rot, p) and is_cyclic_set(rot, p)
    whole = closure(ElementSet.of(p, [GroupElement(1, 0), GroupElement(0, 1)]), p)
    assert len(whole) == p.order and not is_cyclic_set(whole, p)
    klein = ElementSet.of(p, [IDENTITY, GroupElement(12, 0), GroupElement(0, 1), GroupElement(12, 1)])
    assert is_subgroup(klein, p) and not is_cyclic_set(klein, p)
    assert not is_subgroup(ElementSet.of(p, [IDENTITY, GroupElement(1, 0)]), p)


@given(group_and_elements(2))
def test_closure_order_divides_group_order(data):
    p, els = data
    sub = closure(ElementSet.of(p, els), p)
    assert is_subgroup(sub, p)
    assert p.order % len(sub) == 0
