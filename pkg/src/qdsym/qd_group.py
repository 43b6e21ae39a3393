"""Arithmetic in QD_{2m} = <a, b : a^m = b^2 = 1, ba = a^{n-1} b> in normal form.

An element a^i b^t is stored as the pair (exp=i, refl=t).  For the oracle
scans each element also has a dense index ``refl * m + exp``; that index order
coincides with the (refl, exp) ordering used for every printed set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .modarith import GroupParams, StructureError


@dataclass(frozen=True)
class GroupElement:
    exp: int
    refl: int = 0

    def __post_init__(self):
        if self.refl not in (0, 1):
            raise ValueError(f"refl must be 0 or 1, got {self.refl}")
        if self.exp < 0:
            raise ValueError("exp must be reduced (non-negative)")

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.refl, self.exp)

    def __lt__(self, other: "GroupElement") -> bool:
        return self.sort_key < other.sort_key

    def index(self, params: GroupParams) -> int:
        return self.refl * params.m + self.exp

    def __str__(self):
        if self.refl == 0:
            return "1" if self.exp == 0 else f"a^{self.exp}"
        return "b" if self.exp == 0 else f"a^{self.exp}*b"


IDENTITY = GroupElement(0, 0)

_ELEMENT_RE = re.compile(r"^\s*(?:(1)|a\^(\d+)(\*b)?|(b))\s*$")


def parse_element(text: str, params: GroupParams) -> GroupElement:
    match = _ELEMENT_RE.match(text)
    if not match:
        raise ValueError(f"cannot parse group element {text!r}")
    if match.group(1):
        return IDENTITY
    if match.group(4):
        return GroupElement(0, 1)
    exp = int(match.group(2))
    if not 0 < exp < params.m:
        raise ValueError(f"exponent {exp} out of range for {params}")
    return GroupElement(exp, 1 if match.group(3) else 0)


def element(exp: int, refl: int, params: GroupParams) -> GroupElement:
    return GroupElement(exp % params.m, refl % 2)


def from_index(idx: int, params: GroupParams) -> GroupElement:
    return GroupElement(idx % params.m, idx // params.m)


def all_elements(params: GroupParams) -> list[GroupElement]:
    return [GroupElement(i, t) for t in (0, 1) for i in range(params.m)]


def _check(x: GroupElement, params: GroupParams) -> None:
    if x.exp >= params.m:
        raise StructureError(f"{x} does not belong to {params}")


def multiply(x: GroupElement, y: GroupElement, params: GroupParams) -> GroupElement:
    _check(x, params)
    _check(y, params)
    # b a^j = a^{j(n-1)} b
    twist = params.n - 1 if x.refl else 1
    return GroupElement((x.exp + y.exp * twist) % params.m, (x.refl + y.refl) % 2)


def inverse(x: GroupElement, params: GroupParams) -> GroupElement:
    _check(x, params)
    if x.refl == 0:
        return GroupElement((-x.exp) % params.m, 0)
    # (n-1)^2 = 1 mod m, so a^i b has inverse a^{-i(n-1)} b
    return GroupElement((-x.exp * (params.n - 1)) % params.m, 1)


def power(x: GroupElement, e: int, params: GroupParams) -> GroupElement:
    if e < 0:
        x, e = inverse(x, params), -e
    out = IDENTITY
    for _ in range(e):
        out = multiply(out, x, params)
    return out


def element_order(x: GroupElement, params: GroupParams) -> int:
    _check(x, params)
    y, v = x, 1
    while y != IDENTITY:
        y = multiply(y, x, params)
        v += 1
    return v


def conjugate(g: GroupElement, x: GroupElement, params: GroupParams) -> GroupElement:
    """g x g^{-1}."""
    _check(g, params)
    _check(x, params)
    m, n = params.m, params.n
    if g.refl == 0:
        if x.refl == 0:
            return x
        # a^i (a^j b) a^{-i} = a^{i + j + i(1-n)} b
        return GroupElement((x.exp + g.exp * (2 - n)) % m, 1)
    return multiply(multiply(g, x, params), inverse(g, params), params)


@dataclass(frozen=True)
class ElementSet:
    params: GroupParams
    members: tuple[GroupElement, ...]

    @classmethod
    def of(cls, params: GroupParams, elements: Iterable[GroupElement]) -> "ElementSet":
        uniq = {e for e in elements}
        for e in uniq:
            _check(e, params)
        return cls(params, tuple(sorted(uniq, key=lambda e: e.sort_key)))

    @classmethod
    def from_indices(cls, params: GroupParams, indices: Iterable[int]) -> "ElementSet":
        idx = sorted({int(i) for i in indices})
        return cls(params, tuple(from_index(i, params) for i in idx))

    def indices(self) -> list[int]:
        return [e.index(self.params) for e in self.members]

    def rotation_exps(self) -> tuple[int, ...]:
        return tuple(e.exp for e in self.members if e.refl == 0)

    def reflection_exps(self) -> tuple[int, ...]:
        return tuple(e.exp for e in self.members if e.refl == 1)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in set(self.members)

    def __str__(self):
        return "{" + ", ".join(str(e) for e in self.members) + "}"


def closure(seed: ElementSet, params: GroupParams) -> ElementSet:
    if len(seed) == 0:
        raise ValueError("closure of an empty seed")
    current = set(seed.members)
    frontier = list(current)
    while frontier:
        fresh = []
        for x in frontier:
            candidates = [inverse(x, params)]
            candidates += [multiply(x, y, params) for y in list(current)]
            candidates += [multiply(y, x, params) for y in list(current)]
            for z in candidates:
                if z not in current:
                    current.add(z)
                    fresh.append(z)
        frontier = fresh
        if len(current) > params.order:
            raise AssertionError("closure escaped the group")
    return ElementSet.of(params, current)


def is_subgroup(s: ElementSet, params: GroupParams) -> bool:
    members = set(s.members)
    if not members:
        return False
    for x in members:
        if inverse(x, params) not in members:
            return False
        for y in members:
            if multiply(x, y, params) not in members:
                return False
    return True


def is_cyclic_set(s: ElementSet, params: GroupParams) -> bool:
    members = set(s.members)
    for g in members:
        if element_order(g, params) != len(members):
            continue
        if set(closure(ElementSet.of(params, [g]), params).members) == members:
            return True
    return False


class Tables:
    """Dense multiplication and inverse tables over the element indices."""

    def __init__(self, params: GroupParams):
        self.params = params
        m, n = params.m, params.n
        size = 2 * m
        idx = np.arange(size)
        exp, refl = idx % m, idx // m
        twist = np.where(refl == 1, n - 1, 1)
        prod_exp = (exp[:, None] + exp[None, :] * twist[:, None]) % m
        prod_refl = (refl[:, None] + refl[None, :]) % 2
        self.mul = (prod_refl * m + prod_exp).astype(np.int64)
        inv_exp = np.where(refl == 0, -exp, -exp * (n - 1)) % m
        self.inv = (refl * m + inv_exp).astype(np.int64)
        self.size = size


@lru_cache(maxsize=64)
def tables(params: GroupParams) -> Tables:
    return Tables(params)
