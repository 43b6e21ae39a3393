"""Automorphisms acting on actual group elements.

The canonical action of the label (r, s) sends a -> a^r and b -> a^{2s} b, so
a^j b^t -> a^{rj + 2st} b^t.  The printed affine action formula is kept as a
second evaluator (``ActionKind.PAPER_EQ1``); its t = 0 branch adds a constant
to every rotation exponent and is generally not a homomorphism.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .modarith import GroupParams, StructureError, check_size, geometric_sum, units
from .qd_group import GroupElement, from_index, tables


class ActionKind(enum.Enum):
    CANONICAL = "canonical"
    PAPER_EQ1 = "paper-eq1"


@dataclass(frozen=True)
class CanonicalAut:
    r: int
    s: int
    params: GroupParams

    def __post_init__(self):
        if not 0 < self.r < self.params.m or math.gcd(self.r, self.params.m) != 1:
            raise ValueError(f"r={self.r} is not a unit mod m={self.params.m}")
        if not 0 <= self.s < self.params.n:
            raise ValueError(f"s={self.s} is not reduced mod n={self.params.n}")

    def is_identity(self) -> bool:
        return self.r == 1 and self.s == 0

    def to_json(self, kind: ActionKind = ActionKind.CANONICAL) -> dict:
        return {"r": self.r, "s": self.s, "kind": kind.value}


def exponent_shift(s: int, t: int, kind: ActionKind, params: GroupParams) -> int:
    if kind is ActionKind.CANONICAL:
        return 2 * s * t
    return ((t - 1) * params.n - (t - 2)) * s


def apply(theta: CanonicalAut, g: GroupElement, kind: ActionKind = ActionKind.CANONICAL) -> GroupElement:
    p = theta.params
    if g.exp >= p.m:
        raise StructureError(f"{g} does not belong to {p}")
    exp = theta.r * g.exp + exponent_shift(theta.s, g.refl, kind, p)
    return GroupElement(exp % p.m, g.refl)


def action_array(r: int, s: int, kind: ActionKind, params: GroupParams) -> np.ndarray:
    """The action as an index permutation-candidate array over all 2m elements."""
    m = params.m
    idx = np.arange(2 * m)
    exp, refl = idx % m, idx // m
    if kind is ActionKind.CANONICAL:
        shift = 2 * s * refl
    else:
        shift = ((refl - 1) * params.n - (refl - 2)) * s
    return refl * m + (r * exp + shift) % m


def is_automorphism(
    r: int, s: int, kind: ActionKind, params: GroupParams
) -> tuple[bool, tuple[GroupElement, GroupElement] | None]:
    """Brute-force homomorphism and bijectivity check over all of G x G.

    Returns ``(ok, counterexample)``.  The counterexample is the first pair
    (x, y) in index order with theta(xy) != theta(x) theta(y), or else two
    distinct elements sharing an image.
    """
    t = tables(params)
    phi = action_array(r, s, kind, params)
    lhs = phi[t.mul]
    rhs = t.mul[phi[:, None], phi[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        x, y = bad[0]
        return False, (from_index(int(x), params), from_index(int(y), params))
    if len(np.unique(phi)) != t.size:
        seen: dict[int, int] = {}
        for i, img in enumerate(phi.tolist()):
            if img in seen:
                return False, (from_index(seen[img], params), from_index(i, params))
            seen[img] = i
    return True, None


def compose_canonical(outer: CanonicalAut, inner: CanonicalAut) -> CanonicalAut:
    if outer.params != inner.params:
        raise StructureError("automorphisms of different groups")
    p = outer.params
    return CanonicalAut((outer.r * inner.r) % p.m, (outer.r * inner.s + outer.s) % p.n, p)


def canonical_order(theta: CanonicalAut) -> int:
    """Least v with theta^v fixing every group element, by iterating the action."""
    phi = action_array(theta.r, theta.s, ActionKind.CANONICAL, theta.params)
    ident = np.arange(len(phi))
    power, v = phi, 1
    while not np.array_equal(power, ident):
        power = phi[power]
        v += 1
    return v


def canonical_order_closed(theta: CanonicalAut) -> int:
    p = theta.params
    v = 1
    while not (pow(theta.r, v, p.m) == 1 and geometric_sum(theta.r, v, p.n) * theta.s % p.n == 0):
        v += 1
    return v


def enumerate_canonical(params: GroupParams, max_k: int | None = None) -> list[CanonicalAut]:
    check_size(params.k, max_k)
    return [CanonicalAut(r, s, params) for r in units(params.m) for s in range(params.n)]
