"""Automorphisms of QD_{2m} labelled as affine maps x -> r x + s on Z_n.

A label is a pair (r, s) with r a unit mod m and s in Z_n.  Two labels whose
r agree mod n describe the same map on Z_n, so ``==`` on :class:`AffineAut`
compares maps while :meth:`AffineAut.same_label` compares labels.  Every count
in this module counts labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .modarith import (
    GroupParams,
    StructureError,
    cosets,
    cyclic_subgroup,
    divisor_count,
    geometric_sum,
    roots_of_unity,
    two_adic_shape,
    units,
    zdiv,
)


@dataclass(frozen=True, eq=False)
class AffineAut:
    r: int
    s: int
    params: GroupParams

    def __post_init__(self):
        if not 0 < self.r < self.params.m or math.gcd(self.r, self.params.m) != 1:
            raise ValueError(f"r={self.r} is not a unit mod m={self.params.m}")
        if not 0 <= self.s < self.params.n:
            raise ValueError(f"s={self.s} is not reduced mod n={self.params.n}")

    @classmethod
    def of(cls, r: int, s: int, params: GroupParams) -> "AffineAut":
        return cls(r % params.m, s % params.n, params)

    @classmethod
    def identity(cls, params: GroupParams) -> "AffineAut":
        return cls(1, 0, params)

    @property
    def map_key(self) -> tuple[int, int, int]:
        return (self.params.k, self.r % self.params.n, self.s)

    @property
    def label(self) -> tuple[int, int]:
        return (self.r, self.s)

    def __eq__(self, other):
        if not isinstance(other, AffineAut):
            return NotImplemented
        return self.map_key == other.map_key

    def __hash__(self):
        return hash(self.map_key)

    def same_label(self, other: "AffineAut") -> bool:
        return self.params == other.params and self.label == other.label

    def __call__(self, x: int) -> int:
        return (self.r * x + self.s) % self.params.n

    def is_identity(self) -> bool:
        return self.r % self.params.n == 1 and self.s == 0

    def __str__(self):
        return f"{self.r} x + {self.s} (mod n={self.params.n})"

    def to_json(self) -> dict:
        return {"r": self.r, "s": self.s, "n": self.params.n, "m": self.params.m}


def _same_params(a: AffineAut, b: AffineAut) -> None:
    if a.params != b.params:
        raise StructureError(f"automorphisms of {a.params} and {b.params} do not compose")


def compose(outer: AffineAut, inner: AffineAut) -> AffineAut:
    """outer after inner."""
    _same_params(outer, inner)
    p = outer.params
    return AffineAut(
        (outer.r * inner.r) % p.m, (outer.r * inner.s + outer.s) % p.n, p
    )


def inverse(theta: AffineAut) -> AffineAut:
    p = theta.params
    # of the two odd lifts of the inverse mod n, take the smaller
    f_inv = pow(theta.r, -1, p.n)
    return AffineAut(f_inv, (-f_inv * theta.s) % p.n, p)


def affine_order(theta: AffineAut) -> int:
    power, v = theta, 1
    while not power.is_identity():
        power = compose(theta, power)
        v += 1
    return v


def satisfies_order(theta: AffineAut, v: int) -> bool:
    """Closed-form test for theta^v = id, evaluated without iterating."""
    p = theta.params
    if theta.r not in roots_of_unity(v, p):
        return False
    return (geometric_sum(theta.r, v, p.n) * theta.s) % p.n == 0


def enumerate_aut_v(v: int, params: GroupParams) -> list[AffineAut]:
    n = params.n
    return [
        AffineAut(r, s, params)
        for r in roots_of_unity(v, params)
        for s in zdiv(geometric_sum(r, v, n), n)
    ]


def count_aut_v(v: int, params: GroupParams) -> int:
    n = params.n
    return sum(math.gcd(geometric_sum(r, v, n), n) for r in roots_of_unity(v, params))


def all_labels(params: GroupParams) -> list[AffineAut]:
    return [AffineAut(r, s, params) for r in units(params.m) for s in range(params.n)]


def conjugate_shifts(r: int, s: int, params: GroupParams) -> dict[int, tuple[int, int]]:
    """Shifts s2 meeting the conjugacy criterion for (r, s), each with a witness (f, g).

    The criterion asks for a unit f with f*s - s2 in <r - 1>; the witness
    satisfies f*s - s2 = g*(r - 1) mod n.
    """
    n = params.n
    step = (r - 1) % n
    out: dict[int, tuple[int, int]] = {}
    for f in units(params.m):
        for g in range(n // math.gcd(step, n) if step else 1):
            out.setdefault((f * s - g * step) % n, (f, g))
    return out


def are_conjugate(t1: AffineAut, t2: AffineAut) -> tuple[bool, tuple[int, int] | None]:
    """Criterion test: equal labels r and f*s1 - s2 in <r - 1> for some unit f."""
    _same_params(t1, t2)
    if t1.r != t2.r:
        return False, None
    witness = conjugate_shifts(t1.r, t1.s, t1.params).get(t2.s)
    return witness is not None, witness


def brute_conjugate(t1: AffineAut, t2: AffineAut) -> tuple[int, int] | None:
    """Exhaustive search for sigma = f x + g with sigma t1 = t2 sigma (as labels)."""
    _same_params(t1, t2)
    p = t1.params
    for f in units(p.m):
        for g in range(p.n):
            sigma = AffineAut(f, g, p)
            if compose(sigma, t1).same_label(compose(t2, sigma)):
                return (f, g)
    return None


def brute_conjugacy_class(theta: AffineAut) -> set[tuple[int, int]]:
    """Labels of every sigma theta sigma^{-1}, using the exact inverse mod m."""
    p = theta.params
    m, n = p.m, p.n
    r, s = theta.r, theta.s
    out = set()
    for f in units(m):
        f_inv = pow(f, -1, m)
        for g in range(n):
            # sigma^{-1} = f_inv x - f_inv g, then theta, then sigma
            inner_s = (-f_inv * g) % n
            mid_r, mid_s = (r * f_inv) % m, (r * inner_s + s) % n
            out.add(((f * mid_r) % m, (f * mid_s + g) % n))
    return out


@dataclass(frozen=True)
class AutClass:
    r: int
    orbit: tuple[tuple[int, ...], ...]
    representatives: tuple[AffineAut, ...] = field(repr=False)

    @property
    def representative(self) -> AffineAut:
        return self.representatives[0]

    def shifts(self) -> tuple[int, ...]:
        return tuple(sorted(s for coset in self.orbit for s in coset))


def unit_orbits_on_cosets(r: int, v: int, params: GroupParams) -> list[tuple[tuple[int, ...], ...]]:
    """Orbits of U_m, acting by multiplication, on ZDiv(1 + r + ... + r^{v-1}) / <r - 1>."""
    n = params.n
    sub = cyclic_subgroup(r - 1, n)
    whole = zdiv(geometric_sum(r, v, n), n)
    parts = cosets(sub, whole, n)
    where = {x: i for i, coset in enumerate(parts) for x in coset}
    parent = list(range(len(parts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, coset in enumerate(parts):
        x = coset[0]
        for f in units(params.m):
            j = where[(f * x) % n]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[tuple[int, ...]]] = {}
    for i, coset in enumerate(parts):
        groups.setdefault(find(i), []).append(coset)
    return sorted((tuple(g) for g in groups.values()), key=lambda orb: orb[0][0])


def equivalence_classes(v: int, params: GroupParams) -> list[AutClass]:
    out = []
    for r in roots_of_unity(v, params):
        for orbit in unit_orbits_on_cosets(r, v, params):
            shifts = sorted(s for coset in orbit for s in coset)
            reps = tuple(AffineAut(r, s, params) for s in shifts)
            out.append(AutClass(r, orbit, reps))
    return out


def orbit_quotient(r: int, v: int, params: GroupParams) -> Fraction:
    n = params.n
    return Fraction(math.gcd(r - 1, n) * math.gcd(geometric_sum(r, v, n), n), n)


def orbit_count_formula(r: int, v: int, params: GroupParams) -> int | None:
    """Divisor count of gcd(r-1, n) gcd(1 + ... + r^{v-1}, n) / n; None if not integral."""
    q = orbit_quotient(r, v, params)
    if q.denominator != 1 or q <= 0:
        return None
    return divisor_count(q.numerator)


def involution_root_count(params: GroupParams) -> int:
    return len(roots_of_unity(2, params))


def involution_root_count_formula(params: GroupParams) -> int:
    alpha, q = two_adic_shape(params.m)
    if alpha == 2:
        return 2 ** (q + 1)
    if alpha == 3:
        return 2 ** (q + 2)
    return 2 ** (q + 3)


def n_r(r: int, params: GroupParams) -> int:
    """|ZDiv(r + 1) / <r - 1>| counted from the cosets themselves."""
    n = params.n
    return len(cosets(cyclic_subgroup(r - 1, n), zdiv(r + 1, n), n))


def n_r_two_case(r: int, params: GroupParams) -> bool:
    """Predicted N_r = 2 case: r = +-1 mod 2^(alpha-1)."""
    alpha, _ = two_adic_shape(params.m)
    mod = 2 ** (alpha - 1)
    return r % mod in (1 % mod, (-1) % mod)


def involution_class_count(params: GroupParams) -> int:
    alpha, q = two_adic_shape(params.m)
    return 2 ** (q + 1) if alpha == 2 else 2 ** (q + 2)


def class_count_witness(params: GroupParams) -> tuple[int, ...]:
    """The labels r in R^2_m whose coefficient class splits in two (N_r = 2)."""
    return tuple(r for r in roots_of_unity(2, params) if n_r(r, params) == 2)


def count_aut_2(params: GroupParams) -> int:
    return sum(math.gcd(r + 1, params.n) for r in roots_of_unity(2, params))
