"""Residue arithmetic over Z_n and Z_m for the quasi-dihedral family.

Every residue handed back by this module is reduced into ``[0, modulus)``.
Sets of residues are returned as ascending tuples so that printed output and
report files stay byte-stable.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable


class StructureError(ValueError):
    """Raised when a set fails a structural precondition (subgroup, coset union)."""


class SizeGuardError(ValueError):
    """Raised when a requested computation exceeds the configured size bound."""


DEFAULT_MAX_K = 25


def max_k_bound(default: int = DEFAULT_MAX_K) -> int:
    value = os.environ.get("QDSYM_MAX_K")
    if value is None or value.strip() == "":
        return default
    return int(value)


def check_size(k: int, bound: int | None = None) -> None:
    limit = max_k_bound() if bound is None else bound
    if k > limit:
        raise SizeGuardError(
            f"k={k} exceeds the size guard (max k = {limit}); "
            f"raise it with --max-k or QDSYM_MAX_K"
        )


@dataclass(frozen=True, order=True)
class GroupParams:
    """The triple (k, m=4k, n=2k) defining QD_{2m} of order 8k."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k!r}")

    @property
    def m(self) -> int:
        return 4 * self.k

    @property
    def n(self) -> int:
        return 2 * self.k

    @property
    def order(self) -> int:
        return 8 * self.k

    def __str__(self):
        return f"QD_{self.order}"


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"{self.value} is not reduced mod {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(value % modulus, modulus)

    def __add__(self, other: "Residue") -> "Residue":
        self._same(other)
        return Residue.of(self.value + other.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._same(other)
        return Residue.of(self.value * other.value, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue.of(-self.value, self.modulus)

    def _same(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise StructureError(f"moduli differ: {self.modulus} vs {other.modulus}")

    def __int__(self):
        return self.value


def units(modulus: int) -> tuple[int, ...]:
    if modulus < 2:
        raise ValueError(f"units of Z_{modulus} requested; modulus must be >= 2")
    return tuple(r for r in range(1, modulus) if math.gcd(r, modulus) == 1)


def euler_phi(x: int) -> int:
    if x < 1:
        raise ValueError("phi is defined for positive integers")
    result = x
    p, rest = 2, x
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            result -= result // p
        p += 1
    if rest > 1:
        result -= result // rest
    return result


def zdiv(c: int, n: int) -> tuple[int, ...]:
    """Annihilator of ``c`` in Z_n: all y with c*y = 0 (mod n)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    c %= n
    return tuple(y for y in range(n) if (c * y) % n == 0)


def roots_of_unity(v: int, params: GroupParams) -> tuple[int, ...]:
    # membership is taken mod m, the power condition mod n
    if v < 1:
        raise ValueError("v must be >= 1")
    n = params.n
    return tuple(r for r in units(params.m) if pow(r, v, n) == 1 % n)


def cyclic_subgroup(d: int, n: int) -> tuple[int, ...]:
    if n < 2:
        raise ValueError("n must be >= 2")
    return tuple(range(0, n, math.gcd(d % n, n))) if d % n else (0,)


def is_index_subgroup(indices: Iterable[int], n: int) -> bool:
    """True when ``indices`` is an additive subgroup of Z_n (hence cyclic)."""
    members = {i % n for i in indices}
    if 0 not in members:
        return False
    step = 0
    for x in members:
        step = math.gcd(step, x)
    return members == set(cyclic_subgroup(step, n))


def cosets(sub: Iterable[int], whole: Iterable[int], n: int) -> list[tuple[int, ...]]:
    sub_set = {x % n for x in sub}
    whole_set = {x % n for x in whole}
    if not is_index_subgroup(sub_set, n):
        raise StructureError(f"{sorted(sub_set)} is not a subgroup of Z_{n}")
    for x in sorted(sub_set):
        if x not in whole_set:
            raise StructureError(f"subgroup element {x} is not in the ambient set")
    seen: set[int] = set()
    out = []
    for x in sorted(whole_set):
        if x in seen:
            continue
        coset = tuple(sorted({(x + h) % n for h in sub_set}))
        for y in coset:
            if y not in whole_set:
                raise StructureError(f"coset of {x} reaches {y}, outside the ambient set")
        seen.update(coset)
        out.append(coset)
    return out


def geometric_sum(r: int, v: int, n: int) -> int:
    """(r^{v-1} + ... + r + 1) mod n, by Horner's rule."""
    if v < 1:
        raise ValueError("v must be >= 1")
    total = 0
    for _ in range(v):
        total = (total * r + 1) % n
    return total


def divisor_count(x: int) -> int:
    if x < 1:
        raise ValueError(f"divisor_count needs a positive integer, got {x}")
    count = 0
    d = 1
    while d * d <= x:
        if x % d == 0:
            count += 1 if d * d == x else 2
        d += 1
    return count


def factor(x: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    if x < 1:
        raise ValueError("factor needs a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= x:
        while x % p == 0:
            out[p] = out.get(p, 0) + 1
            x //= p
        p += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def two_adic_shape(m: int) -> tuple[int, int]:
    """Return (alpha, q) for m = 2^alpha * p_1^t_1 ... p_q^t_q with odd primes p_i."""
    f = factor(m)
    alpha = f.pop(2, 0)
    return alpha, len(f)
