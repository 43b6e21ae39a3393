"""Fixed-point sets H, symmetric spaces Q and twisted involutions R.

Each set is produced twice:

* the *formula layer* works with index sets inside Z_n,
  with reflection indices of H restricted to even residues;
* the *oracle layer* scans all 2m group elements under an actual action
  (canonical by default) and returns :class:`ElementSet` values whose
  exponents live in Z_m.

:func:`compare` adjudicates between the two through a fixed chain of
coordinate adapters and reports the first one that matches.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .affine_aut import AffineAut, satisfies_order
from .canonical_aut import ActionKind, CanonicalAut, action_array, canonical_order
from .modarith import GroupParams, cyclic_subgroup, is_index_subgroup
from .qd_group import ElementSet, GroupElement, from_index, is_cyclic_set, tables


class Status(str, enum.Enum):
    EXACT = "EXACT"
    MOD_N_MATCH = "MOD_N_MATCH"
    HALVING_MATCH = "HALVING_MATCH"
    MISMATCH = "MISMATCH"
    NOT_APPLICABLE = "NOT_APPLICABLE"

    def __str__(self):
        return self.value


# formula layer ------------------------------------------------------------


def _solve(coeff: int, rhs: int, n: int, candidates: Iterable[int] | None = None) -> tuple[int, ...]:
    pool = range(n) if candidates is None else candidates
    return tuple(x for x in pool if (coeff * x - rhs) % n == 0)


def h_formula(r: int, s: int, params: GroupParams) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = params.n
    c = r + 2 * s - 1
    h_rot = _solve(c, 0, n)
    h_refl = _solve(c, -s, n, range(0, n, 2))
    return h_rot, h_refl


def q_tail(r: int, s: int, params: GroupParams) -> tuple[int, ...]:
    """{(1 - r) l - s : l even} in Z_n."""
    n = params.n
    return tuple(sorted({((1 - r) * l - s) % n for l in range(0, n, 2)}))


def q_formula(r: int, s: int, params: GroupParams) -> tuple[int, ...]:
    n = params.n
    return tuple(sorted(set(cyclic_subgroup(r + 2 * s - 1, n)) | set(q_tail(r, s, params))))


def r_formula(r: int, s: int, params: GroupParams) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = params.n
    return _solve(r + 1, -2 * s, n), _solve(r - 1, -s, n)


def formula_is_involution(r: int, s: int, params: GroupParams) -> bool:
    return satisfies_order(AffineAut(r, s, params), 2)


@dataclass(frozen=True)
class IndexSets:
    params: GroupParams
    r: int
    s: int
    h_rot: tuple[int, ...]
    h_refl: tuple[int, ...]
    q: tuple[int, ...]
    r_rot: tuple[int, ...]
    r_refl: tuple[int, ...]
    involution: bool

    @classmethod
    def compute(cls, r: int, s: int, params: GroupParams) -> "IndexSets":
        h_rot, h_refl = h_formula(r, s, params)
        r_rot, r_refl = r_formula(r, s, params)
        return cls(
            params, r, s, h_rot, h_refl, q_formula(r, s, params),
            r_rot, r_refl, formula_is_involution(r, s, params),
        )

    def to_json(self) -> dict:
        return {
            "h_rot": list(self.h_rot),
            "h_refl": list(self.h_refl),
            "q": list(self.q),
            "r_rot": list(self.r_rot),
            "r_refl": list(self.r_refl),
        }


def render_indices(rot: Iterable[int], refl: Iterable[int] = ()) -> str:
    """Render index sets as group elements, e.g. {1, a^3, a^2*b}."""
    parts = [str(GroupElement(j, 0)) for j in sorted(rot)]
    parts += [str(GroupElement(j, 1)) for j in sorted(refl)]
    return "{" + ", ".join(parts) + "}"


# oracle layer -------------------------------------------------------------


def _as_theta(theta: CanonicalAut | AffineAut) -> CanonicalAut:
    if isinstance(theta, CanonicalAut):
        return theta
    return CanonicalAut(theta.r, theta.s, theta.params)


def _oracle_arrays(theta: CanonicalAut, kind: ActionKind):
    p = theta.params
    t = tables(p)
    phi = action_array(theta.r, theta.s, kind, p)
    ident = np.arange(t.size)
    h = np.flatnonzero(phi == ident)
    q = np.unique(t.mul[ident, t.inv[phi]])
    rr = np.flatnonzero(phi == t.inv)
    return t, phi, h, q, rr


def oracle_spaces(
    theta: CanonicalAut | AffineAut, kind: ActionKind = ActionKind.CANONICAL
) -> tuple[ElementSet, ElementSet, ElementSet]:
    """H, Q and R by scanning every element under the given action."""
    theta = _as_theta(theta)
    _, _, h, q, rr = _oracle_arrays(theta, kind)
    p = theta.params
    return (
        ElementSet.from_indices(p, h.tolist()),
        ElementSet.from_indices(p, q.tolist()),
        ElementSet.from_indices(p, rr.tolist()),
    )


# adapters -----------------------------------------------------------------

Adapter = Callable[[int, GroupParams], "int | None"]


def _exact(j: int, params: GroupParams) -> int | None:
    return j


def _mod_n(j: int, params: GroupParams) -> int | None:
    return j % params.n


def _halving(j: int, params: GroupParams) -> int | None:
    return j // 2 if j % 2 == 0 else None


ADAPTERS: tuple[tuple[Status, str, Adapter], ...] = (
    (Status.EXACT, "exact", _exact),
    (Status.MOD_N_MATCH, "mod-n", _mod_n),
    (Status.HALVING_MATCH, "halving", _halving),
)


def _map_all(exps: Iterable[int], adapter: Adapter, params: GroupParams) -> set[int] | None:
    out = set()
    for j in exps:
        x = adapter(j, params)
        if x is None:
            return None
        out.add(x)
    return out


def compare(
    rot: Iterable[int], refl: Iterable[int], oracle: ElementSet, params: GroupParams
) -> tuple[Status, str]:
    """Adjudicate a formula index set (rotations, reflections) against an oracle set."""
    rot, refl = set(rot), set(refl)
    o_rot, o_refl = oracle.rotation_exps(), oracle.reflection_exps()
    for status, name, adapter in ADAPTERS:
        a = _map_all(o_rot, adapter, params)
        b = _map_all(o_refl, adapter, params)
        if a is None or b is None:
            continue
        if a == rot and b == refl:
            return status, name
    return Status.MISMATCH, "none"


def compare_partition(
    formula_blocks: Sequence[Iterable[int]],
    oracle_blocks: Sequence[Sequence[GroupElement]],
    params: GroupParams,
) -> tuple[Status, str]:
    """Like :func:`compare` for partitions of rotation sets."""
    target = {frozenset(b) for b in formula_blocks}
    if any(g.refl for block in oracle_blocks for g in block):
        return Status.MISMATCH, "none"
    for status, name, adapter in ADAPTERS:
        mapped = []
        for block in oracle_blocks:
            image = _map_all((g.exp for g in block), adapter, params)
            if image is None:
                break
            mapped.append(frozenset(image))
        else:
            if set(mapped) == target and len(mapped) == len(target):
                return status, name
    return Status.MISMATCH, "none"


# classification -----------------------------------------------------------


@dataclass(frozen=True)
class Prediction:
    """Outcome of walking one of the printed decision trees."""

    case: str | None
    cyclic: bool | None = None
    size: int | None = None
    iso: str | None = None
    unmatched: str | None = None

    @property
    def applicable(self) -> bool:
        return self.case is not None

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "cyclic": self.cyclic,
            "size": self.size,
            "iso": self.iso,
            "unmatched": self.unmatched,
        }


def _c_d1_d2(r: int, s: int, params: GroupParams) -> tuple[int, int, int]:
    c = (r + 2 * s - 1) % params.n
    return c, math.gcd(c, params.n), math.gcd(c, params.k)


def classify_h(r: int, s: int, params: GroupParams) -> Prediction:
    k, n = params.k, params.n
    c, d1, d2 = _c_d1_d2(r, s, params)
    zdiv_c = f"ZDiv({c})"
    if k % 2 == 0:
        if s % 2 == 1:
            w = (s - 1) // 2
            if w % d1:
                return Prediction("even.1", True, d1, zdiv_c)
            return Prediction(None, unmatched=f"s odd and d1={d1} divides w={w}")
        w = s // 2
        if w % 2 == 1:
            return Prediction("even.2a", True, d1, zdiv_c)
        if w % d2:
            return Prediction("even.2b.i", True, d1, zdiv_c)
        if k % 4:
            return Prediction("even.2b.ii.I", False, 3 * d1 // 2, "three-halves")
        return Prediction("even.2b.ii.II", False, 2 * d1, f"{zdiv_c} x Z_2")
    if s % 2 == 1:
        return Prediction("odd.1", True, d1, zdiv_c)
    if d1 == n:
        return Prediction("odd.2a", True, n, zdiv_c)
    if d1 == 2:
        return Prediction("odd.2b", False, 3, f"{{1, a^{k}, a^(2l)*b}}")
    return Prediction(None, unmatched=f"s even and d1={d1} is neither n nor 2")


def formula_h_cyclic(h_rot: Iterable[int], h_refl: Iterable[int], params: GroupParams) -> bool:
    """Cyclicity of a formula-layer H.

    Rotation-only sets are judged inside Z_n; sets with reflections are
    embedded literally into G (a^j, a^j b with j < n) and tested there.
    """
    h_rot, h_refl = tuple(h_rot), tuple(h_refl)
    if not h_refl:
        return is_index_subgroup(h_rot, params.n)
    members = [GroupElement(j, 0) for j in h_rot] + [GroupElement(j, 1) for j in h_refl]
    return is_cyclic_set(ElementSet.of(params, members), params)


def check_h(prediction: Prediction, r: int, s: int, params: GroupParams) -> Status:
    if not prediction.applicable:
        return Status.NOT_APPLICABLE
    h_rot, h_refl = h_formula(r, s, params)
    ok = prediction.size == len(h_rot) + len(h_refl)
    ok = ok and prediction.cyclic == formula_h_cyclic(h_rot, h_refl, params)
    if prediction.iso and prediction.iso.startswith("ZDiv") and prediction.cyclic:
        c = (r + 2 * s - 1) % params.n
        ok = ok and not h_refl and set(h_rot) == {y for y in range(params.n) if c * y % params.n == 0}
    return Status.EXACT if ok else Status.MISMATCH


def _tail_hits_d1(r: int, s: int, params: GroupParams, d1: int) -> bool:
    # some even j' with d1 | (1 - r) j' - s
    return any(((1 - r) * j - s) % d1 == 0 for j in range(0, params.n, 2))


def classify_q(r: int, s: int, params: GroupParams) -> Prediction:
    k, n = params.k, params.n
    c, d1, _ = _c_d1_d2(r, s, params)
    one_minus_r = (1 - r) % n
    if k % 2 == 0:
        if s % 2 == 1:
            return Prediction("even.1", False)
        if _tail_hits_d1(r, s, params, d1):
            if c != k % n:
                return Prediction("even.2a.i", True)
            if one_minus_r == k % n:
                return Prediction("even.2a.ii+", True)
            return Prediction("even.2a.ii-", False)
        if (-s) % n != k % n:
            return Prediction("even.2b.i", False)
        return Prediction("even.2b.ii", True)
    if s % 2 == 0:
        return Prediction("odd.1", True)
    # the more specific cyclic case is tested before the non-cyclic one
    if one_minus_r == 0 and s % n == k % n:
        return Prediction("odd.2b.i", True)
    if c == 0 or one_minus_r == 0:
        return Prediction("odd.2a", False)
    return Prediction("odd.2b.ii", True)


def check_q(prediction: Prediction, r: int, s: int, params: GroupParams) -> Status:
    if not prediction.applicable:
        return Status.NOT_APPLICABLE
    actual = is_index_subgroup(q_formula(r, s, params), params.n)
    return Status.EXACT if prediction.cyclic == actual else Status.MISMATCH


def psi_q(r: int, s: int, params: GroupParams) -> Prediction:
    """Generator d with psi(Q) = <d> in Z_n, chosen by the printed size cases.

    The case is selected by |Q| from the formula layer; the returned
    prediction carries d in ``iso`` and |<d>| in ``size``.
    """
    k, n = params.k, params.n
    c, d1, _ = _c_d1_d2(r, s, params)
    q = q_formula(r, s, params)
    size = len(q)
    d: int | None = None
    case = None
    if k % 2 == 0:
        if size == 2:
            d, case = k, "even.|Q|=2"
        elif size * 2 == k:
            if c != 0:
                d, case = d1, "even.|Q|=k/2.a"
            else:
                d, case = 4, "even.|Q|=k/2.b"
        elif size == k:
            disjoint = not set(cyclic_subgroup(c, n)) & set(q_tail(r, s, params))
            if disjoint:
                d, case = d1 // 2, "even.|Q|=k.a"
            else:
                d, case = d1, "even.|Q|=k.b"
    else:
        if s % 2 == 0:
            if r % n == 1 and s == 0 and size == 1:
                d, case = 0, "odd.even-s.|Q|=1"
            elif size == k:
                d, case = 2, "odd.even-s.|Q|=k"
        else:
            if (1 - r) % n == 0 and (s - k) % n == 0 and size == 2:
                d, case = k, "odd.odd-s.|Q|=2"
            elif c != 0 and (1 - r) % n != 0 and size == n:
                d, case = 1, "odd.odd-s.|Q|=n"
    if case is None:
        return Prediction(None, unmatched=f"|Q|={size} not covered")
    sub = cyclic_subgroup(d, n)
    return Prediction(case, True, len(sub), str(d))


def check_psi(prediction: Prediction, r: int, s: int, params: GroupParams) -> Status:
    if not prediction.applicable:
        return Status.NOT_APPLICABLE
    d = int(prediction.iso)
    same = cyclic_subgroup(d, params.n) == q_formula(r, s, params)
    return Status.EXACT if same else Status.MISMATCH


# orbits -------------------------------------------------------------------


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        for z in (x, y):
            self.parent.setdefault(z, z)
        a, b = self.find(x), self.find(y)
        if a != b:
            self.parent[max(a, b)] = min(a, b)

    def blocks(self) -> list[tuple]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted(tuple(sorted(g)) for g in groups.values())


def _orbit_blocks(sources: np.ndarray, images: np.ndarray, space: np.ndarray, params) -> list[tuple[GroupElement, ...]]:
    uf = UnionFind(space.tolist())
    pairs = np.unique(np.stack([sources.ravel(), images.ravel()], axis=1), axis=0)
    for x, y in pairs.tolist():
        if x != y:
            uf.union(x, y)
    return [tuple(from_index(i, params) for i in block) for block in uf.blocks()]


def h_orbits_on_q(
    theta: CanonicalAut | AffineAut, kind: ActionKind = ActionKind.CANONICAL
) -> list[tuple[GroupElement, ...]]:
    """Orbits of the oracle H acting on the oracle Q by conjugation."""
    theta = _as_theta(theta)
    t, _, h, q, _ = _oracle_arrays(theta, kind)
    images = t.mul[t.mul[h[:, None], q[None, :]], t.inv[h][:, None]]
    sources = np.broadcast_to(q[None, :], images.shape)
    return _orbit_blocks(sources, images, q, theta.params)


def g_orbits_on_q(
    theta: CanonicalAut | AffineAut, kind: ActionKind = ActionKind.CANONICAL
) -> list[tuple[GroupElement, ...]]:
    """Orbits of G on Q under twisted conjugation g . q = g q theta(g)^{-1}."""
    theta = _as_theta(theta)
    t, phi, _, q, _ = _oracle_arrays(theta, kind)
    g = np.arange(t.size)
    images = t.mul[t.mul[g[:, None], q[None, :]], t.inv[phi][:, None]]
    sources = np.broadcast_to(q[None, :], images.shape)
    return _orbit_blocks(sources, images, q, theta.params)


def predict_h_orbits(r: int, s: int, params: GroupParams) -> list[tuple[int, int | None]]:
    """Per index l of the formula Q: (l, -l mod n) when a reflection of H
    flips a^l, else (l, None)."""
    n = params.n
    _, h_refl = h_formula(r, s, params)
    out = []
    for l in q_formula(r, s, params):
        if h_refl and l % 2 == 0 and l != 0:
            out.append((l, (-l) % n))
        else:
            out.append((l, None))
    return out


def render_predicted_orbits(blocks: Sequence[tuple[int, int | None]]) -> str:
    parts = []
    for l, partner in blocks:
        if l == 0:
            parts.append("{1}")
        elif partner is None:
            parts.append(f"{{a^{l}}}")
        else:
            parts.append(f"{{a^{l},a^-{l}}}")
    return "{" + ",".join(parts) + "}"


def predicted_partition(r: int, s: int, params: GroupParams) -> list[tuple[int, ...]]:
    uf = UnionFind(q_formula(r, s, params))
    for l, partner in predict_h_orbits(r, s, params):
        if partner is not None:
            uf.union(l, partner)
    return uf.blocks()


# product and inclusion checks ---------------------------------------------


def hq_product(theta: CanonicalAut | AffineAut, kind: ActionKind = ActionKind.CANONICAL) -> ElementSet:
    theta = _as_theta(theta)
    t, _, h, q, _ = _oracle_arrays(theta, kind)
    return ElementSet.from_indices(theta.params, np.unique(t.mul[h[:, None], q[None, :]]).tolist())


def hq_product_check(theta: CanonicalAut | AffineAut, kind: ActionKind = ActionKind.CANONICAL) -> bool:
    """True when HQ is a proper subset of G."""
    theta = _as_theta(theta)
    return len(hq_product(theta, kind)) < theta.params.order


def r_vs_q_check(theta: CanonicalAut | AffineAut, kind: ActionKind = ActionKind.CANONICAL) -> tuple[bool, bool]:
    """(R != Q, Q is a subset of R) on the oracle layer."""
    _, q, rr = oracle_spaces(theta, kind)
    q_set, r_set = set(q.members), set(rr.members)
    return q_set != r_set, q_set <= r_set


# reports ------------------------------------------------------------------


@dataclass
class SpaceReport:
    params: GroupParams
    r: int
    s: int
    kind: ActionKind
    formula: IndexSets
    oracle_h: ElementSet
    oracle_q: ElementSet
    oracle_r: ElementSet
    classification: dict = field(default_factory=dict)
    statuses: dict = field(default_factory=dict)
    adapters: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        p = self.params
        return {
            "params": {"k": p.k, "m": p.m, "n": p.n},
            "theta": {"r": self.r, "s": self.s, "kind": self.kind.value},
            "formula": self.formula.to_json(),
            "oracle": {
                "H": [str(g) for g in self.oracle_h],
                "Q": [str(g) for g in self.oracle_q],
                "R": [str(g) for g in self.oracle_r],
            },
            "classification": self.classification,
            "statuses": {k: str(v) for k, v in self.statuses.items()},
            "adapters": dict(self.adapters),
        }


def space_report(r: int, s: int, params: GroupParams, kind: ActionKind = ActionKind.CANONICAL) -> SpaceReport:
    theta = CanonicalAut(r, s, params)
    formula = IndexSets.compute(r, s, params)
    h, q, rr = oracle_spaces(theta, kind)
    report = SpaceReport(params, r, s, kind, formula, h, q, rr)

    hp, qp, pp = classify_h(r, s, params), classify_q(r, s, params), psi_q(r, s, params)
    report.classification = {
        "h": hp.to_json(),
        "h_formula_cyclic": formula_h_cyclic(formula.h_rot, formula.h_refl, params),
        "h_formula_size": len(formula.h_rot) + len(formula.h_refl),
        "q": qp.to_json(),
        "q_formula_cyclic": is_index_subgroup(formula.q, params.n),
        "q_formula_size": len(formula.q),
        "psi_q_generator": int(pp.iso) if pp.applicable else None,
    }

    st, ad = report.statuses, report.adapters
    st["H"], ad["H"] = compare(formula.h_rot, formula.h_refl, h, params)
    st["Q"], ad["Q"] = compare(formula.q, (), q, params)
    if formula.involution:
        st["R"], ad["R"] = compare(formula.r_rot, formula.r_refl, rr, params)
    else:
        st["R"], ad["R"] = Status.NOT_APPLICABLE, "none"
    st["h_class"] = check_h(hp, r, s, params)
    st["q_class"] = check_q(qp, r, s, params)
    st["psi"] = check_psi(pp, r, s, params)
    st["orbits"], ad["orbits"] = compare_partition(
        predicted_partition(r, s, params), h_orbits_on_q(theta, kind), params
    )
    st["g_orbit"] = Status.EXACT if len(g_orbits_on_q(theta, kind)) == 1 else Status.MISMATCH
    if theta.is_identity():
        st["hq"] = Status.NOT_APPLICABLE
    else:
        st["hq"] = Status.EXACT if hq_product_check(theta, kind) else Status.MISMATCH
    if kind is ActionKind.CANONICAL and canonical_order(theta) <= 2:
        differ, inside = r_vs_q_check(theta, kind)
        st["rq"] = Status.EXACT if differ and inside else Status.MISMATCH
    else:
        st["rq"] = Status.NOT_APPLICABLE
    return report
