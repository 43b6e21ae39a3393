"""Claim-by-claim verification runs.

Every claim in :data:`CLAIMS` is checked on a grid of parameter cells and
produces one :class:`ClaimReport` per cell.  A MISMATCH is report data, not a
failure: regression is defined against a blessed baseline file holding the
status of every cell.

Cells are computed as independent tasks (optionally on a thread pool) and the
collected reports are sorted before emission, so output does not depend on
scheduling.
"""

from __future__ import annotations

import fnmatch
import json
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from . import affine_aut as aff
from .canonical_aut import ActionKind, CanonicalAut, action_array, canonical_order, is_automorphism
from .modarith import (
    GroupParams,
    SizeGuardError,
    cyclic_subgroup,
    euler_phi,
    geometric_sum,
    max_k_bound,
    roots_of_unity,
    units,
    zdiv,
)
from .qd_group import (
    IDENTITY,
    ElementSet,
    GroupElement,
    all_elements,
    closure,
    element_order,
    inverse,
    is_subgroup,
    multiply,
    tables,
)
from .symspace import (
    Status,
    check_h,
    check_psi,
    check_q,
    classify_h,
    classify_q,
    compare,
    compare_partition,
    g_orbits_on_q,
    h_formula,
    h_orbits_on_q,
    hq_product,
    IndexSets,
    oracle_spaces,
    predict_h_orbits,
    predicted_partition,
    psi_q,
    q_formula,
    render_indices,
    render_predicted_orbits,
)

COUNT_MAX_K = 200
BASELINE_NAME = "verify-baseline.json"

PARAM_KEYS = ("k", "v", "r", "s", "item")


class BaselineMissing(FileNotFoundError):
    pass


@dataclass
class ClaimReport:
    claim_id: str
    params: dict
    status: Status
    lhs: str = ""
    rhs: str = ""
    adapter: str = "-"
    elapsed: float = field(default=0.0, compare=False)

    def sort_key(self) -> tuple:
        key: list = [self.claim_id]
        for name in PARAM_KEYS:
            value = self.params.get(name)
            key.append((0, -1) if value is None else (1, value) if isinstance(value, int) else (2, str(value)))
        return tuple(key)

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "claim_id": self.claim_id,
            "params": {k: self.params[k] for k in PARAM_KEYS if k in self.params},
            "status": str(self.status),
            "adapter": self.adapter,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out

    def baseline_row(self) -> dict:
        row = self.to_json()
        del row["lhs"], row["rhs"]
        return row


@dataclass(frozen=True)
class RunManifest:
    k_range: tuple[int, int] = (2, 12)
    # None: counting claims cover k in [2, 200] unless k_range is empty
    count_k_range: tuple[int, int] | None = None
    v_range: tuple[int, int] = (1, 6)
    claims: tuple[str, ...] = ("*",)
    output_format: str = "json"
    seed: int = 20240601
    workers: int = 1
    max_k: int | None = None

    def ks(self) -> range:
        return range(max(2, self.k_range[0]), self.k_range[1] + 1)

    def count_ks(self) -> range:
        if self.count_k_range is None:
            return range(2, COUNT_MAX_K + 1) if self.ks() else range(0)
        return range(max(2, self.count_k_range[0]), self.count_k_range[1] + 1)

    def vs(self) -> range:
        return range(max(1, self.v_range[0]), self.v_range[1] + 1)

    def wants(self, claim_id: str) -> bool:
        return any(fnmatch.fnmatchcase(claim_id, pat) for pat in self.claims)

    def validate(self) -> None:
        bound = self.max_k if self.max_k is not None else max_k_bound()
        if self.ks() and self.k_range[1] > bound:
            raise SizeGuardError(f"k_range upper end {self.k_range[1]} exceeds max k = {bound}")
        counts = self.count_ks()
        if counts and counts[-1] > COUNT_MAX_K:
            raise SizeGuardError(f"count_k_range upper end {counts[-1]} exceeds max k = {COUNT_MAX_K}")


def _fmt(values: Iterable) -> str:
    return "{" + ",".join(str(v) for v in values) + "}"


def _ok(flag: bool) -> Status:
    return Status.EXACT if flag else Status.MISMATCH


# per-k group claims -------------------------------------------------------


def _group_claims(k: int, seed: int) -> list[ClaimReport]:
    p = GroupParams(k)
    m, n = p.m, p.n
    out = []

    b = GroupElement(0, 1)
    bad = [i for i in range(m) if multiply(b, GroupElement(i, 0), p) != GroupElement(i * (n - 1) % m, 1)]
    out.append(ClaimReport("group.ba-relation", {"k": k}, _ok(not bad),
                           f"violations={len(bad)}", "violations=0"))

    orders = {(e.exp % 2, element_order(e, p)) for e in all_elements(p) if e.refl}
    out.append(ClaimReport("group.element-orders", {"k": k}, _ok(orders == {(0, 2), (1, 4)}),
                           _fmt(sorted(orders)), "{(0, 2),(1, 4)}"))

    elements = all_elements(p)
    rng = random.Random(seed * 1000 + k)
    assoc_bad = 0
    for _ in range(1000):
        x, y, z = (rng.choice(elements) for _ in range(3))
        if multiply(multiply(x, y, p), z, p) != multiply(x, multiply(y, z, p), p):
            assoc_bad += 1
    ident_bad = sum(
        1 for x in elements
        if multiply(x, IDENTITY, p) != x or multiply(IDENTITY, x, p) != x
        or multiply(x, inverse(x, p), p) != IDENTITY or multiply(inverse(x, p), x, p) != IDENTITY
    )
    out.append(ClaimReport("group.axioms", {"k": k}, _ok(assoc_bad == 0 and ident_bad == 0),
                           f"assoc={assoc_bad},unit-inverse={ident_bad}", "assoc=0,unit-inverse=0"))

    lagrange_bad = 0
    for _ in range(20):
        seed_set = ElementSet.of(p, rng.sample(elements, rng.randint(1, 3)))
        sub = closure(seed_set, p)
        if not is_subgroup(sub, p) or p.order % len(sub):
            lagrange_bad += 1
    out.append(ClaimReport("group.closure-lagrange", {"k": k}, _ok(lagrange_bad == 0),
                           f"violations={lagrange_bad}", "violations=0"))

    count = sum(1 for r in units(m) for s in range(n))
    out.append(ClaimReport("aut.canonical-count", {"k": k}, _ok(count == euler_phi(m) * n),
                           str(count), f"phi(m)*n={euler_phi(m) * n}"))
    return out


# per-(k, v) affine claims -------------------------------------------------


def _affine_claims(k: int, vs: range) -> list[ClaimReport]:
    p = GroupParams(k)
    n = p.n
    labels = aff.all_labels(p)
    orders = {t.label: aff.affine_order(t) for t in labels}
    out = []
    for v in vs:
        disagree = sum(1 for t in labels if aff.satisfies_order(t, v) != (v % orders[t.label] == 0))
        out.append(ClaimReport("aut.order-criterion", {"k": k, "v": v}, _ok(disagree == 0),
                               f"disagreements={disagree}", "disagreements=0"))

        brute = sum(1 for t in labels if v % orders[t.label] == 0)
        closed = aff.count_aut_v(v, p)
        listed = len(aff.enumerate_aut_v(v, p))
        out.append(ClaimReport("aut.aut-v-count", {"k": k, "v": v}, _ok(closed == listed == brute),
                               f"sum={closed}", f"enumerated={listed},iterated={brute}"))

        bad = [r for r in roots_of_unity(v, p)
               if not set(cyclic_subgroup(r - 1, n)) <= set(zdiv(geometric_sum(r, v, n), n))]
        out.append(ClaimReport("aut.coset-containment", {"k": k, "v": v}, _ok(not bad),
                               f"violations={_fmt(bad)}", "violations={}"))

        for r in roots_of_unity(v, p):
            orbits = len(aff.unit_orbits_on_cosets(r, v, p))
            predicted = aff.orbit_count_formula(r, v, p)
            q = aff.orbit_quotient(r, v, p)
            status = _ok(predicted == orbits) if predicted is not None else Status.MISMATCH
            out.append(ClaimReport("aut.orbit-count", {"k": k, "v": v, "r": r}, status,
                                   f"orbits={orbits}", f"divisors({q})={predicted}"))
    return out


def _conjugacy_claims(k: int) -> list[ClaimReport]:
    p = GroupParams(k)
    out = []
    for r in units(p.m):
        disagree = 0
        for s in range(p.n):
            brute = aff.brute_conjugacy_class(aff.AffineAut(r, s, p))
            criterion = {(r, s2) for s2 in aff.conjugate_shifts(r, s, p)}
            disagree += brute != criterion
        out.append(ClaimReport("aut.conjugacy-criterion", {"k": k, "r": r}, _ok(disagree == 0),
                               f"disagreements={disagree}", "disagreements=0"))
    return out


# per-theta claims ---------------------------------------------------------


def _eq1_rotation_hom(r: int, s: int, p: GroupParams) -> bool:
    t = tables(p)
    phi = action_array(r, s, ActionKind.PAPER_EQ1, p)
    rot = np.arange(p.m)
    lhs = phi[t.mul[np.ix_(rot, rot)]]
    rhs = t.mul[phi[rot][:, None], phi[rot][None, :]]
    return bool(np.array_equal(lhs, rhs))


def _theta_claims(k: int, r: int, s: int, wants: Callable[[str], bool]) -> list[ClaimReport]:
    p = GroupParams(k)
    m, n = p.m, p.n
    cell = {"k": k, "r": r, "s": s}
    theta = CanonicalAut(r, s, p)
    affine = aff.AffineAut(r, s, p)
    out = []

    def add(claim_id, status, lhs="", rhs="", adapter="-"):
        out.append(ClaimReport(claim_id, dict(cell), status, lhs, rhs, adapter))

    if wants("aut.canonical-valid"):
        ok, cex = is_automorphism(r, s, ActionKind.CANONICAL, p)
        add("aut.canonical-valid", _ok(ok), "automorphism" if ok else f"fails at {cex[0]},{cex[1]}", "automorphism")
    if wants("aut.eq1-valid"):
        ok, cex = is_automorphism(r, s, ActionKind.PAPER_EQ1, p)
        add("aut.eq1-valid", _ok(ok), "automorphism" if ok else f"fails at {cex[0]},{cex[1]}", "automorphism")
    if wants("aut.eq1-rotation-branch"):
        hom = _eq1_rotation_hom(r, s, p)
        predicted = (2 - n) * s % m == 0
        add("aut.eq1-rotation-branch", _ok(hom == predicted), f"hom={hom}", f"(2-n)s=0 mod m:{predicted}")

    c_order = canonical_order(theta)
    if wants("aut.order-vs-canonical"):
        a_order = aff.affine_order(affine)
        status = _ok(c_order == a_order)
        if c_order % a_order:
            status = Status.MISMATCH
        add("aut.order-vs-canonical", status, f"affine={a_order}", f"canonical={c_order}")

    formula = IndexSets.compute(r, s, p)
    h, q, rr = oracle_spaces(theta)

    if wants("space.H"):
        st, ad = compare(formula.h_rot, formula.h_refl, h, p)
        add("space.H", st, render_indices(formula.h_rot, formula.h_refl), str(h), ad)
    if wants("space.Q"):
        st, ad = compare(formula.q, (), q, p)
        add("space.Q", st, render_indices(formula.q), str(q), ad)
    if wants("space.R") and formula.involution:
        st, ad = compare(formula.r_rot, formula.r_refl, rr, p)
        add("space.R", st, render_indices(formula.r_rot, formula.r_refl), str(rr), ad)
    if wants("space.H-subgroup"):
        add("space.H-subgroup", _ok(is_subgroup(h, p)), f"|H|={len(h)}", "subgroup")
    if wants("space.H-class"):
        pred = classify_h(r, s, p)
        size = len(formula.h_rot) + len(formula.h_refl)
        add("space.H-class", check_h(pred, r, s, p),
            f"{pred.case}:cyclic={pred.cyclic},|H|={pred.size}" if pred.applicable else f"unmatched:{pred.unmatched}",
            f"|H|={size}")
    if wants("space.Q-class"):
        pred = classify_q(r, s, p)
        add("space.Q-class", check_q(pred, r, s, p),
            f"{pred.case}:cyclic={pred.cyclic}", f"|Q|={len(formula.q)}")
    if wants("space.Q-psi"):
        pred = psi_q(r, s, p)
        add("space.Q-psi", check_psi(pred, r, s, p),
            f"{pred.case}:<{pred.iso}>" if pred.applicable else f"unmatched:{pred.unmatched}",
            _fmt(formula.q))
    if wants("space.H-orbits"):
        oracle_blocks = h_orbits_on_q(theta)
        st, ad = compare_partition(predicted_partition(r, s, p), oracle_blocks, p)
        add("space.H-orbits", st, render_predicted_orbits(predict_h_orbits(r, s, p)),
            "{" + ",".join(_fmt(str(g) for g in b) for b in oracle_blocks) + "}", ad)
    if wants("space.G-orbit"):
        blocks = g_orbits_on_q(theta)
        add("space.G-orbit", _ok(len(blocks) == 1), f"orbits={len(blocks)}", "orbits=1")
    if wants("space.HQ") and not theta.is_identity():
        size = len(hq_product(theta))
        add("space.HQ", _ok(size < p.order), f"|HQ|={size}", f"<{p.order}")
    if c_order <= 2:
        q_set, r_set = set(q.members), set(rr.members)
        if wants("invol.Q-subset-R"):
            add("invol.Q-subset-R", _ok(q_set <= r_set), f"|Q|={len(q_set)}", f"|R|={len(r_set)}")
        if wants("invol.R-neq-Q"):
            add("invol.R-neq-Q", _ok(q_set != r_set), f"|R|={len(r_set)}", f"|Q|={len(q_set)}")
    return out


# counting claims ----------------------------------------------------------


def _count_claims(k: int, wants: Callable[[str], bool], with_classes: bool) -> list[ClaimReport]:
    p = GroupParams(k)
    out = []
    roots2 = roots_of_unity(2, p)
    if wants("invol.R2-count"):
        direct, formula = len(roots2), aff.involution_root_count_formula(p)
        out.append(ClaimReport("invol.R2-count", {"k": k}, _ok(direct == formula),
                               f"|R2|={direct}", f"formula={formula}"))
    nr = {r: aff.n_r(r, p) for r in roots2}
    if wants("invol.Nr-bound"):
        for r in roots2:
            ok = nr[r] <= 2 and (nr[r] == 2) == aff.n_r_two_case(r, p)
            out.append(ClaimReport("invol.Nr-bound", {"k": k, "r": r}, _ok(ok),
                                   f"N_r={nr[r]}", f"two-case={aff.n_r_two_case(r, p)}"))
    formula = aff.involution_class_count(p)
    if wants("invol.C4k-witness"):
        witness = [r for r in roots2 if nr[r] == 2]
        out.append(ClaimReport("invol.C4k-witness", {"k": k}, _ok(len(witness) == formula),
                               f"|{{r: N_r=2}}|={len(witness)}", f"formula={formula}"))
    total = sum(nr.values())
    if wants("invol.C4k-classes"):
        out.append(ClaimReport("invol.C4k-classes", {"k": k}, _ok(total == formula),
                               f"sum N_r={total}", f"formula={formula}"))
    if with_classes and wants("invol.classes-sum"):
        classes = len(aff.equivalence_classes(2, p))
        out.append(ClaimReport("invol.classes-sum", {"k": k}, _ok(classes == total),
                               f"classes={classes}", f"sum N_r={total}"))
    if with_classes and wants("invol.aut2-sum"):
        brute = sum(1 for t in aff.all_labels(p) if aff.compose(t, t).is_identity())
        closed = aff.count_aut_2(p)
        out.append(ClaimReport("invol.aut2-sum", {"k": k}, _ok(brute == closed),
                               f"sum gcd(r+1,n)={closed}", f"iterated={brute}"))
    return out


# worked examples ----------------------------------------------------------

# (k, r, s, which, rotations, reflections) as printed
EXAMPLE_SETS = (
    (8, 3, 12, "H", (0, 8), (2, 10)),
    (8, 3, 12, "Q", tuple(range(0, 16, 2)), ()),
    (6, 7, 11, "H", (0, 3, 6, 9), ()),
    (6, 11, 10, "H", (0, 2, 4, 6, 8, 10), ()),
    (6, 11, 4, "H", (0, 2, 4, 6, 8, 10), ()),
    (6, 5, 8, "H", (0, 3, 6, 9), (2, 8)),
    (6, 7, 4, "H", (0, 6), (4, 10)),
    (5, 3, 5, "H", (0, 5), ()),
    (5, 7, 2, "H", tuple(range(10)), ()),
    (5, 7, 4, "H", (0, 5), (4,)),
    (6, 7, 11, "Q", (0, 1, 4, 8), ()),
    (6, 5, 8, "Q", (0, 4, 8), ()),
    (6, 7, 6, "Q", (0, 6), ()),
    (6, 11, 4, "Q", (0, 4, 6, 8), ()),
    (6, 1, 10, "Q", (0, 2, 4, 8), ()),
    (6, 5, 6, "Q", (0, 2, 4, 6, 8, 10), ()),
    (5, 7, 6, "Q", (0, 2, 4, 6, 8), ()),
    (5, 1, 7, "Q", (0, 2, 3, 4, 6, 8), ()),
    (5, 11, 5, "Q", (0, 5), ()),
    (5, 7, 5, "Q", tuple(range(10)), ()),
    (6, 17, 8, "H", (0, 3, 6, 9), (2, 8)),
    (6, 17, 8, "Q", (0, 4, 8), ()),
    (6, 5, 3, "H", (0,), (6,)),
    (6, 5, 3, "Q", (0, 1, 2, 4, 5, 6, 8, 9, 10), ()),
)

# (k, r, s, which, cyclic) as printed
EXAMPLE_CYCLICITY = (
    (6, 7, 11, "H", True), (6, 11, 10, "H", True), (6, 11, 4, "H", True),
    (6, 5, 8, "H", False), (6, 7, 4, "H", False),
    (5, 3, 5, "H", True), (5, 7, 2, "H", True), (5, 7, 4, "H", False),
    (6, 7, 11, "Q", False), (6, 5, 8, "Q", True), (6, 7, 6, "Q", True),
    (6, 11, 4, "Q", False), (6, 1, 10, "Q", False), (6, 5, 6, "Q", True),
    (5, 7, 6, "Q", True), (5, 1, 7, "Q", False), (5, 11, 5, "Q", True), (5, 7, 5, "Q", True),
)


def _example_claims() -> list[ClaimReport]:
    out = []
    for k, r, s, which, rot, refl in EXAMPLE_SETS:
        p = GroupParams(k)
        if which == "H":
            got = h_formula(r, s, p)
        else:
            got = (q_formula(r, s, p), ())
        ok = set(got[0]) == set(rot) and set(got[1]) == set(refl)
        out.append(ClaimReport("example.sets", {"k": k, "r": r, "s": s, "item": which}, _ok(ok),
                               render_indices(*got), render_indices(rot, refl)))
    for k, r, s, which, cyclic in EXAMPLE_CYCLICITY:
        p = GroupParams(k)
        pred = classify_h(r, s, p) if which == "H" else classify_q(r, s, p)
        out.append(ClaimReport("example.cyclicity", {"k": k, "r": r, "s": s, "item": which},
                               _ok(pred.cyclic == cyclic), f"predicted={pred.cyclic}", f"printed={cyclic}"))

    def count(item, k, lhs, rhs):
        out.append(ClaimReport("example.counts", {"k": k, "item": item}, _ok(lhs == rhs), str(lhs), str(rhs)))

    count("R3", 7, roots_of_unity(3, GroupParams(7)), (1, 9, 11, 15, 23, 25))
    count("R2", 5, roots_of_unity(2, GroupParams(5)), (1, 9, 11, 19))
    count("R2", 6, roots_of_unity(2, GroupParams(6)), units(24))
    count("R2", 24, roots_of_unity(2, GroupParams(24)),
          (1, 7, 17, 23, 25, 31, 41, 47, 49, 55, 65, 71, 73, 79, 89, 95))
    count("R2", 48, roots_of_unity(2, GroupParams(48)),
          (1, 17, 31, 47, 49, 65, 79, 95, 97, 113, 127, 143, 145, 161, 175, 191))
    count("C-witness", 48, aff.class_count_witness(GroupParams(48)), (1, 31, 65, 95, 97, 127, 161, 191))
    count("C", 48, aff.involution_class_count(GroupParams(48)), 8)
    count("classes-v2", 5, len(aff.equivalence_classes(2, GroupParams(5))), 8)
    count("N_5", 6, aff.n_r(5, GroupParams(6)), 2)
    p8 = GroupParams(8)
    count("7x+3~7x+14", 8, aff.are_conjugate(aff.AffineAut(7, 3, p8), aff.AffineAut(7, 14, p8))[0], False)
    count("7x+3~7x+11", 8, aff.are_conjugate(aff.AffineAut(7, 3, p8), aff.AffineAut(7, 11, p8))[0], True)
    p7 = GroupParams(7)
    count("order(9x+6)", 7, aff.affine_order(aff.AffineAut(9, 6, p7)), 3)
    count("order(9x+12)", 7, aff.affine_order(aff.AffineAut(9, 12, p7)), 3)
    count("orbits-r9", 5, len(aff.unit_orbits_on_cosets(9, 2, GroupParams(5))), 2)
    count("H-orbits(17x+8)", 6, render_predicted_orbits(predict_h_orbits(17, 8, GroupParams(6))),
          "{{1},{a^4,a^-4},{a^8,a^-8}}")
    return out


# registry -----------------------------------------------------------------

CLAIMS: dict[str, str] = {
    "group.ba-relation": "b a^i = a^{i(n-1)} b for every i",
    "group.element-orders": "a^{2i} b has order 2 and a^{2i+1} b order 4",
    "group.axioms": "sampled associativity, exhaustive identity and inverse laws",
    "group.closure-lagrange": "closures are subgroups whose order divides 2m",
    "aut.canonical-count": "|Aut| = phi(m) n",
    "aut.canonical-valid": "the canonical action of (r, s) is an automorphism",
    "aut.eq1-valid": "the printed affine action of (r, s) is an automorphism",
    "aut.eq1-rotation-branch": "printed action on <a> is a homomorphism iff (2-n)s = 0 mod m",
    "aut.order-vs-canonical": "affine order equals the true automorphism order",
    "aut.order-criterion": "theta^v = id iff r in R^v_m and s in ZDiv(1 + ... + r^{v-1})",
    "aut.aut-v-count": "|Aut_v| = sum of gcd(1 + ... + r^{v-1}, n) over R^v_m",
    "aut.coset-containment": "<r-1> lies inside ZDiv(1 + ... + r^{v-1})",
    "aut.orbit-count": "U_m-orbits on the coset quotient = divisor count",
    "aut.conjugacy-criterion": "conjugacy iff equal r and f s1 - s2 in <r-1>",
    "space.H": "fixed-point set congruences",
    "space.Q": "symmetric space congruences",
    "space.R": "twisted involution congruences",
    "space.H-subgroup": "the fixed-point set is a subgroup",
    "space.H-class": "H cyclicity and order decision tree",
    "space.Q-class": "Q cyclicity decision tree",
    "space.Q-psi": "psi(Q) generator by |Q| case",
    "space.H-orbits": "H-orbits on Q are singletons or inverse pairs",
    "space.G-orbit": "a single G-orbit on Q under twisted conjugation",
    "space.HQ": "HQ is a proper subset of G",
    "invol.Q-subset-R": "Q lies inside R for involutions",
    "invol.R-neq-Q": "R differs from Q for involutions",
    "invol.R2-count": "|R^2_m| by the 2-adic case formula",
    "invol.Nr-bound": "N_r <= 2, with N_r = 2 iff r = +-1 mod 2^(alpha-1)",
    "invol.C4k-witness": "class-count formula vs the r with N_r = 2",
    "invol.C4k-classes": "class-count formula vs the number of involution classes",
    "invol.classes-sum": "sum of N_r equals the number of involution classes",
    "invol.aut2-sum": "|Aut_2| = sum of gcd(r+1, n)",
    "example.sets": "printed H and Q listings",
    "example.cyclicity": "printed cyclic / non-cyclic verdicts",
    "example.counts": "printed counts and sets",
}


def _tasks(manifest: RunManifest) -> list[Callable[[], list[ClaimReport]]]:
    wants = manifest.wants
    tasks: list[Callable[[], list[ClaimReport]]] = []
    ks = list(manifest.ks())
    vs = manifest.vs()
    if ks and any(wants(c) for c in ("example.sets", "example.cyclicity", "example.counts")):
        tasks.append(_example_claims)
    for k in ks:
        tasks.append(lambda k=k: _group_claims(k, manifest.seed))
        tasks.append(lambda k=k: _affine_claims(k, vs))
        if wants("aut.conjugacy-criterion"):
            tasks.append(lambda k=k: _conjugacy_claims(k))
        p = GroupParams(k)
        for r in units(p.m):
            tasks.append(lambda k=k, r=r, n=p.n: [
                rep for s in range(n) for rep in _theta_claims(k, r, s, wants)
            ])
    oracle_ks = set(ks)
    for k in manifest.count_ks():
        tasks.append(lambda k=k: _count_claims(k, wants, k in oracle_ks))
    return tasks


def _timed(task):
    start = time.perf_counter()
    reports = task()
    elapsed = time.perf_counter() - start
    for rep in reports:
        rep.elapsed = elapsed / max(1, len(reports))
    return reports


def run(manifest: RunManifest) -> list[ClaimReport]:
    manifest.validate()
    tasks = _tasks(manifest)
    if manifest.workers > 1:
        with ThreadPoolExecutor(max_workers=manifest.workers) as pool:
            batches = list(pool.map(_timed, tasks))
    else:
        batches = [_timed(t) for t in tasks]
    reports = [rep for batch in batches for rep in batch if manifest.wants(rep.claim_id)]
    reports.sort(key=ClaimReport.sort_key)
    return reports


def status_counts(reports: Iterable[ClaimReport]) -> dict[str, dict[str, int]]:
    counts: dict[str, dict[str, int]] = {}
    for rep in reports:
        row = counts.setdefault(rep.claim_id, {})
        row[str(rep.status)] = row.get(str(rep.status), 0) + 1
    return counts


def _params_text(params: dict) -> str:
    return " ".join(f"{k}={params[k]}" for k in PARAM_KEYS if k in params)


LEDGER_LIMIT = 20


def emit(reports: list[ClaimReport], fmt: str = "json", timings: bool = False) -> str:
    if fmt == "json":
        return "".join(json.dumps(r.to_json(timings), sort_keys=True) + "\n" for r in reports)
    statuses = [s.value for s in Status]
    counts = status_counts(reports)
    if fmt == "table":
        width = max([len(c) for c in counts] + [8])
        lines = [f"{'claim':<{width}}  " + "  ".join(f"{s:>14}" for s in statuses)]
        for claim in sorted(counts):
            lines.append(f"{claim:<{width}}  " + "  ".join(f"{counts[claim].get(s, 0):>14}" for s in statuses))
        return "\n".join(lines) + "\n" if reports else ""
    if fmt == "markdown":
        if not reports:
            return ""
        lines = ["# Verification summary", "", "| claim | " + " | ".join(statuses) + " |",
                 "|---" * (len(statuses) + 1) + "|"]
        for claim in sorted(counts):
            lines.append(f"| {claim} | " + " | ".join(str(counts[claim].get(s, 0)) for s in statuses) + " |")
        lines += ["", "## Discrepancy ledger", ""]
        by_claim: dict[str, list[ClaimReport]] = {}
        for rep in reports:
            if rep.status is Status.MISMATCH:
                by_claim.setdefault(rep.claim_id, []).append(rep)
        if not by_claim:
            lines.append("No mismatches.")
        for claim in sorted(by_claim):
            rows = by_claim[claim]
            lines.append(f"### {claim} ({len(rows)} mismatches)")
            lines.append("")
            for rep in rows[:LEDGER_LIMIT]:
                lines.append(f"- {_params_text(rep.params)}: `{rep.lhs}` vs `{rep.rhs}`")
            if len(rows) > LEDGER_LIMIT:
                lines.append(f"- ... and {len(rows) - LEDGER_LIMIT} more")
            lines.append("")
        return "\n".join(lines).rstrip("\n") + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected json, markdown or table")


def baseline_text(reports: list[ClaimReport]) -> str:
    return "".join(json.dumps(r.baseline_row(), sort_keys=True) + "\n" for r in reports)


def bless(reports: list[ClaimReport], path: Path) -> None:
    Path(path).write_text(baseline_text(reports), encoding="utf-8")


@dataclass
class BaselineDiff:
    missing: list[str] = field(default_factory=list)
    unexpected: list[str] = field(default_factory=list)
    changed: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.missing or self.unexpected or self.changed)

    def describe(self, limit: int = 20) -> str:
        lines = []
        for label, rows in (("changed", self.changed), ("missing", self.missing), ("new", self.unexpected)):
            for row in rows[:limit]:
                lines.append(f"{label}: {row}")
            if len(rows) > limit:
                lines.append(f"{label}: ... and {len(rows) - limit} more")
        return "\n".join(lines)


def diff_baseline(reports: list[ClaimReport], path: Path) -> BaselineDiff:
    path = Path(path)
    if not path.exists():
        raise BaselineMissing(f"baseline {path} not found; regenerate it with `qdsym verify --bless`")

    def key(row):
        return row["claim_id"] + " " + _params_text(row["params"])

    old = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            row = json.loads(line)
            old[key(row)] = row
    new = {key(r.baseline_row()): r.baseline_row() for r in reports}
    diff = BaselineDiff()
    for k in sorted(old.keys() - new.keys()):
        diff.missing.append(k)
    for k in sorted(new.keys() - old.keys()):
        diff.unexpected.append(k)
    for k in sorted(old.keys() & new.keys()):
        if old[k] != new[k]:
            diff.changed.append(f"{k}: {old[k]['status']}/{old[k]['adapter']} -> {new[k]['status']}/{new[k]['adapter']}")
    return diff
