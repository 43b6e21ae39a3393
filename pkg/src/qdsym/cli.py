"""Command-line front end: ``qdsym {group,aut,space,classes,counts,verify}``.

Data goes to stdout and diagnostics to stderr.  Exit codes: 0 success,
2 baseline drift (verify), 3 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import affine_aut as aff
from . import harness
from .canonical_aut import ActionKind, CanonicalAut, canonical_order, enumerate_canonical
from .modarith import (
    GroupParams,
    SizeGuardError,
    check_size,
    euler_phi,
    roots_of_unity,
    two_adic_shape,
)
from .qd_group import all_elements, element_order, inverse
from .symspace import render_indices, space_report

EXIT_OK, EXIT_DRIFT, EXIT_USAGE = 0, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _params(args) -> GroupParams:
    if args.k is None:
        raise UsageError("--k is required")
    try:
        p = GroupParams(args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    check_size(p.k, args.max_k)
    return p


def _theta(args, p: GroupParams) -> tuple[int, int]:
    if args.r is None or args.s is None:
        raise UsageError("--r and --s are both required")
    if not 0 < args.r < p.m or math.gcd(args.r, p.m) != 1:
        raise UsageError(f"r={args.r} is not in U_{p.m} (units mod m={p.m})")
    if not 0 <= args.s < p.n:
        raise UsageError(f"s={args.s} is not in Z_{p.n} (expected 0 <= s < {p.n})")
    return args.r, args.s


def _table(rows: list[dict], columns: list[str]) -> str:
    cells = [[str(row.get(c, "")) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _markdown(rows: list[dict], columns: list[str]) -> str:
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    lines += ["| " + " | ".join(str(row.get(c, "")) for c in columns) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _render(doc: dict, sections: list[tuple[str, list[dict], list[str]]], fmt: str) -> str:
    """json prints ``doc``; table and markdown print the same data section by section."""
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    out = []
    for title, rows, columns in sections:
        if fmt == "markdown":
            out.append(f"## {title}\n\n" + _markdown(rows, columns))
        else:
            out.append(f"{title}\n" + _table(rows, columns))
    return "\n".join(out)


def _kv_rows(mapping: dict) -> list[dict]:
    return [{"key": k, "value": json.dumps(v) if isinstance(v, (dict, list)) else v} for k, v in mapping.items()]


# subcommands --------------------------------------------------------------


def cmd_group(args) -> str:
    p = _params(args)
    rows = [
        {"element": str(g), "index": g.index(p), "order": element_order(g, p), "inverse": str(inverse(g, p))}
        for g in all_elements(p)
    ]
    doc = {"params": {"k": p.k, "m": p.m, "n": p.n, "order": p.order}, "elements": rows}
    return _render(doc, [(str(p), rows, ["index", "element", "order", "inverse"])], args.format)


def cmd_aut(args) -> str:
    p = _params(args)
    doc: dict = {"params": {"k": p.k, "m": p.m, "n": p.n}}
    sections = []
    if args.r is not None or args.s is not None:
        r, s = _theta(args, p)
        theta = aff.AffineAut(r, s, p)
        conj = sorted(s2 for s2 in aff.conjugate_shifts(r, s, p))
        info = {
            "r": r, "s": s,
            "affine_order": aff.affine_order(theta),
            "canonical_order": canonical_order(CanonicalAut(r, s, p)),
            "conjugate_shifts": conj,
        }
        doc["automorphism"] = info
        sections.append((f"{r} x + {s} in {p}", _kv_rows(info), ["key", "value"]))
    elif args.v is not None:
        roots = list(roots_of_unity(args.v, p))
        labels = [{"r": t.r, "s": t.s, "order": aff.affine_order(t)} for t in aff.enumerate_aut_v(args.v, p)]
        doc.update({"v": args.v, "roots": roots, "count": len(labels), "automorphisms": labels})
        summary = {"v": args.v, "roots": roots, "count": len(labels)}
        sections += [(f"Aut_{args.v} of {p}", _kv_rows(summary), ["key", "value"]),
                     ("labels", labels, ["r", "s", "order"])]
    else:
        labels = [{"r": t.r, "s": t.s, "affine_order": aff.affine_order(aff.AffineAut(t.r, t.s, p)),
                   "canonical_order": canonical_order(t)} for t in enumerate_canonical(p, args.max_k)]
        doc.update({"count": len(labels), "automorphisms": labels})
        sections.append((f"Aut({p}), {len(labels)} labels", labels, ["r", "s", "affine_order", "canonical_order"]))
    return _render(doc, sections, args.format)


def cmd_space(args) -> str:
    p = _params(args)
    r, s = _theta(args, p)
    kind = ActionKind(args.kind)
    report = space_report(r, s, p, kind)
    doc = report.to_json()
    f = report.formula
    formula_rows = [
        {"set": "H", "value": render_indices(f.h_rot, f.h_refl)},
        {"set": "Q", "value": render_indices(f.q)},
        {"set": "R", "value": render_indices(f.r_rot, f.r_refl) if f.involution else "-"},
    ]
    oracle = [
        {"set": "H", "value": str(report.oracle_h)},
        {"set": "Q", "value": str(report.oracle_q)},
        {"set": "R", "value": str(report.oracle_r)},
    ]
    status = [
        {"check": k, "status": str(v), "adapter": report.adapters.get(k, "-")}
        for k, v in report.statuses.items()
    ]
    first, second = ("formula (Z_n exponents)", formula_rows), ("oracle (Z_m exponents)", oracle)
    if args.coords == "oracle":
        first, second = second, first
    sections = [
        (f"{first[0]}, theta = {r} x + {s} in {p}", first[1], ["set", "value"]),
        (second[0], second[1], ["set", "value"]),
        ("statuses", status, ["check", "status", "adapter"]),
        ("classification", _kv_rows(report.classification), ["key", "value"]),
    ]
    return _render(doc, sections, args.format)


def cmd_classes(args) -> str:
    p = _params(args)
    v = args.v if args.v is not None else 2
    rows = [
        {"r": c.r, "representative": str(c.representative), "size": len(c.representatives),
         "shifts": list(c.shifts())}
        for c in aff.equivalence_classes(v, p)
    ]
    doc = {"params": {"k": p.k, "m": p.m, "n": p.n}, "v": v, "count": len(rows), "classes": rows}
    return _render(doc, [(f"{len(rows)} classes of Aut_{v}({p})", rows,
                          ["r", "representative", "size", "shifts"])], args.format)


def cmd_counts(args) -> str:
    k = args.k
    if k is None:
        raise UsageError("--k is required")
    if not 2 <= k <= harness.COUNT_MAX_K:
        raise UsageError(f"k must lie in [2, {harness.COUNT_MAX_K}] for counts")
    p = GroupParams(k)
    alpha, q = two_adic_shape(p.m)
    roots2 = roots_of_unity(2, p)
    nr = {r: aff.n_r(r, p) for r in roots2}
    counts = {
        "k": k, "m": p.m, "n": p.n, "alpha": alpha, "q": q,
        "aut": euler_phi(p.m) * p.n,
        "R2": len(roots2),
        "R2_formula": aff.involution_root_count_formula(p),
        "aut2": aff.count_aut_2(p),
        "C_formula": aff.involution_class_count(p),
        "C_witness": list(aff.class_count_witness(p)),
        "involution_classes": sum(nr.values()),
    }
    if args.v is not None:
        counts["v"] = args.v
        counts["Rv"] = list(roots_of_unity(args.v, p))
        counts["aut_v"] = aff.count_aut_v(args.v, p)
    return _render(counts, [(f"counts for {p}", _kv_rows(counts), ["key", "value"])], args.format)


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI or a single integer, got {text!r}") from None


def cmd_verify(args) -> tuple[str, int]:
    k_range = (args.k, args.k) if args.k is not None else args.k_range
    count_range = args.count_k_range if args.count_k_range else (k_range if args.k is not None else None)
    v_range = (args.v, args.v) if args.v is not None else (1, 6)
    manifest = harness.RunManifest(
        k_range=k_range, count_k_range=count_range, v_range=v_range,
        claims=tuple(args.claims) or ("*",), output_format=args.format,
        seed=args.seed, workers=args.workers, max_k=args.max_k,
    )
    fmt = args.format
    try:
        reports = harness.run(manifest)
        text = harness.emit(reports, fmt)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.bless:
        harness.bless(reports, args.baseline)
        print(f"wrote {args.baseline} ({len(reports)} cells)", file=sys.stderr)
        return text, EXIT_OK
    if args.no_baseline:
        return text, EXIT_OK
    try:
        diff = harness.diff_baseline(reports, args.baseline)
    except harness.BaselineMissing as exc:
        print(str(exc), file=sys.stderr)
        return text, EXIT_USAGE
    if not diff.ok:
        print(diff.describe(), file=sys.stderr)
        return text, EXIT_DRIFT
    return text, EXIT_OK


# parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--v", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--s", type=int)
    common.add_argument("--format", choices=["json", "table", "markdown"], default=None,
                        help="output format (default: table, or json for verify)")
    common.add_argument("--kind", choices=[k.value for k in ActionKind], default="canonical")
    common.add_argument("--max-k", type=int, default=None, help="size guard (default from QDSYM_MAX_K or 25)")

    parser = _Parser(prog="qdsym", description="Quasi-dihedral automorphisms and symmetric spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("group", parents=[common], help="element table and orders")
    sub.add_parser("aut", parents=[common], help="automorphism enumeration, orders and conjugacy")
    sp = sub.add_parser("space", parents=[common], help="H, Q and R for one automorphism")
    sp.add_argument("--coords", choices=["formula", "oracle"], default="formula",
                    help="which coordinate system to list first")
    sub.add_parser("classes", parents=[common], help="equivalence classes of Aut_v")
    sub.add_parser("counts", parents=[common], help="closed-form counts for one k")
    vp = sub.add_parser("verify", parents=[common], help="run the claim harness")
    vp.add_argument("--k-range", type=_range, default=(2, 12))
    vp.add_argument("--count-k-range", type=_range, default=None)
    vp.add_argument("--claims", nargs="*", default=[], help="fnmatch patterns over claim ids")
    vp.add_argument("--seed", type=int, default=harness.RunManifest.seed)
    vp.add_argument("--workers", type=int, default=1)
    vp.add_argument("--baseline", type=Path, default=Path(harness.BASELINE_NAME))
    vp.add_argument("--bless", action="store_true", help="overwrite the baseline with this run")
    vp.add_argument("--no-baseline", action="store_true", help="skip the baseline comparison")
    return parser


COMMANDS = {
    "group": cmd_group,
    "aut": cmd_aut,
    "space": cmd_space,
    "classes": cmd_classes,
    "counts": cmd_counts,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "verify" else "table"
    try:
        if args.command == "verify":
            text, code = cmd_verify(args)
        else:
            text, code = COMMANDS[args.command](args), EXIT_OK
    except (UsageError, SizeGuardError) as exc:
        print(f"qdsym {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
