"""Command line: ``smalehom {list,show,compute,verify,periodic}``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

import yaml

from . import acceptance
from .abelian import k_groups_low_dim
from .endomorphisms import ExpandingEndo, builtin_endos, endo_from_dict, get_builtin, \
    special_degree, validate_endo
from .invariants import ReportDocument, compute_report, periodic_points, render_text
from .manifolds import FlatManifold, InsufficientData, catalog, cohomology, load_manifolds, \
    lookup, validate
from .oracle import DEFAULT_DEPTH, check_canonical_against_fingerprint, default_denominators, \
    fingerprint_for

FORMATS = ("text", "json")


class CliError(Exception):
    pass


def _user_manifolds(ref: Optional[str]) -> list[FlatManifold]:
    if ref is None or not Path(ref).is_file():
        return []
    try:
        return load_manifolds(Path(ref))
    except (ValueError, yaml.YAMLError) as exc:
        raise CliError(f"{ref}: {exc}") from exc


def resolve_manifold(ref: str) -> FlatManifold:
    found = _user_manifolds(ref)
    if found:
        if len(found) > 1:
            raise CliError(f"{ref} holds {len(found)} manifolds; name one instead")
        return found[0]
    try:
        return lookup(ref)
    except KeyError as exc:
        raise CliError(str(exc.args[0])) from exc


def resolve_endo(ref: str, manifold_ref: Optional[str] = None) -> ExpandingEndo:
    path = Path(ref)
    if not path.is_file():
        try:
            return get_builtin(ref)
        except KeyError as exc:
            raise CliError(str(exc.args[0])) from exc
    try:
        doc = yaml.safe_load(path.read_text())
        if not isinstance(doc, dict):
            raise ValueError("expected a mapping")
        manifold = None
        if manifold_ref is not None:
            manifold = resolve_manifold(manifold_ref)
        elif isinstance(doc.get("manifold"), str):
            manifold = resolve_manifold(doc["manifold"])
        e = endo_from_dict(doc, manifold)
    except (ValueError, KeyError, TypeError, yaml.YAMLError) as exc:
        raise CliError(f"{ref}: {exc}") from exc
    problems = validate_endo(e)
    if problems:
        raise CliError(f"{ref}: " + "; ".join(problems))
    return e


def parse_k_range(text: str) -> list[int]:
    """``3``, ``1..4`` or ``1,2,5``."""
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        ks = list(range(lo, hi + 1))
    else:
        try:
            ks = [int(x) for x in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad --k value {text!r}") from None
    if not ks or min(ks) < 1:
        raise argparse.ArgumentTypeError("--k needs integers >= 1")
    return ks


def _manifold_doc(m: FlatManifold) -> dict:
    doc = {
        "name": m.name,
        "dim": m.dim,
        "orientable": m.orientable,
        "holonomy_order": m.holonomy_order,
        "homology": {str(k): str(h) for k, h in enumerate(m.homology)},
    }
    try:
        doc["cohomology"] = {str(k): str(h) for k, h in enumerate(cohomology(m))}
    except InsufficientData:
        doc["cohomology"] = "insufficient data"
    if m.dim <= 3 and not m.is_partial:
        coh = cohomology(m)
        k0, k1 = k_groups_low_dim(coh, m.dim)
        h0, h1 = k_groups_low_dim(m.homology, m.dim)
        doc["K_cohomology"] = {"0": str(k0), "1": str(k1)}
        doc["K_homology"] = {"0": str(h0), "1": str(h1)}
    doc["special_degree"] = special_degree(m)
    doc["violations"] = validate(m)
    return doc


def _emit(args, text: str, doc) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text)


def cmd_list(args) -> int:
    ms = list(catalog()) + _user_manifolds(args.manifold)
    rows = [(m.name, str(m.dim), "yes" if m.orientable else "no", str(m.holonomy_order),
             ", ".join(str(h) for h in m.homology)) for m in ms]
    head = ("name", "d", "orientable", "|F|", "H_0 .. H_d")
    widths = [max(len(r[i]) for r in rows + [head]) for i in range(4)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths)) + "  " + head[4]]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)) + "  " + r[4])
    _emit(args, "\n".join(lines) + "\n", [_manifold_doc(m) for m in ms])
    return 0


def cmd_show(args) -> int:
    if not args.manifold:
        raise CliError("show needs --manifold")
    m = resolve_manifold(args.manifold)
    doc = _manifold_doc(m)
    lines = [f"{m.name}: dimension {m.dim}, {'orientable' if m.orientable else 'nonorientable'}, "
             f"holonomy order {m.holonomy_order}"]
    for key, title in (("homology", "H_"), ("cohomology", "H^")):
        if isinstance(doc[key], str):
            lines.append(f"{key}: {doc[key]}")
            continue
        lines.append(key)
        lines.extend(f"  {title}{k} = {g}" for k, g in doc[key].items())
    for key, title in (("K_cohomology", "K^"), ("K_homology", "K_")):
        if key in doc:
            lines.append(f"{key.replace('_', '-')}: {title}0 = {doc[key]['0']}, "
                         f"{title}1 = {doc[key]['1']}")
    lines.append(f"special degree (|F|+1)^d = {doc['special_degree']}")
    lines.append("violations: " + ("; ".join(doc["violations"]) or "none"))
    _emit(args, "\n".join(lines) + "\n", doc)
    return 1 if doc["violations"] else 0


def cmd_compute(args) -> int:
    e = resolve_endo(args.endo or "klein9", args.manifold)
    report = compute_report(e)
    if args.format == "json":
        sys.stdout.write(ReportDocument.from_report(report).to_json())
    else:
        sys.stdout.write(render_text(report))
    return 1 if any(c.status == "fail" for c in report.notes) else 0


def cmd_periodic(args) -> int:
    e = resolve_endo(args.endo or "circle2", args.manifold)
    ks = args.k or [1]
    report = compute_report(e, checks=False)
    rows = []
    for k in ks:
        try:
            c = periodic_points(report, k)
            rows.append({"k": k, "value": c.value, "bounds": list(c.bounds)})
        except InsufficientData as exc:
            rows.append({"k": k, "value": "insufficient data", "detail": str(exc)})
    lines = [f"{e.name}: |Per_k| (theorem pair n^k - 1, n^k + 1)"]
    for r in rows:
        if isinstance(r["value"], int):
            lo, hi = r["bounds"]
            lines.append(f"  k={r['k']}: {r['value']}   {{{lo}, {hi}}}")
        else:
            lines.append(f"  k={r['k']}: insufficient data ({r['detail']})")
    _emit(args, "\n".join(lines) + "\n", {"endo": e.name, "degree": e.degree, "periodic": rows})
    return 0


def cmd_verify(args) -> int:
    depth = args.depth
    rows = []
    for number, title, ok, detail in acceptance.run_all(depth):
        rows.append({"name": f"criterion {number}: {title}", "status": "pass" if ok else "fail",
                     "detail": detail})
    endos = dict(builtin_endos())
    if args.endo:
        e = resolve_endo(args.endo, args.manifold)
        endos[e.name] = e
    for name, e in endos.items():
        report = compute_report(e)
        for c in report.notes:
            rows.append({"name": f"{name} {c.name}", "status": c.status, "detail": c.detail})
        dens = default_denominators(e.degree)
        bad = 0
        for graded in (report.stable_homology, report.unstable_homology, report.cech_X):
            for L in graded:
                if not L.is_canonical:
                    continue
                if not check_canonical_against_fingerprint(L, fingerprint_for(L, depth, dens)):
                    bad += 1
        rows.append({"name": f"{name} oracle", "status": "fail" if bad else "pass",
                     "detail": f"{bad} disagreements at depth {depth}"})
    failed = [r for r in rows if r["status"] in ("fail", "unknown")]
    width = max(len(r["name"]) for r in rows)
    lines = [f"{r['name']:<{width}}  {r['status']:<7}  {r['detail']}" for r in rows]
    lines.append(f"{len(rows) - len(failed)}/{len(rows)} passed")
    _emit(args, "\n".join(lines) + "\n", {"results": rows, "passed": not failed})
    return 1 if failed else 0


COMMANDS = {
    "list": cmd_list, "show": cmd_show, "compute": cmd_compute,
    "verify": cmd_verify, "periodic": cmd_periodic,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="smalehom",
        description="Invariants of solenoids over flat manifolds.")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "list": "list the manifold catalog (plus any --manifold file)",
        "show": "homology, cohomology and K-groups of one manifold",
        "compute": "full invariant report for an expanding endomorphism",
        "verify": "acceptance criteria, theorem checks and oracles",
        "periodic": "periodic-point counts |Per_k|",
    }
    for name in COMMANDS:
        s = sub.add_parser(name, help=helps[name])
        s.add_argument("--endo", help=f"builtin ({', '.join(builtin_endos())}) or YAML file")
        s.add_argument("--manifold", help="catalog name or manifold file")
        s.add_argument("--k", type=parse_k_range, help="iterate(s): 3, 1..4 or 1,2,5")
        s.add_argument("--format", choices=FORMATS, default="text")
        s.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="oracle depth")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.depth < 1:
        print("error: --depth must be at least 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
