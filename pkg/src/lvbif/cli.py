"""Command-line front end.

Subcommands:
  analyze   case summary and equilibrium listing at one parameter point
  curves    sample every admissible bifurcation curve into a CSV
  portrait  integrate a phase portrait to SVG and/or CSV
  verify    region type-table verification plus the genericity suite

Exit codes: 0 success, 1 verification mismatch, 2 configuration error,
3 unsupported case.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from . import bifurcation as bif
from . import cases
from .dynamics import portrait
from .emit import curves_csv, fmt, portrait_svg, trajectories_csv
from .equilibria import TOL, Tolerances, find_equilibria
from .errors import LVError, NotApplicable, OnCurve, UnsupportedCase
from .model import (DELTA_ZERO, NONDEGENERATE, THETA_ZERO, ParamPoint,
                    load_system)
from .regions import region_membership, select_case, verify_tables
from .verification import sotomayor_suite

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_UNSUPPORTED = 3

FAMILY_ALIASES = {
    "nondegenerate": NONDEGENERATE,
    "deltazero": DELTA_ZERO,
    "thetazero": THETA_ZERO,
}


def _parse_mu(text: str) -> ParamPoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"--mu expects 'a,b', got {text!r}")
    return ParamPoint(float(parts[0]), float(parts[1]))


def _load(path: str):
    try:
        return load_system(path)
    except (LVError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=_sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _tolerances(args) -> Tolerances:
    eps = getattr(args, "epsilon_disk", None)
    if eps:
        from dataclasses import replace
        return replace(TOL, epsilon_disk=eps)
    return TOL


def cmd_analyze(args) -> int:
    loaded = _load(args.config)
    sys_ = loaded.system
    mu = _parse_mu(args.mu)
    tol = _tolerances(args)
    try:
        desc = select_case(sys_)
    except UnsupportedCase as exc:
        print(f"unsupported case: {exc}", file=_sys.stderr)
        return EXIT_UNSUPPORTED
    print(f"degeneracy class: {sys_.degeneracy}")
    if sys_.mu_negated:
        print("note: parameters relabeled nu = -mu by the mirrored reduction; "
              "all values below are in nu")
    print("case signs: " + ", ".join(f"{k}={v:+d}" for k, v in desc.signs))
    for note in desc.notes:
        print(f"note: {note}")
    eqs = find_equilibria(sys_, mu, tol)
    print(f"equilibria at mu = ({fmt(mu.mu1)}, {fmt(mu.mu2)}):")
    for eq in eqs:
        lam1, lam2 = eq.eigenvalues
        flags = []
        if not eq.proper:
            flags.append("virtual")
        if eq.trivial:
            flags.append("trivial")
        ftxt = f" [{', '.join(flags)}]" if flags else ""
        print(f"  {eq.label:<4s} xi=({fmt(eq.xi[0])}, {fmt(eq.xi[1])}) "
              f"eig=({lam1:.6g}, {lam2:.6g}) kind={eq.kind}{ftxt}")
    for note in eqs.notes:
        print(f"  note: {note}")
    if mu.norm > 0.0:
        try:
            region = region_membership(sys_, mu, tol)
            print("region signature: " + "".join(region.signature)
                  + f" (sector {region.sector_id}, bounded by "
                  + "/".join(region.bounding) + ")")
        except OnCurve as exc:
            print(f"region: on a bifurcation curve ({exc})")
        except (ValueError, LVError) as exc:
            print(f"region: not resolved ({exc})")
    return EXIT_OK


def cmd_curves(args) -> int:
    loaded = _load(args.config)
    sys_ = loaded.system
    radii = [float(r) for r in args.radii.split(",")]
    curves = []
    for kind in bif.admissible_kinds(sys_):
        try:
            curve = bif.trace_curve(sys_, kind, radii)
        except NotApplicable:
            continue
        except LVError as exc:
            print(f"{kind}: skipped ({exc})")
            continue
        curves.append(curve)
        lead = "" if curve.leading is None else f" leading={fmt(curve.leading)}"
        print(f"{kind}: {len(curve.samples)} samples{lead}")
        for note in curve.notes:
            print(f"  note: {note}")
    text = curves_csv(curves)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        _sys.stdout.write(text)
    return EXIT_OK


def cmd_portrait(args) -> int:
    loaded = _load(args.config)
    sys_ = loaded.system
    mu = _parse_mu(args.mu)
    tol = _tolerances(args)
    port = portrait(sys_, mu, grid_density=args.grid, tol=tol)
    wrote = False
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(portrait_svg(port))
        print(f"wrote {args.svg}")
        wrote = True
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(trajectories_csv(port.trajectories + port.separatrices))
        print(f"wrote {args.csv}")
        wrote = True
    if not wrote:
        print("nothing written (pass --svg and/or --csv)")
    terms = {}
    for tr in port.trajectories:
        key = tr.terminal_label or tr.terminal
        terms[key] = terms.get(key, 0) + 1
    print("terminals: " + ", ".join(f"{k}:{v}" for k, v in sorted(terms.items())))
    return EXIT_OK


def _oracle_pass(report, r: float, seed: int) -> tuple[bool, list[str]]:
    """Cross-check every diagram against the brute-force oracles."""
    import math

    from .oracle import blocks_from, grid_equilibria, sign_scan

    lines = [f"oracle cross-checks (seed {seed}):"]
    all_ok = True
    for diagram in report.diagrams:
        sys_ = dict(cases.CANONICAL_BY_FAMILY[report.family]).get(
            diagram.case_id)
        if sys_ is None:
            continue
        sectors = diagram.sectors
        scan = sign_scan(sys_, r, 1440)
        got = [b.signature for b in
               blocks_from(scan, sectors[0].representative.angle)]
        rle_ok = got == [s.signature for s in sectors]
        mu = sectors[0].representative
        eqs = find_equilibria(sys_, mu)
        m = max(max(abs(e.xi[0]), abs(e.xi[1])) for e in eqs) * 1.7 + r / 10.0
        roots = grid_equilibria(sys_, mu, ((-m, m), (-m, m)), n=300,
                                jitter_seed=seed)
        grid_ok = len(roots) == len(eqs) and all(
            min(math.hypot(e.xi[0] - q[0], e.xi[1] - q[1]) for q in roots)
            < 1e-9 for e in eqs)
        ok = rle_ok and grid_ok
        all_ok = all_ok and ok
        lines.append(f"  [{'ok ' if ok else 'FAIL'}] case {diagram.case_id}: "
                     f"sector RLE {'matches' if rle_ok else 'differs'}, "
                     f"grid roots {'match' if grid_ok else 'differ'}")
    return all_ok, lines


def cmd_verify(args) -> int:
    name = args.family.lower()
    if name in ("doublydegenerate", "doubly_degenerate"):
        print("the doubly degenerate class is out of scope", file=_sys.stderr)
        return EXIT_UNSUPPORTED
    if name not in FAMILY_ALIASES:
        print(f"unknown family {args.family!r}", file=_sys.stderr)
        return EXIT_UNSUPPORTED
    family = FAMILY_ALIASES[name]
    case_list = None
    if args.config:
        loaded = _load(args.config)
        try:
            desc = select_case(loaded.system)
        except UnsupportedCase as exc:
            print(f"unsupported case: {exc}", file=_sys.stderr)
            return EXIT_UNSUPPORTED
        if desc.family != family:
            print(f"config system is {desc.family}, not {family}",
                  file=_sys.stderr)
            return EXIT_UNSUPPORTED
        case_list = list(cases.CANONICAL_BY_FAMILY[family]) + [
            ("config", loaded.system)]
    try:
        report = verify_tables(family, r=args.r, cases=case_list)
    except UnsupportedCase as exc:
        print(f"unsupported case: {exc}", file=_sys.stderr)
        return EXIT_UNSUPPORTED
    print(report.render_text())
    soto = sotomayor_suite(family)
    for line in soto.lines:
        print(line)
    oracle_ok = True
    oracle_lines: list[str] = []
    if args.oracle:
        oracle_ok, oracle_lines = _oracle_pass(report, args.r, args.seed)
        for line in oracle_lines:
            print(line)
    if args.json_out:
        payload = report.as_dict()
        payload["sotomayor"] = soto.as_dict()
        if args.oracle:
            payload["oracle"] = {"success": oracle_ok, "checks": oracle_lines}
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
        print(f"wrote {args.json_out}")
    ok = report.success and soto.success and oracle_ok
    print(f"verification {'PASSED' if ok else 'FAILED'}")
    if not ok:
        if report.unmatched_computed:
            print("unmatched computed: "
                  + ", ".join("".join(s) for s in report.unmatched_computed))
        if report.unmatched_expected:
            print("unmatched expected: "
                  + ", ".join("".join(s) for s in report.unmatched_expected))
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lvbif",
        description="Bifurcation analysis of planar cubic Lotka-Volterra "
                    "systems with small parameters")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="equilibria and region at one mu")
    a.add_argument("--config", required=True)
    a.add_argument("--mu", required=True, help="mu1,mu2")
    a.add_argument("--epsilon-disk", dest="epsilon_disk", type=float)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("curves", help="sample bifurcation curves to CSV")
    c.add_argument("--config", required=True)
    c.add_argument("--radii", default="1e-3,1e-4")
    c.add_argument("--out", default="")
    c.set_defaults(func=cmd_curves)

    pt = sub.add_parser("portrait", help="phase portrait to SVG/CSV")
    pt.add_argument("--config", required=True)
    pt.add_argument("--mu", required=True, help="mu1,mu2")
    pt.add_argument("--grid", type=int, default=10)
    pt.add_argument("--svg", default="")
    pt.add_argument("--csv", default="")
    pt.add_argument("--epsilon-disk", dest="epsilon_disk", type=float)
    pt.set_defaults(func=cmd_portrait)

    v = sub.add_parser("verify", help="type-table and genericity verification")
    v.add_argument("--family", required=True,
                   help="nondegenerate | deltazero | thetazero")
    v.add_argument("--r", type=float, default=1e-3)
    v.add_argument("--config", default="",
                   help="optional extra system to include in the family run")
    v.add_argument("--oracle", action="store_true",
                   help="also run the brute-force oracle cross-checks")
    v.add_argument("--seed", type=int, default=0,
                   help="jitter seed for the oracle grid passes")
    v.add_argument("--json-out", dest="json_out", default="")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UnsupportedCase as exc:
        print(f"unsupported case: {exc}", file=_sys.stderr)
        return EXIT_UNSUPPORTED
    except LVError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
