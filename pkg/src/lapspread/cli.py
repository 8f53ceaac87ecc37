"""Command-line front end: spectra, enumeration, verification suites, figure data.

Exit codes: 0 on success / all checks passing, 1 on a check failure (the
witness is printed to stderr as graph6), 2 on usage errors.  The environment
variable LAPSPREAD_THREADS overrides any --threads flag.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Callable, Sequence

from . import figures, verify
from .enumeration import (Filter, GraphClassIter, PointRecord, enumerate_masks,
                          evaluate_point, mask_to_graph)
from .families import FamilySpec, make
from .graphs import INFINITE, SimpleGraph, complement, diameter, high_ecc_set, parse_graph6
from .spectra import laplacian_spectrum


def _threads(flag_value: int | None) -> int | None:
    env = os.environ.get("LAPSPREAD_THREADS")
    if env:
        return max(1, int(env))
    return flag_value


def _fmt(v: float) -> str:
    return format(v, ".17g")


# ---------------------------------------------------------------------------
# Per-graph checks for `enumerate --check`
# ---------------------------------------------------------------------------

def _check_conj1(g: SimpleGraph, rec: PointRecord) -> tuple[bool, float]:
    m = rec.x - rec.bound_values["f_bound"]
    return m >= -1e-7, m


def _check_weak(g: SimpleGraph, rec: PointRecord) -> tuple[bool, float]:
    m = rec.x - rec.bound_values["weak_bound"]
    return m >= -1e-7, m


def _check_prop_comp(g: SimpleGraph, rec: PointRecord) -> tuple[bool, float]:
    m = g.n - rec.dsize - len(high_ecc_set(complement(g)))
    return m >= 0, float(m)


def _check_green(g: SimpleGraph, rec: PointRecord) -> tuple[bool, float]:
    if not (rec.x < 1.0 - 1e-9 and rec.y < 1.0 - 1e-9):
        return True, math.inf
    m = rec.bound_values["green_residual"]
    return m >= -1e-7, m


def _check_oneroot(g: SimpleGraph, rec: PointRecord) -> tuple[bool, float]:
    if not (rec.diam == 3 and rec.diam_c == 3):
        return True, math.inf
    eigs = laplacian_spectrum(g).eigs
    low = int(((eigs > 1e-7) & (eigs < 1 - 1e-7)).sum())
    high = int(((eigs > g.n - 1 + 1e-7) & (eigs < g.n - 1e-7)).sum())
    m = float(min(1 - low, 1 - high))
    return m >= 0, m


def _check_spread(g: SimpleGraph, rec: PointRecord) -> tuple[bool, float]:
    m = rec.x + rec.y - 1
    return m >= -1e-7, m


def _check_maxfloor(g: SimpleGraph, rec: PointRecord) -> tuple[bool, float]:
    m = max(rec.x, rec.y) - (2 - math.sqrt(2))
    return m >= -1e-9, m


CHECKS: dict[str, Callable[[SimpleGraph, PointRecord], tuple[bool, float]]] = {
    "conj1": _check_conj1,
    "weak": _check_weak,
    "prop-comp": _check_prop_comp,
    "green": _check_green,
    "oneroot": _check_oneroot,
    "spread": _check_spread,
    "maxfloor": _check_maxfloor,
}


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_spectrum(args: argparse.Namespace) -> int:
    text = args.input.strip()
    if ":" in text:
        g = make(FamilySpec.parse(text))
    else:
        g = parse_graph6(text.encode("ascii"))
    spec = laplacian_spectrum(g)
    eigs = spec.eigs
    print(f"n = {g.n}")
    print("eigenvalues = " + " ".join(_fmt(v) for v in eigs))
    print(f"lambda2 = {_fmt(eigs[1])}")
    print(f"lambda_max = {_fmt(eigs[-1])}")
    print(f"spread = {_fmt(eigs[-1] - eigs[1])}")
    if isinstance(g, SimpleGraph):
        dset = sorted(high_ecc_set(g))
        d = diameter(g)
        print(f"diameter = {'inf' if d == INFINITE else int(d)}")
        print(f"D(G) = {{{', '.join(map(str, dset))}}} (size {len(dset)})")
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    filt = Filter.parse(args.filter)
    it = GraphClassIter(args.n, filt, dedup=args.dedup, allow_n8=args.allow_n8)
    threads = _threads(args.threads)
    checks = [(name, CHECKS[name]) for name in args.check]
    out = open(args.out_file, "w") if args.out_file else sys.stdout
    failures = 0
    try:
        if args.out == "csv":
            print(PointRecord.csv_header(), file=out)
        for mask in enumerate_masks(it, threads):
            g = mask_to_graph(it.n, mask)
            rec = evaluate_point(g)
            print(rec.to_csv_row() if args.out == "csv" else rec.to_json_line(), file=out)
            for name, fn in checks:
                ok, margin = fn(g, rec)
                if not ok:
                    failures += 1
                    print(f"check {name} failed (margin {_fmt(margin)}): {rec.graph6}",
                          file=sys.stderr)
    finally:
        if args.out_file:
            out.close()
    return 1 if failures else 0


_SUITE_NMAX_PARAM = {
    "conjecture1": "n_max", "prop_comp": "n_max", "emp_census": "n_max",
    "thm_implications": "n_max", "family_charpoly": "dandelion_max",
    "dandelion_intervals": "n_max", "greenpoints": "n_max", "se": "n_max",
    "appendix": "n_max", "bound_comparison": "n",
}
_SUITE_ACCEPTS = {
    "conjecture1": {"threads"}, "prop_comp": {"threads"}, "emp_census": {"threads"},
    "thm_implications": set(), "family_charpoly": set(), "dandelion_intervals": set(),
    "greenpoints": {"seed"}, "se": {"seed", "samples"}, "appendix": set(),
    "bound_comparison": {"threads"},
}


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "all":
        suite_ids = list(verify.SUITES)
    elif args.suite in verify.SUITES:
        suite_ids = [args.suite]
    else:
        print(f"error: unknown suite {args.suite!r}; known: all, "
              + ", ".join(verify.SUITES), file=sys.stderr)
        return 2
    threads = _threads(args.threads)
    reports = []
    for sid in suite_ids:
        params: dict = {}
        if args.n_max is not None:
            params[_SUITE_NMAX_PARAM[sid]] = args.n_max
        accepts = _SUITE_ACCEPTS[sid]
        if "threads" in accepts and threads is not None:
            params["threads"] = threads
        if "seed" in accepts and args.seed is not None:
            params["seed"] = args.seed
        if "samples" in accepts and args.samples is not None:
            params["samples"] = args.samples
        report = verify.run_suite(sid, **params)
        reports.append(report)
        print(f"[{report.status}] {sid}: cases={report.cases_run} "
              f"worst_margin={_fmt(report.worst_margin)} "
              f"({report.runtime_ms:.0f} ms)")
        if report.status == "FAIL" and report.witness:
            print(report.witness, file=sys.stderr)
    if args.out:
        import json
        with open(args.out, "w") as fh:
            json.dump([r.to_dict() for r in reports], fh, sort_keys=True, indent=1)
            fh.write("\n")
    return 0 if all(r.status == "PASS" for r in reports) else 1


def cmd_figure(args: argparse.Namespace) -> int:
    manifest = figures.emit_figure(args.id, args.out, n=args.n, threads=_threads(args.threads))
    npts = manifest["points"]["count"] if manifest["points"] else 0
    print(f"figure {args.id}: wrote {npts} points and {len(manifest['curves'])} curves to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lapspread",
                                     description="Spectral bound laboratory: "
                                                 "spectra, enumeration, verification, figure data")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="print the Laplacian spectrum of a graph6 "
                                        "string or family spec (e.g. G:2,3,4)")
    p.add_argument("input")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("enumerate", help="enumerate graphs and stream per-graph records")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filter", default="all",
                   help="all | connected | both-diam3 | diam:D | ecc3:L")
    p.add_argument("--dedup", action="store_true", help="one representative per isomorphism class")
    p.add_argument("--check", action="append", default=[], choices=sorted(CHECKS),
                   help="per-graph check; failing witnesses go to stderr (repeatable)")
    p.add_argument("--out", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out-file", default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--allow-n8", action="store_true", help="permit the gated 2^28-mask n=8 sweep")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", help="all or one of: " + ", ".join(verify.SUITES))
    p.add_argument("--n-max", type=int, default=None, dest="n_max")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--out", default=None, help="write reports as JSON to this path")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("figure", help="emit figure datasets (points + curves + manifest)")
    p.add_argument("--id", type=int, required=True, choices=figures.FIGURE_IDS)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(fn=cmd_figure)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
