"""Command line interface: enumerate, realize, scan, verify."""

from __future__ import annotations

import argparse
import sys

from .pipeline import (
    OutputStore,
    stage_enumerate,
    stage_realize,
    stage_scan,
    verify_artifact,
)
from .realize import Budget


def make_parser() -> argparse.ArgumentParser:
    # the shared flags are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="output directory (default: ./out)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(
        prog="hextet",
        description="Hexahedron triangulations: enumeration, realization, mesh scanning",
    )
    p.add_argument("--out", default="out", help="output directory (default: ./out)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("enumerate", parents=[common],
                        help="build the triangulation catalog")
    pe.add_argument("--max-tets", type=int, default=15)
    pe.add_argument("--sphere-data", default=None,
                    help="3-sphere facet list file for the cross-check route")

    pr = sub.add_parser("realize", parents=[common],
                        help="find exact realizations per class")
    pr.add_argument("--convex", action="store_true",
                    help="require points in convex position")
    pr.add_argument("--budget-restarts", type=int, default=Budget.restarts)
    pr.add_argument("--budget-iters", type=int, default=Budget.iters)
    pr.add_argument("--dimacs-dump", default=None,
                    help="directory for DIMACS CNF exports of the SAT instances")
    pr.add_argument("--classes", nargs="*", default=None,
                    help="restrict to these class ids")

    ps = sub.add_parser("scan", parents=[common],
                        help="find hexahedra in tetrahedral meshes")
    ps.add_argument("meshes", nargs="+", help=".node/.ele or .mesh files")

    pv = sub.add_parser("verify", parents=[common],
                        help="re-verify shipped artifacts exactly")
    pv.add_argument("artifacts", nargs="+", help="catalog/realization/certificate files")

    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return _run(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _run(args) -> int:
    store = OutputStore(args.out)

    if args.command == "enumerate":
        entries = stage_enumerate(
            store,
            max_tets=args.max_tets,
            workers=args.workers,
            sphere_data=args.sphere_data,
        )
        counts = {}
        for e in entries:
            counts[e.tet_count] = counts.get(e.tet_count, 0) + 1
        print(f"catalog: {len(entries)} classes")
        print("per tet count:", " ".join(f"{n}:{counts.get(n, 0)}" for n in range(5, 16)))
        return 0 if len(entries) == 174 else 1

    if args.command == "realize":
        budget = Budget(restarts=args.budget_restarts, iters=args.budget_iters)
        summary = stage_realize(
            store,
            convex=args.convex,
            seed=args.seed,
            budget=budget,
            dimacs_dump=args.dimacs_dump,
            classes=args.classes,
            workers=args.workers,
        )
        print(f"mode: {summary['mode']}")
        print(f"realized: {summary['realized']}")
        print(f"sat-infeasible: {len(summary['satInfeasible'])} {summary['satInfeasible']}")
        if summary["certified"]:
            print(f"certified non-realizable: {summary['certified']}")
        if summary["undecided"]:
            print(f"undecided: {summary['undecided']}")
            return 1
        return 0

    if args.command == "scan":
        report = stage_scan(store, args.meshes)
        print(f"scanned {report['meshes']} meshes")
        for path, err in report["errors"].items():
            print(f"error: {path}: {err}", file=sys.stderr)
        return 0 if not report["errors"] else 1

    if args.command == "verify":
        all_ok = True
        for path in args.artifacts:
            for item, ok, detail in verify_artifact(path):
                all_ok &= ok
                line = f"{item}: {'ok' if ok else 'FAIL'}"
                if detail:
                    line += f" ({detail})"
                print(line)
        return 0 if all_ok else 1

    return 2


if __name__ == "__main__":
    sys.exit(main())
