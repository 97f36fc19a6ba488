"""Command-line entry points and machine-readable report emission.

Reports are JSON documents with a fixed schema version.  Stdout carries only
the deterministic report (sorted keys, no timestamps); wall-clock timings go
to stderr, so two identical invocations produce byte-identical stdout.
Dimensions, determinants and other potentially large integers are rendered
as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .collection import collection, n_minus, n_plus, parse_ident, wedge_index
from .cotangent import default_cutoff, ext_cotangent
from .verify import SUITES, run_suites
from .weights import WeightError

SCHEMA_VERSION = "grtilt-report/1"


class UsageError(Exception):
    pass


def _emit(document: dict, fmt: str, table_lines) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(document, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(table_lines) + "\n")


def _document(command: str, parameters: dict, body: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "body": body,
    }


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        ns = list(range(int(lo), int(hi) + 1))
    else:
        ns = [int(text)]
    if not ns or any(n < 4 for n in ns):
        raise UsageError(f"N must be at least 4, got {text!r}")
    return ns


def cmd_collection(args) -> int:
    ns = _parse_n_range(args.n)
    members_payload = []
    table = []
    for N in ns:
        for member in collection(N, primed=args.primed):
            entry = {
                "ident": member.ident,
                "kind": member.kind,
                "N": N,
            }
            if member.kind == "schur":
                entry["weight"] = list(member.lam)
            else:
                entry["k"] = member.k
                entry["n_plus"] = n_plus(N, member.k)
                entry["n_minus"] = n_minus(member.k)
                entry["terms"] = [
                    {
                        "i": i,
                        "degree": deg,
                        "det_power": member.k + i,
                        "wedge": wedge_index(N, member.k, i),
                    }
                    for deg, i, _ in member.terms
                ]
            members_payload.append(entry)
            table.append(f"{N}  {member.ident:<10} {member.kind}")
    doc = _document(
        "collection",
        {"n": args.n, "primed": args.primed},
        {"members": members_payload, "count_by_n": {str(N): len(collection(N)) for N in ns}},
    )
    _emit(doc, args.format, table)
    return 0


def cmd_ext(args) -> int:
    N = int(args.n)
    if N < 4:
        raise UsageError(f"N must be at least 4, got {N}")
    cutoff = args.cutoff if args.cutoff is not None else default_cutoff(N)
    src_label, src = parse_ident(args.src, N)
    dst_label, dst = parse_ident(args.dst, N)
    report = ext_cotangent(
        src, dst, cutoff=cutoff, source=src_label, target=dst_label
    )
    dims = {str(d): str(v) for d, v in sorted(report.total_dims().items())}
    invariants = {str(d): str(v) for d, v in sorted(report.invariant_dims().items())}
    weight_counts = {
        str(d): str(sum(ws.values())) for d, ws in sorted(report.graded.parts.items())
    }
    body = {
        "source": src_label,
        "target": dst_label,
        "cutoff": cutoff,
        "total_dims": dims,
        "invariant_multiplicities": invariants,
        "weight_multiplicities": weight_counts,
    }
    table = [f"Ext({src_label}, {dst_label})  N={N} cutoff={cutoff}"]
    table += [
        f"  degree {d:>3}: dim {dims[d]:>12}  invariants {invariants.get(d, '0')}"
        for d in dims
    ]
    _emit(_document("ext", {"n": N, "from": args.src, "to": args.dst, "cutoff": cutoff}, body), args.format, table)
    return 0


def cmd_verify(args) -> int:
    if args.grid == "extended":
        ns = [7, 8]
        cutoff = args.cutoff if args.cutoff is not None else "ambient"
    else:
        ns = _parse_n_range(args.n)
        cutoff = args.cutoff
    if args.suites == "all":
        suites = list(SUITES)
    else:
        suites = [s.strip() for s in args.suites.split(",") if s.strip()]
        unknown = [s for s in suites if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suites {unknown}; choose from {list(SUITES)}")
    if args.threads is not None:
        os.environ["GRTILT_THREADS"] = str(args.threads)
    started = time.perf_counter()
    reports = run_suites(ns, cutoff, suites, drop_member=args.drop_member)
    elapsed = time.perf_counter() - started
    body = {
        "suites": [r.payload() for r in reports],
        "passed": all(r.passed for r in reports),
    }
    doc = _document(
        "verify",
        {
            "n": args.n,
            "cutoff": args.cutoff,
            "grid": args.grid,
            "suites": suites,
            "drop_member": args.drop_member,
        },
        body,
    )
    table = []
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        table.append(f"{status}  {r.suite:<22} N={r.N} cutoff={r.cutoff} checks={len(r.checks)}")
        for c in r.failures()[:10]:
            table.append(f"      failed: {c.cid} {c.detail}")
    table.append("overall: " + ("pass" if body["passed"] else "FAIL"))
    _emit(doc, args.format, table)
    sys.stderr.write(f"wall_s={elapsed:.3f}\n")
    return 0 if body["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grtilt",
        description="Exact verification engine for the tilting collection on T*Gr(2,N)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("collection", help="list the collection members")
    p.add_argument("--n", required=True, help="ambient dimension N or range lo..hi")
    p.add_argument("--primed", action="store_true", help="flop-side collection")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_collection)

    p = sub.add_parser("ext", help="graded Ext between two members")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--from", dest="src", required=True, help="E:l1,l2 | K:k | V:k,i (suffix ' for flop side)")
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--n", default="4..6", help="N or range lo..hi (default 4..6)")
    p.add_argument("--cutoff", type=int, default=None, help="default: 2N per N")
    p.add_argument(
        "--grid",
        choices=("default", "extended"),
        default="default",
        help="extended runs N=7..8 at cutoff N",
    )
    p.add_argument("--suites", default="all", help=f"all or comma list of {', '.join(SUITES)}")
    p.add_argument("--threads", type=int, default=None, help="worker processes (env GRTILT_THREADS)")
    p.add_argument("--drop-member", default=None, help=argparse.SUPPRESS)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, WeightError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
