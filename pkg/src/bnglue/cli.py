"""Command-line surface: every operation, with machine-readable output.

Exit codes: 0 when the requested property holds (check passes, certificate
produced, verification ok, audit clean, plan found), 1 when it fails on
its merits, 2 for usage errors and arithmetic-domain violations, which are
reported with the offending precondition named.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import documents
from .audit import AuditGrid, audit_case_coverage, audit_oracle_agreement, audit_termination
from .certificates import Refusal
from .certifier import certify_main, certify_small_hyp, certify_small_mid
from .hypotheses import (
    GluingInstance,
    HyperplaneInstance,
    SmallMidQuery,
    check_main,
    check_main_hyp,
    check_main_sp,
    check_small_hyp,
    check_small_mid,
)
from .numerics import CurveSpec, interpolation_capacity, rho
from .planner import Infeasible, enumerate_decompositions, plan_decomposition
from .verifier import verify

__all__ = ["main", "run"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bnglue",
        description="Decision and certification engine for gluing curve classes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def curve_args(p, prefix="", ambient=True):
        p.add_argument(f"--d{prefix}", type=int, required=True)
        p.add_argument(f"--g{prefix}", type=int, required=True)
        if ambient:
            p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("rho", help="Brill-Noether number of a class")
    curve_args(p)

    p = sub.add_parser("interp", help="interpolation capacity of a class")
    curve_args(p)

    p = sub.add_parser("check", help="run one hypothesis checker")
    p.add_argument("kind", choices=["main", "main-sp", "main-hyp", "small-mid", "small-hyp"])
    _pair_args(p)

    p = sub.add_parser("certify", help="build a certificate")
    p.add_argument("kind", choices=["main", "small-mid", "small-hyp"])
    _pair_args(p)

    p = sub.add_parser("verify", help="re-check a serialized certificate")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")

    p = sub.add_parser("audit", help="exhaustive grid audits")
    p.add_argument("kind", choices=["coverage", "agreement", "termination"])
    p.add_argument("--r-min", type=int, default=3)
    p.add_argument("--r-max", type=int, default=6)
    p.add_argument("--g-cap", type=int, default=None)
    p.add_argument("--d-cap", type=int, default=30)

    p = sub.add_parser("plan", help="decompose a target class")
    curve_args(p)
    p.add_argument("--limit", type=int, default=None)

    p = sub.add_parser("table", help="emit capacity tables")
    p.add_argument("what", choices=["interp"])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--g-max", type=int, required=True)
    p.add_argument("--format", choices=["csv", "md"], default="csv")

    return parser


def _pair_args(p: argparse.ArgumentParser) -> None:
    # main / main-sp: two classes in the same ambient space.
    # main-hyp / small-hyp: side 2 is the curve inside the hyperplane.
    # small-mid: a single class plus the attachment degree.
    p.add_argument("--d1", type=int)
    p.add_argument("--g1", type=int)
    p.add_argument("--d2", type=int)
    p.add_argument("--g2", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, required=True)


def _need(args, names: list[str]) -> None:
    missing = [f"--{m}" for m in names if getattr(args, m) is None]
    if missing:
        raise ValueError("missing required flags: " + " ".join(missing))


def _gluing_instance(args) -> GluingInstance:
    _need(args, ["d1", "g1", "d2", "g2", "n"])
    return GluingInstance(
        CurveSpec(args.d1, args.g1, args.r), CurveSpec(args.d2, args.g2, args.r), args.n
    )


def _hyperplane_instance(args) -> HyperplaneInstance:
    _need(args, ["d1", "g1", "d2", "g2", "n"])
    return HyperplaneInstance(
        CurveSpec(args.d1, args.g1, args.r),
        CurveSpec(args.d2, args.g2, args.r - 1),
        args.n,
    )


def _mid_query(args) -> SmallMidQuery:
    _need(args, ["d", "g", "a"])
    return SmallMidQuery(CurveSpec(args.d, args.g, args.r), args.a)


def _print(doc: dict) -> None:
    sys.stdout.write(documents.dumps(doc))


def run(argv: list[str] | None = None) -> int:
    """Parse arguments and execute; returns the process exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "rho":
        print(rho(CurveSpec(args.d, args.g, args.r)))
        return 0

    if args.command == "interp":
        print(interpolation_capacity(CurveSpec(args.d, args.g, args.r)))
        return 0

    if args.command == "check":
        verdict = _run_check(args)
        _print(documents.verdict_to_doc(verdict))
        return 0 if verdict.passed else 1

    if args.command == "certify":
        result = _run_certify(args)
        if isinstance(result, Refusal):
            _print(documents.refusal_to_doc(result))
            return 1
        _print(documents.certificate_to_doc(result))
        return 0

    if args.command == "verify":
        with open(args.infile, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
        if not isinstance(doc, dict) or doc.get("refused"):
            raise ValueError("input is not a certificate document")
        cert = documents.certificate_from_doc(doc)
        report = verify(cert)
        _print(documents.verification_report_to_doc(report))
        return 0 if report.ok else 1

    if args.command == "audit":
        grid = AuditGrid(args.r_min, args.r_max, args.g_cap, args.d_cap)
        threads = int(os.environ.get("BNGLUE_THREADS", "1"))
        runner = {
            "coverage": audit_case_coverage,
            "agreement": audit_oracle_agreement,
            "termination": audit_termination,
        }[args.kind]
        report = runner(grid, threads=max(1, threads))
        _print(documents.audit_report_to_doc(report))
        return 0 if report.ok else 1

    if args.command == "plan":
        target = CurveSpec(args.d, args.g, args.r)
        if args.limit is None:
            result = plan_decomposition(target)
            if isinstance(result, Infeasible):
                _print(documents.infeasible_to_doc(result))
                return 1
            _print(documents.plan_to_doc(result))
            return 0
        if args.limit < 0:
            raise ValueError(f"limit must be nonnegative (got {args.limit})")
        plans = enumerate_decompositions(target, args.limit)
        _print(
            {
                "target": {"d": target.d, "g": target.g, "r": target.r},
                "plans": [documents.plan_to_doc(p) for p in plans],
            }
        )
        return 0 if plans else 1

    if args.command == "table":
        sys.stdout.write(_capacity_table(args.r, args.d_max, args.g_max, args.format))
        return 0

    raise ValueError(f"unknown command {args.command!r}")


def _run_check(args):
    if args.kind == "main":
        return check_main(_gluing_instance(args))
    if args.kind == "main-sp":
        return check_main_sp(_gluing_instance(args))
    if args.kind == "main-hyp":
        return check_main_hyp(_hyperplane_instance(args))
    if args.kind == "small-mid":
        return check_small_mid(_mid_query(args))
    return check_small_hyp(_hyperplane_instance(args))


def _run_certify(args):
    if args.kind == "main":
        return certify_main(_gluing_instance(args))
    if args.kind == "small-mid":
        return certify_small_mid(_mid_query(args))
    return certify_small_hyp(_hyperplane_instance(args))


def _capacity_cell(d: int, g: int, r: int) -> str:
    if d < g:
        return "-"
    return str(interpolation_capacity(CurveSpec(d, g, r)))


def _capacity_table(r: int, d_max: int, g_max: int, fmt: str) -> str:
    if r < 1 or d_max < 1 or g_max < 0:
        raise ValueError("table needs r >= 1, d-max >= 1, g-max >= 0")
    header = ["d"] + [f"g={g}" for g in range(0, g_max + 1)]
    rows = [
        [str(d)] + [_capacity_cell(d, g, r) for g in range(0, g_max + 1)]
        for d in range(1, d_max + 1)
    ]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |"]
    lines.append("|" + "|".join(" --- " for _ in header) + "|")
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return "\n".join(lines) + "\n"


def main() -> None:
    sys.exit(run())
