"""Command-line front end.

Exit status: 0 success, 1 input or configuration error, 2 a verification
failed (Droop violation or a property-suite counterexample).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import methods, oracle
from .ballots import BallotProfile, ProfileError, read_profile
from .engine import droop_quota, format_rational, rational_str
from .properties import MAX_GENERATOR_CANDIDATES, SUITES, run_suite

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2

METHODS = ("irv", "quota-phragmen", "bottom-up", "top-down")
LIST_METHODS = ("bottom-up", "top-down")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _setlabel(profile: BallotProfile, members) -> str:
    return "{" + ",".join(profile.names[c] for c in sorted(members)) + "}"


def _droop_lines(profile, verdict) -> list[str]:
    label = _setlabel(profile, verdict.winners)
    if verdict.compliant:
        return [f"Droop check {label}: compliant"]
    lines = [f"Droop check {label}: VIOLATED"]
    for con, got in verdict.violations:
        lines.append(
            f"  {con.label(profile)} has support {con.support} > {con.floor} x {format_rational(con.quota)} "
            f"but only {got} elected"
        )
    return lines


def _seats(args, profile: BallotProfile) -> int:
    seats = args.seats if args.seats is not None else profile.seats
    if seats < 1:
        raise UsageError("--seats must be at least 1")
    if seats > profile.n_candidates:
        raise UsageError(f"--seats {seats} exceeds the {profile.n_candidates} candidates")
    return seats


def _depth(args, profile: BallotProfile) -> int:
    depth = args.depth
    if depth is None:
        depth = getattr(args, "seats", None) or profile.n_candidates
    if not 1 <= depth <= profile.n_candidates:
        raise UsageError(f"--depth must be between 1 and {profile.n_candidates}")
    return depth


def _run_method(args, profile: BallotProfile, out: list[str]) -> tuple[dict, list]:
    """Run the chosen method; return the structured result and the winner sets to verify."""
    method = args.method
    doc: dict = {"title": profile.title, "method": method}
    to_check: list[tuple[int, ...]] = []
    if method in LIST_METHODS:
        depth = _depth(args, profile)
        if method == "top-down":
            lst = methods.top_down_list(profile, depth)
        else:
            lst = methods.bottom_up_list(profile)
        order = lst.order[:depth]
        logs = lst.logs
        doc["list"] = [profile.names[c] for c in order]
        doc["tie"] = lst.tie_flag
        to_check = [order[:k] for k in range(1, len(order) + 1)]
        for log in logs:
            out.append(log.to_table())
            out.append("")
        out.append("List: " + " > ".join(profile.names[c] for c in order))
    else:
        if method == "irv":
            result = methods.irv(profile)
        else:
            result = methods.quota_phragmen(profile, _seats(args, profile))
        logs = (result.log,)
        doc["winners"] = [profile.names[c] for c in result.winners]
        doc["tie"] = result.tie_flag
        to_check = [result.winners]
        out.append(result.log.to_table())
        out.append("")
        out.append("Winners: " + ", ".join(profile.names[c] for c in result.winners))
    doc["logs"] = [log.to_dict() for log in logs]
    return doc, to_check


def cmd_tabulate(args) -> int:
    profile = read_profile(args.file)
    out: list[str] = []
    header = f"{profile.title or args.file} -- {args.method}"
    doc, to_check = _run_method(args, profile, out)
    status = EXIT_OK
    if args.verify_droop:
        verdicts = [
            oracle.check_droop(profile, w, max_candidates=args.max_candidates) for w in to_check
        ]
        doc["droop"] = [v.to_dict(profile) for v in verdicts]
        out.append("")
        for v in verdicts:
            out.extend(_droop_lines(profile, v))
        if not all(v.compliant for v in verdicts):
            status = EXIT_VERIFY
    if args.format == "json":
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print(header)
        print()
        print("\n".join(out))
    return status


def cmd_coalitions(args) -> int:
    profile = read_profile(args.file)
    seats = _seats(args, profile)
    kw = dict(max_candidates=args.max_candidates)
    constraints = oracle.all_constraints(profile, seats, **kw)
    compliant = oracle.droop_compliant_sets(profile, seats, **kw)
    if args.format == "json":
        doc = {
            "title": profile.title,
            "seats": seats,
            "quota": rational_str(droop_quota(profile.total_weight, seats)),
            "constraints": [c.to_dict(profile) for c in constraints],
            "compliant_sets": [[profile.names[c] for c in sorted(s)] for s in compliant],
        }
        print(json.dumps(doc, indent=2, ensure_ascii=False))
        return EXIT_OK
    quota = droop_quota(profile.total_weight, seats)
    print(f"{profile.title or args.file}: {seats} seat(s), Droop quota {format_rational(quota)}")
    print()
    print("Solid coalitions exceeding a quota:")
    for con in constraints:
        print(f"  {con.label(profile)}: support {con.support}, at least {con.floor} elected")
    print()
    print(f"Droop compliant {seats}-winner sets:")
    for s in compliant:
        print("  " + _setlabel(profile, s))
    if not compliant:
        print("  (none)")
    return EXIT_OK


def cmd_properties(args) -> int:
    suites = args.suite or list(SUITES)
    if not 1 <= args.max_candidates <= MAX_GENERATOR_CANDIDATES:
        raise UsageError(f"--max-candidates must be between 1 and {MAX_GENERATOR_CANDIDATES}")
    if not 1 <= args.max_weight <= 60:
        raise UsageError("--max-weight must be between 1 and 60")
    if args.profiles < 1:
        raise UsageError("--profiles must be positive")
    status = EXIT_OK
    reports = []
    for name in suites:
        if name == "coherence" and args.max_candidates < 2:
            print("coherence: skipped (needs at least 2 candidates)")
            continue
        report = run_suite(
            name,
            profiles=args.profiles,
            seed=args.seed,
            max_candidates=args.max_candidates,
            max_weight=args.max_weight,
            counterexample_dir=args.out_dir,
        )
        reports.append(report)
        if not report.ok:
            status = EXIT_VERIFY
    if args.format == "json":
        doc = [
            {
                "suite": r.name,
                "runs": r.runs,
                "tied": r.tied,
                "tie_free": r.tie_free,
                "passed": r.passed,
                "failures": [{"index": i, "message": m} for i, m, _ in r.failures],
            }
            for r in reports
        ]
        print(json.dumps(doc, indent=2))
    else:
        for r in reports:
            print(r.summary())
            for index, message, _ in r.failures:
                print(f"  profile #{index}: {message} (written to {args.out_dir})")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="phragmen-list",
        description="Exact tabulation of ranked-ballot proportional elections.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, method_choices, default_method):
        p.add_argument("file", help="ballot file")
        p.add_argument("--method", choices=method_choices, default=default_method)
        p.add_argument("--seats", type=int, help="seat count (default: from the file)")
        p.add_argument("--depth", type=int, help="list depth (default: all candidates)")
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--verify-droop", action="store_true",
                       help="check the result against the brute-force oracle")
        p.add_argument("--max-candidates", type=int, default=oracle.DEFAULT_MAX_CANDIDATES,
                       help="oracle enumeration bound")

    p = sub.add_parser("tabulate", help="run one method and print the round tables")
    common(p, METHODS, "top-down")
    p.set_defaults(func=cmd_tabulate)

    p = sub.add_parser("list", help="build a proportional list")
    common(p, LIST_METHODS, "top-down")
    p.set_defaults(func=cmd_tabulate)

    p = sub.add_parser("coalitions", help="list solid-coalition constraints and compliant sets")
    p.add_argument("file")
    p.add_argument("--seats", type=int)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--max-candidates", type=int, default=oracle.DEFAULT_MAX_CANDIDATES)
    p.set_defaults(func=cmd_coalitions)

    p = sub.add_parser("properties", help="randomized property suites against the oracle")
    p.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="suite to run (repeatable; default: all)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--profiles", type=int, default=1000, help="tie-free runs per suite")
    p.add_argument("--max-candidates", type=int, default=6,
                   help=f"generator candidate bound (at most {MAX_GENERATOR_CANDIDATES})")
    p.add_argument("--max-weight", type=int, default=60, help="generator total weight bound")
    p.add_argument("--out-dir", default="counterexamples",
                   help="where failing profiles are written")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_properties)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ProfileError, oracle.OracleBoundError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
