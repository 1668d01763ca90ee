"""Command-line front end.

Five subcommands cover the library surface:

  bound   upper bounds on k for homogeneous systems (single N or a range)
  table   recompute a pinned reference table and diff it cell by cell
  ame     AME non-existence verdict for a dimension profile
  state   brute-force checks on an explicit state file
  verify  internal cross-validation suites at desk scale

Every run prints a single JSON envelope {command, status, timestamp,
payload} (or plain CSV rows with --format csv where a tabular layout is
defined).  Envelopes are byte-deterministic apart from the timestamp
field.  Exit status: 0 for "ok" and for "violation-found" (a found
non-existence certificate or table mismatch is a successful computation),
1 for errors, 2 for usage errors, 3 for not-applicable requests.

Global flags may also be set through environment variables with the
KUNIFORM_ prefix (KUNIFORM_FORMAT, KUNIFORM_BUDGET, KUNIFORM_CAP_DIM,
KUNIFORM_THREADS); explicit flags win.  Rationals are printed as exact
"p/q" strings, never floats.  --threads is accepted for interface
stability; every computation here runs single-threaded for reproducible
timing.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from datetime import datetime, timezone
from typing import Optional, Sequence

from . import bounds, oracle, tables
from .enumerators import shadow_transform
from .errors import BudgetExceededError, CapacityError, NotApplicableError
from .hetero import DEFAULT_SUBSET_BUDGET, DimensionProfile, ame_verdict, hetero_shadow

ENV_PREFIX = "KUNIFORM_"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_NOT_APPLICABLE = 3

STATUS_OK = "ok"
STATUS_VIOLATION = "violation-found"
STATUS_NOT_APPLICABLE = "not-applicable"
STATUS_ERROR = "error"


class _UsageError(Exception):
    pass


def _env_default(name: str, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    return raw


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "csv"),
        default=None,
        help="output format (default json; env KUNIFORM_FORMAT)",
    )
    common.add_argument(
        "--budget",
        type=int,
        default=None,
        help="subset-search evaluation budget (env KUNIFORM_BUDGET)",
    )
    common.add_argument(
        "--cap-dim",
        type=int,
        default=None,
        help="Hilbert-dimension cap for state brute force (env KUNIFORM_CAP_DIM)",
    )
    common.add_argument(
        "--threads",
        type=int,
        default=None,
        help="thread budget; all commands currently run single-threaded",
    )

    parser = argparse.ArgumentParser(
        prog="kuniform",
        description="Exact bounds on k-uniform states and AME non-existence certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", parents=[common], help="upper bounds on k")
    p_bound.add_argument("--d", type=int, required=True, help="local dimension")
    group = p_bound.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="single party count")
    group.add_argument("--n-range", help="inclusive party-count range A:B")

    p_table = sub.add_parser("table", parents=[common], help="reproduce a reference table")
    p_table.add_argument(
        "--paper", required=True, choices=tables.TABLE_IDS, help="table identifier"
    )

    p_ame = sub.add_parser("ame", parents=[common], help="AME non-existence verdict")
    p_ame.add_argument(
        "--dims", required=True, help='profile string "<dim>x<count>,...", e.g. "3x1,2x10"'
    )

    p_state = sub.add_parser("state", parents=[common], help="explicit-state checks")
    p_state.add_argument("--file", required=True, help="state JSON file")
    state_group = p_state.add_mutually_exclusive_group(required=True)
    state_group.add_argument("--check-uniform", type=int, metavar="K")
    state_group.add_argument("--enumerate", action="store_true")

    p_verify = sub.add_parser("verify", parents=[common], help="cross-validation suites")
    p_verify.add_argument(
        "--suite", required=True, choices=("alpha", "recurrence", "shadow-oracle")
    )
    return parser


# ---------------------------------------------------------------------------
# subcommand payloads
# ---------------------------------------------------------------------------


def _parse_n_range(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise _UsageError(f"--n-range expects A:B, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise _UsageError(f"--n-range expects integers, got {text!r}") from exc
    if lo > hi:
        raise _UsageError(f"--n-range expects A <= B, got {text!r}")
    return lo, hi


def _run_bound(args) -> tuple[str, dict, Optional[str]]:
    if args.d < 2:
        raise _UsageError("--d must be >= 2")
    if args.n is not None:
        lo = hi = args.n
    else:
        lo, hi = _parse_n_range(args.n_range)
    if lo < 2:
        raise _UsageError("party counts must be >= 2")
    records = tables.compute_bound_records(args.d, lo, hi)
    payload = {"d": args.d, "records": [r.to_json_dict() for r in records]}
    csv_lines = ["N,k_max,provenance"]
    csv_lines += [f"{r.n_parties},{r.k_max},{r.provenance}" for r in records]
    return STATUS_OK, payload, "\n".join(csv_lines)


def _run_table(args) -> tuple[str, dict, Optional[str]]:
    diff = tables.diff_table(args.paper)
    payload: dict = {
        "table": diff.table_id,
        "match": diff.match,
        "diffs": [d.to_json_dict() for d in diff.diffs],
    }
    csv_lines: list[str]
    if diff.table_id == "IV":
        payload["rows"] = [
            {"d1": d1, "d2": d2, "threshold_n": thr, "shadow_certified_n": list(ns)}
            for d1, d2, thr, ns in diff.computed
        ]
        csv_lines = ["d1,d2,threshold_n,shadow_certified_n"]
        csv_lines += [
            f"{d1},{d2},{thr},{' '.join(map(str, ns))}"
            for d1, d2, thr, ns in diff.computed
        ]
    else:
        payload["cells"] = [
            {"n_range": tables.format_n_range(lo, hi), "k_max": k}
            for lo, hi, k in diff.computed
        ]
        payload["records"] = [r.to_json_dict() for r in diff.records]
        csv_lines = ["N_range,k_max"]
        csv_lines += [
            f"{tables.format_n_range(lo, hi)},{k}" for lo, hi, k in diff.computed
        ]
    status = STATUS_OK if diff.match else STATUS_VIOLATION
    return status, payload, "\n".join(csv_lines)


def _run_ame(args, budget: int) -> tuple[str, dict, Optional[str]]:
    try:
        profile = DimensionProfile.parse(args.dims)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    verdict = ame_verdict(profile, budget=budget)
    payload = verdict.to_json_dict()
    status = STATUS_OK if verdict.status == "unknown" else STATUS_VIOLATION
    return status, payload, None


def _run_state(args, cap_dim: int) -> tuple[str, dict, Optional[str]]:
    try:
        state = oracle.PureState.load(args.file)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read state file {args.file}: {exc}") from exc
    if args.check_uniform is not None:
        k = args.check_uniform
        answer = oracle.is_k_uniform(state, k, dim_cap=cap_dim)
        payload = {
            "dims": list(state.profile.dims),
            "k": k,
            "uniform": answer,
        }
        return STATUS_OK, payload, None
    a = oracle.direct_enumerator(state, dim_cap=cap_dim)
    s_direct = oracle.direct_shadow(state, dim_cap=cap_dim)
    payload = {
        "dims": list(state.profile.dims),
        "a": a.to_json_dict(),
        "s": s_direct.to_json_dict(),
        "s_matches_transform": shadow_transform(a).coeffs == s_direct.coeffs,
    }
    return STATUS_OK, payload, None


def _run_verify(args) -> tuple[str, dict, Optional[str]]:
    failures: list[str] = []
    checks = 0
    if args.suite == "alpha":
        for n in range(2, 61):
            for d in (2, 3, 4, 5):
                for i in range(n // 2 + 1):
                    checks += 1
                    if bounds.alpha_closed_form(n, d, i) != bounds.alpha_oracle(n, d, i):
                        failures.append(f"alpha mismatch at N={n} d={d} i={i}")
    elif args.suite == "recurrence":
        for spec in bounds.recurrence_specs():
            report = bounds.verify_recurrence(spec, n_max=30)
            checks += report.checked_identities
            failures.extend(
                f"offset {spec.offset}: {msg}" for msg in report.failures
            )
    else:  # shadow-oracle
        for n in (3, 5, 7, 9, 11):
            for dims in itertools.combinations_with_replacement((2, 3, 4), n):
                profile = DimensionProfile(dims)
                if not profile.schmidt_feasible():
                    continue
                checks += 1
                if oracle.ame_shadow_oracle(profile) != hetero_shadow(profile).s:
                    failures.append(f"shadow mismatch on profile {dims}")
    payload = {"suite": args.suite, "checks": checks, "failures": failures}
    status = STATUS_OK if not failures else STATUS_ERROR
    return status, payload, None


# ---------------------------------------------------------------------------
# envelope and dispatch
# ---------------------------------------------------------------------------


def _emit(command: str, status: str, payload: dict, fmt: str, csv_text: Optional[str]) -> None:
    if fmt == "csv" and csv_text is not None:
        print(csv_text)
        return
    envelope = {
        "command": command,
        "status": status,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "payload": payload,
    }
    print(json.dumps(envelope, sort_keys=True))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    fmt = args.format or _env_default("FORMAT", "json")
    if fmt not in ("json", "csv"):
        print(f"kuniform: invalid format {fmt!r}", file=sys.stderr)
        return EXIT_USAGE
    budget = args.budget if args.budget is not None else int(
        _env_default("BUDGET", DEFAULT_SUBSET_BUDGET)
    )
    cap_dim = args.cap_dim if args.cap_dim is not None else int(
        _env_default("CAP_DIM", oracle.DEFAULT_DIM_CAP)
    )

    try:
        if args.command == "bound":
            status, payload, csv_text = _run_bound(args)
        elif args.command == "table":
            status, payload, csv_text = _run_table(args)
        elif args.command == "ame":
            status, payload, csv_text = _run_ame(args, budget)
        elif args.command == "state":
            status, payload, csv_text = _run_state(args, cap_dim)
        else:
            status, payload, csv_text = _run_verify(args)
    except _UsageError as exc:
        print(f"kuniform: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotApplicableError as exc:
        _emit(args.command, STATUS_NOT_APPLICABLE, {"error": str(exc)}, "json", None)
        return EXIT_NOT_APPLICABLE
    except (BudgetExceededError, CapacityError, ValueError) as exc:
        _emit(args.command, STATUS_ERROR, {"error": str(exc)}, "json", None)
        return EXIT_ERROR

    _emit(args.command, status, payload, fmt, csv_text)
    if status == STATUS_ERROR:
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
