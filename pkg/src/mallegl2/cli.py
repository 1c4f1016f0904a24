"""Command-line interface.

Exit status: 0 on success, 1 on domain errors (singular curve, non-subgroup,
insufficient data, ...), 2 on usage errors. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Sequence

from .curves import sieve_family, WeierstrassCurve
from .errors import MalleError
from .finite_linear import check_ell
from .harness import C_POLICIES, FamilyConfig, default_threads, parse_x, run_family
from .malle import dumps, exponent_report
from .ntheory import is_prime
from .permrep import Group, Kind
from .surjectivity import DEFAULT_BUDGET, frobenius_samples, serre_test


def _prime(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if not is_prime(n):
        raise argparse.ArgumentTypeError(f"{n} is not prime")
    try:
        return check_ell(n)
    except MalleError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _x_grid(text: str) -> tuple[int, ...]:
    try:
        return tuple(parse_x(part) for part in text.split(",") if part.strip())
    except MalleError as exc:
        raise argparse.ArgumentTypeError(str(exc))


# -- output ------------------------------------------------------------------


def _emit(fmt: str, payload, rows: list[dict], out) -> None:
    if fmt == "json":
        out.write(dumps(payload) + "\n")
        return
    if not rows:
        return
    columns = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
        return
    cells = [[str(r[c]) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _report_row(rep) -> dict:
    return {
        "ell": rep.ell,
        "kind": rep.kind.value,
        "group": rep.group.value,
        "degree": rep.degree,
        "malle_ind": rep.malle_ind,
        "malle_a": str(rep.malle_a),
        "inertia_ind": rep.inertia_ind,
        "lower_exponent": str(rep.lower_exponent),
        "witness": "{} {} {} {}".format(*rep.witness.key),
    }


def _verdict_row(verdict) -> dict:
    w = verdict.witnesses
    return {
        "status": verdict.status,
        "W1": w.get("W1", ""),
        "W2": w.get("W2", ""),
        "W3": w.get("W3", ""),
        "W4": " ".join(map(str, w.get("W4", []))),
        "missing": " ".join(verdict.missing),
        "budget": verdict.budget,
    }


# -- subcommands ---------------------------------------------------------------


def cmd_index(args, out) -> int:
    report = exponent_report(args.ell, args.rep, args.group)
    _emit(args.format, report.to_json(), [_report_row(report)], out)
    return 0


ALL_REPS = ((Kind.NATURAL, Group.GL2), (Kind.PROJECTIVE, Group.PGL2), (Kind.REGULAR, Group.GL2), (Kind.REGULAR, Group.PGL2))


def cmd_exponent(args, out) -> int:
    if args.all_reps:
        reports = [exponent_report(args.ell, k, g) for k, g in ALL_REPS]
    elif args.rep is None:
        raise _UsageError("exponent needs --rep or --all-reps")
    else:
        reports = [exponent_report(args.ell, args.rep, args.group)]
    _emit(args.format, [r.to_json() for r in reports], [_report_row(r) for r in reports], out)
    return 0


def cmd_sieve(args, out) -> int:
    result = sieve_family(args.A, args.b_min, args.b_max)
    rows = [{"B": r.B, "delta_f": r.delta_f, "squarefree": int(r.squarefree)} for r in result.rows]
    _emit(args.format, result.summary_json(), rows, out)
    return 0


def cmd_frobenius(args, out) -> int:
    samples = frobenius_samples(WeierstrassCurve(args.A, args.B), args.ell, args.budget)
    rows = [s.to_json() for s in samples]
    _emit(args.format, rows, rows, out)
    return 0


def cmd_surjective(args, out) -> int:
    if args.ell < 5:
        raise _UsageError("surjective needs --ell >= 5")
    samples = frobenius_samples(WeierstrassCurve(args.A, args.B), args.ell, args.budget)
    verdict = serre_test(samples, args.ell)
    _emit(args.format, verdict.to_json(), [_verdict_row(verdict)], out)
    return 0


def cmd_family(args, out) -> int:
    cfg = FamilyConfig(
        ell=args.ell,
        A=args.A,
        rep=args.rep,
        group=args.group,
        b_min=args.b_min,
        b_max=args.b_max,
        budget=args.budget,
        c_policy=args.c_policy,
        x_grid=args.x_grid,
        threads=args.threads,
    )
    report = run_family(cfg)
    rows = [
        {
            "B": r.B,
            "delta_f": r.delta_f,
            "squarefree": int(r.squarefree),
            "certified": int(r.certified),
            "disc_bound": "" if r.disc_bound is None else r.disc_bound,
            "excluded_reason": r.excluded_reason or "",
        }
        for r in report.records
    ]
    _emit(args.format, report.to_json(), rows, out)
    return 0


def selfcheck_cases() -> list[dict]:
    """Closed forms for the natural, projective and regular actions."""
    cases = []
    for ell in (3, 5, 7, 11, 13):
        nat = exponent_report(ell, Kind.NATURAL)
        proj = exponent_report(ell, Kind.PROJECTIVE)
        cases += [
            ("natural", "malle_ind", ell, nat.malle_ind, ell * (ell - 1) // 2),
            ("natural", "inertia_ind", ell, nat.inertia_ind, (ell - 1) ** 2),
            ("projective", "malle_ind", ell, proj.malle_ind, (ell - 1) // 2),
            ("projective", "inertia_ind", ell, proj.inertia_ind, ell - 1),
        ]
    for ell in (3, 5, 7):
        reg = exponent_report(ell, Kind.REGULAR)
        cases.append(("regular", "inertia_ind", ell, reg.inertia_ind, (ell + 1) * (ell - 1) ** 3))
    return [
        {"rep": rep, "quantity": q, "ell": ell, "value": got, "expected": want, "ok": got == want}
        for rep, q, ell, got, want in cases
    ]


def cmd_selfcheck(args, out) -> int:
    cases = selfcheck_cases()
    _emit(args.format, cases, cases, out)
    bad = [c for c in cases if not c["ok"]]
    for c in bad:
        print(f"mismatch: {c}", file=sys.stderr)
    return 1 if bad else 0


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mallegl2", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv", "table"), default="json")

    def rep_flags(p, required=True):
        p.add_argument("--ell", type=_prime, required=True)
        p.add_argument("--rep", choices=[k.value for k in Kind if k is not Kind.COSET], required=required)
        p.add_argument("--group", choices=[g.value for g in Group], default=None)

    p = sub.add_parser("index", parents=[fmt], help="Malle index and exponents of one representation")
    rep_flags(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("exponent", parents=[fmt], help="like index; --all-reps covers every built-in action")
    rep_flags(p, required=False)
    p.add_argument("--all-reps", action="store_true")
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("sieve", parents=[fmt], help="squarefree flags of 4A^3 + 27B^2")
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--b-min", type=int, required=True)
    p.add_argument("--b-max", type=int, required=True)
    p.set_defaults(func=cmd_sieve)

    for name, func, help_ in (
        ("frobenius", cmd_frobenius, "Frobenius traces and their mod-ell classes"),
        ("surjective", cmd_surjective, "certify a surjective mod-ell image"),
    ):
        p = sub.add_parser(name, parents=[fmt], help=help_)
        p.add_argument("--A", type=int, required=True)
        p.add_argument("--B", type=int, required=True)
        p.add_argument("--ell", type=_prime, required=True)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.set_defaults(func=func)

    p = sub.add_parser("family", parents=[fmt], help="run the fixed-A family construction")
    p.add_argument("--ell", type=_prime, required=True)
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--rep", choices=[k.value for k in Kind if k is not Kind.COSET], required=True)
    p.add_argument("--group", choices=[g.value for g in Group], default=None)
    p.add_argument("--b-min", type=_positive, default=1)
    p.add_argument("--b-max", type=_positive, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--x-grid", type=_x_grid, required=True, help="comma-separated, e.g. 10^48,10^72,10^96")
    p.add_argument("--c-policy", choices=C_POLICIES, default="unit")
    p.add_argument("--threads", type=_positive, default=default_threads())
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("selfcheck", parents=[fmt], help="replay the closed-form index table")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MalleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
