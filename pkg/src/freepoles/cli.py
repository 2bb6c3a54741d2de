"""Command-line entry point: ``python -m freepoles <command> ...``.

Exit codes: 0 on success, 2 when ``verify`` finds violations, 1 on usage or
internal errors.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys


from . import extremal as ex
from .harness import run_verification
from .quaddiff import QuadDiff, sample_trajectories


def parse_range(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def parse_floats(text: str) -> list[float]:
    return [float(x) for x in text.replace(" ", "").split(",") if x]


def _writer(stream=None):
    return csv.writer(stream or sys.stdout, lineterminator="\n")


def cmd_bounds(args):
    w = _writer()
    w.writerow(["theorem", "n", "gamma", "bound", "log_bound"])
    for n in args.n_range:
        if args.theorem == 1:
            lb = ex.log_bound_thm1(n, args.gamma)
            g = args.gamma
        else:
            lb = ex.log_bound_thm2(n)
            g = 0.5
        w.writerow([args.theorem, n, repr(g), repr(math.exp(lb)), repr(lb)])
    return 0


def cmd_psi(args):
    kind = ex.PsiKind.parse(args.kind)
    b = args.beta
    w = _writer()
    w.writerow(["kind", "beta", "psi", "log_psi", "F"])
    try:
        f = repr(kind.f(b))
    except ex.DomainError:
        f = ""
    w.writerow([args.kind, repr(b), repr(kind.psi(b)), repr(kind.log_psi(b)), f])
    return 0


def cmd_beta0(args):
    w = _writer()
    w.writerow(["kind", "beta0", "F_at_beta0"])
    b0 = ex.find_beta0(args.kind)
    w.writerow([args.kind, repr(b0), repr(ex.PsiKind.parse(args.kind).f(b0))])
    return 0


def cmd_extremal(args):
    sol = ex.solve_product_max(args.kind, args.n, args.budget, n_starts=args.starts,
                               seed=args.seed)
    w = _writer()
    w.writerow(["kind", "n", "budget", "betas", "objective_log", "symmetric_objective_log",
                "lagrange_residual", "best_start_excess", "grid_max_log",
                "certified_symmetric"])
    budget = args.budget if args.budget is not None else ex.PsiKind.parse(args.kind).default_budget
    w.writerow([args.kind, args.n, repr(budget), " ".join(repr(float(b)) for b in sol.betas),
                repr(sol.objective_log), repr(sol.symmetric_objective_log),
                repr(sol.lagrange_residual), repr(sol.best_start_excess),
                "" if sol.grid_max_log is None else repr(sol.grid_max_log),
                sol.certified_symmetric])
    return 0


def cmd_identity(args):
    w = _writer()
    w.writerow(["kind", "n", "gamma", "relative_discrepancy"])
    g = args.gamma if args.kind == 1 else 0.5
    d = ex.check_symmetric_identity(args.kind, args.n, args.gamma if args.kind == 1 else 1.0)
    w.writerow([args.kind, args.n, repr(g), repr(d)])
    return 0


def cmd_verify(args):
    if args.trials < 1:
        raise ValueError("--trials must be >= 1")
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        summary = run_verification(args.theorem, args.n_range, args.gamma_list,
                                   args.trials, args.seed, sink=fh)
    w = _writer()
    w.writerow(["trials", "violations", "errors", "min_margin", "config_digest"])
    w.writerow([summary.trials, summary.violations, summary.errors,
                repr(summary.min_margin), summary.config_digest])
    return 2 if summary.violations else 0


def cmd_qd(args):
    q = QuadDiff(args.kind, args.n, args.gamma)
    seeds = []
    with open(args.seeds, encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().lower() in ("re", "#"):
                continue
            seeds.append(complex(float(row[0]), float(row[1])))
    lines = sample_trajectories(q, seeds, args.step, args.max_len, bound_radius=args.radius)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        w = _writer(fh)
        w.writerow(["trajectory_id", "step_index", "re", "im"])
        for tid, pts in enumerate(lines):
            for i, z in enumerate(pts):
                w.writerow([tid, i, repr(float(z.real)), repr(float(z.imag))])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freepoles", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bounds", help="table of closed-form bounds")
    s.add_argument("--theorem", type=int, choices=(1, 2), required=True)
    s.add_argument("--n-range", type=parse_range, required=True)
    s.add_argument("--gamma", type=float, default=1.0)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("psi", help="evaluate Psi and F")
    s.add_argument("--kind", type=int, choices=(1, 2), required=True)
    s.add_argument("--beta", type=float, required=True)
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("beta0", help="minimizer of F")
    s.add_argument("--kind", type=int, choices=(1, 2), required=True)
    s.set_defaults(func=cmd_beta0)

    s = sub.add_parser("extremal", help="solve the product maximization")
    s.add_argument("--kind", type=int, choices=(1, 2), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--budget", type=float, default=None)
    s.add_argument("--starts", type=int, default=64)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_extremal)

    s = sub.add_parser("identity", help="bound vs Psi factorization")
    s.add_argument("--kind", type=int, choices=(1, 2), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gamma", type=float, default=1.0)
    s.set_defaults(func=cmd_identity)

    s = sub.add_parser("verify", help="Monte-Carlo inequality check")
    s.add_argument("--theorem", type=int, choices=(1, 2), required=True)
    s.add_argument("--n-range", type=parse_range, required=True)
    s.add_argument("--gamma-list", type=parse_floats, default=[0.25, 0.5, 1.0])
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("qd", help="sample trajectories of the extremal differential")
    s.add_argument("--kind", type=int, choices=(1, 2), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gamma", type=float, default=1.0)
    s.add_argument("--seeds", required=True, help="CSV with re,im per line")
    s.add_argument("--out", required=True)
    s.add_argument("--step", type=float, default=1e-2)
    s.add_argument("--max-len", type=float, default=20.0)
    s.add_argument("--radius", type=float, default=10.0)
    s.set_defaults(func=cmd_qd)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
