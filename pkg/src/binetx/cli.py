"""Command-line front end: ``python -m binetx <subcommand> ...``.

Exit status is 0 on success, 1 when a verification claim fails and 2 on
usage or domain errors.  Numbers are printed with 17 significant digits.
"""

import argparse
import csv
import sys

import numpy as np

from . import kernel
from .kernel import KernelParams
from .quad import QuadratureError, divergence_scan
from .remainder import FpqParams, f_pq, theta_alpha_deriv
from .special import DomainError
from .verify import SUITES, GridSpec, all_passed, reports_to_csv, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _num(v):
    return format(float(v), ".17g")


def _emit(fmt, header, rows, out):
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_num(v) if isinstance(v, (float, np.floating)) else v for v in row])
    else:
        for row in rows:
            print(" ".join(_num(v) if isinstance(v, (float, np.floating)) else str(v) for v in row), file=out)


def _cmd_eval_delta(args, out):
    params = KernelParams(args.a, args.b)
    fn = (kernel.delta, kernel.delta_prime, kernel.delta_second)[args.deriv]
    if args.t == 0.0:
        value = (kernel.delta_limit_zero, kernel.delta_prime_limit_zero, lambda p: 0.0)[args.deriv](params)
    else:
        value = fn(params, args.t)
    _emit(args.format, ["a", "b", "t", "deriv", "value"], [[args.a, args.b, args.t, args.deriv, value]]
          if args.format == "csv" else [[value]], out)
    return EXIT_OK


def _theta_row(args, x):
    ev = theta_alpha_deriv(args.alpha, x, args.deriv, args.method)
    q = ev.quadrature
    return ev, [
        args.alpha, x, args.deriv,
        ev.closed if ev.closed is not None else "",
        q.value if q else "",
        q.err_estimate if q else "",
        ev.disagreement if ev.closed is not None and q else "",
    ]


_THETA_HEADER = ["alpha", "x", "deriv", "closed", "quad", "err_estimate", "disagreement"]


def _cmd_eval_theta(args, out):
    ev, row = _theta_row(args, args.x)
    if args.format == "csv":
        _emit("csv", _THETA_HEADER, [row], out)
    elif args.method == "both":
        _emit("plain", None, [[ev.closed], [ev.quadrature.value], [ev.disagreement]], out)
    else:
        _emit("plain", None, [[ev.value]], out)
    if ev.quadrature is not None and not ev.quadrature.converged:
        print("warning: quadrature did not reach tolerance", file=sys.stderr)
    return EXIT_OK


def _cmd_eval_f(args, out):
    method = "closed" if args.method == "both" else args.method
    value = f_pq(FpqParams(args.p, args.q, args.alpha), args.x, method)
    _emit(args.format, ["p", "q", "alpha", "x", "method", "value"],
          [[args.p, args.q, args.alpha, args.x, method, value]] if args.format == "csv" else [[value]], out)
    return EXIT_OK


def _cmd_table(args, out):
    if not 0 < args.x_min < args.x_max:
        raise DomainError("table needs 0 < --x-min < --x-max")
    rows = [_theta_row(args, x)[1] for x in np.geomspace(args.x_min, args.x_max, args.samples)]
    if args.format == "plain":
        rows = [[v for v in r if v != ""] for r in rows]
    _emit(args.format, _THETA_HEADER, rows, out)
    return EXIT_OK


def _cmd_divergence(args, out):
    eps = np.geomspace(1e-2, 1e-6, args.samples)
    fit = divergence_scan(KernelParams(args.a, args.b), args.x, eps)
    _emit(args.format, ["a", "b", "x", "slope", "intercept", "residual", "expected_slope"],
          [[args.a, args.b, args.x, fit.slope, fit.intercept, fit.residual, 0.5 * (args.a + args.b)]]
          if args.format == "csv" else [[fit.slope], [fit.intercept], [fit.residual]], out)
    return EXIT_OK


def _cmd_verify(args, out):
    grid = GridSpec(seed=args.seed, samples=args.samples)
    reports = run_suites(args.suite, grid)
    if args.report:
        with open(args.report, "w", newline="") as fh:
            reports_to_csv(reports, fh)
    if args.format == "csv":
        reports_to_csv(reports, out)
    else:
        for r in reports:
            print(f"{r.status.upper():10s} {r.claim_id:28s} n={r.samples:<6d} worst_margin={_num(r.worst_margin)}",
                  file=out)
    return EXIT_OK if all_passed(reports) else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "csv"), default="plain")

    parser = argparse.ArgumentParser(prog="binetx", description="Extended Binet remainder toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-delta", parents=[common], help="evaluate delta_{a,b}(t) or a derivative")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--deriv", type=int, choices=(0, 1, 2), default=0)
    p.set_defaults(func=_cmd_eval_delta)

    p = sub.add_parser("eval-theta", parents=[common], help="evaluate theta_alpha^(k)(x)")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--deriv", type=int, default=0, metavar="K")
    p.add_argument("--method", choices=("closed", "quad", "both"), default="closed")
    p.set_defaults(func=_cmd_eval_theta)

    p = sub.add_parser("eval-f", parents=[common], help="evaluate theta_alpha(px) - q theta_alpha(x)")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--method", choices=("closed", "quad"), default="closed")
    p.set_defaults(func=_cmd_eval_f)

    p = sub.add_parser("table", parents=[common], help="tabulate theta_alpha^(k) over a log-spaced x-grid")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--deriv", type=int, default=0, metavar="K")
    p.add_argument("--method", choices=("closed", "quad", "both"), default="both")
    p.add_argument("--samples", type=int, default=30)
    p.add_argument("--x-min", type=float, default=0.05)
    p.add_argument("--x-max", type=float, default=50.0)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("divergence", parents=[common], help="fit the log blow-up of the truncated integral")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=5, help="number of epsilons in [1e-6, 1e-2]")
    p.set_defaults(func=_cmd_divergence)

    p = sub.add_parser("verify", parents=[common], help="run certification suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--report", metavar="PATH")
    p.set_defaults(func=_cmd_verify)
    return parser


def run(argv=None, out=None):
    """Parse ``argv`` and execute; returns the exit status."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (DomainError, ValueError) as exc:
        print(f"binetx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"binetx: quadrature failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main():
    sys.exit(run())
