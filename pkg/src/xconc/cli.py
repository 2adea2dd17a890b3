"""Command line front end.

Exit codes: 0 ok, 2 parse or I/O error, 3 invalid input, 4 verification
mismatch, 5 storage limit.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys

from . import __version__
from .certificate import biseparability_certificate, check_certificate
from .channels import DampingSpec, concurrence_trajectory, damp
from .crosscheck import cross_check
from .errors import DomainError, ParseError, VerificationError, XConcError
from .figures import FIG1_N, FIG2_TAN, fig1_table, fig2_table, probability_grid, write_csv
from .ghz import (GhzParams, critical_p, ghz_concurrence, ghz_xmatrix, half_life,
                  q_value)
from .xmatrix import DEFAULT_TOL, dumps, gm_concurrence, load

EXIT_OK = 0
EXIT_PARSE = 2
ORACLE_TOL = 1e-10


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _alpha(args):
    if (args.alpha is None) == (args.tan_alpha is None):
        raise DomainError("give exactly one of --alpha and --tan-alpha")
    return args.alpha if args.alpha is not None else math.atan(args.tan_alpha)


def _spec(args, n_qubits):
    if args.probs is not None:
        return DampingSpec(tuple(args.probs))
    if args.p is not None:
        return DampingSpec.uniform(n_qubits, args.p)
    return None


# --- commands ----------------------------------------------------------------

def cmd_validate(args):
    x = load(args.file, tol=args.tol)
    print(f"valid: {x.n_qubits} qubits, {x.n_pairs} pairs, trace {x.trace()!r}")


def cmd_concurrence(args):
    x = load(args.file, tol=args.tol)
    report = gm_concurrence(x)
    if args.json:
        print(json.dumps({"concurrence": report.value, "witness_pair": report.witness_pair}))
    else:
        print(f"concurrence: {report.value!r}")
        print(f"witness_pair: {report.witness_pair}")


def cmd_evolve(args):
    x = load(args.file, tol=args.tol)
    if args.grid is not None:
        rows = concurrence_trajectory(x, probability_grid(args.grid), workers=args.threads)
        with _output(args.out) as fh:
            write_csv(["P", "C_GM"], rows, fh)
        return
    spec = _spec(args, x.n_qubits)
    if spec is None:
        raise DomainError("give --p, --probs or --grid")
    with _output(args.out) as fh:
        fh.write(dumps(damp(x, spec, tol=args.tol)))


def cmd_ghz(args):
    alpha = _alpha(args)
    params = GhzParams(args.n, args.k, alpha)
    if args.analytics:
        summary = {"n_qubits": args.n, "k": args.k, "alpha": alpha,
                   "initial_concurrence": ghz_concurrence(params, 0.0)}
        if args.p is not None:
            summary["P"] = args.p
            summary["concurrence"] = ghz_concurrence(params, args.p)
        # k = N is the k = 0 family with cos and sin exchanged
        alpha0 = alpha if args.k == 0 else math.pi / 2 - alpha
        if args.k in (0, args.n) and summary["initial_concurrence"] > 0:
            crit = critical_p(args.n, alpha0)
            summary["critical_p"] = crit.p_c
            summary["finite_lifetime"] = crit.finite_lifetime
            hl = half_life(args.n, alpha0)
            summary["half_life"] = {"exact": hl.exact, "approx": hl.approx,
                                    "coherence": hl.coherence}
            if args.p is not None:
                summary["q_value"] = q_value(args.n, alpha0, args.p)
        elif summary["initial_concurrence"] > 0:
            summary["critical_p"] = 1.0
            summary["finite_lifetime"] = False
        with _output(args.out) as fh:
            fh.write(json.dumps(summary, indent=1) + "\n")
        return
    x = ghz_xmatrix(params)
    if args.p is not None:
        x = damp(x, args.p)
    with _output(args.out) as fh:
        fh.write(dumps(x))


def cmd_certify(args):
    x = load(args.file)
    cert = biseparability_certificate(x, tol=args.tol, max_iter=args.max_iter)
    audit = check_certificate(x, cert)
    with _output(args.out) as fh:
        fh.write(cert.dumps())
    if args.verify and not audit.ok(residual_tol=args.tol):
        raise VerificationError(f"certificate audit failed: {audit}")
    if not cert.complete:
        raise VerificationError(
            f"certificate incomplete: residual trace {cert.residual_trace:.3g} after "
            f"{cert.iterations} iterations"
        )


def cmd_oracle_check(args):
    x = load(args.file)
    spec = _spec(args, x.n_qubits)
    results = cross_check(x, spec=spec, tol=args.tol)
    with _output(args.out) as fh:
        for r in results:
            fh.write(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}\n")
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise VerificationError(f"oracle mismatch: {', '.join(failed)}")


def cmd_fig1(args):
    alpha = math.pi / 4 if args.alpha is None and args.tan_alpha is None else _alpha(args)
    header, rows = fig1_table(args.n, alpha, probability_grid(args.points),
                              verify=args.verify, threads=args.threads)
    with _output(args.out) as fh:
        write_csv(header, rows, fh)


def cmd_fig2(args):
    header, rows = fig2_table(args.tan_alpha, range(args.n_min, args.n_max + 1))
    with _output(args.out) as fh:
        write_csv(header, rows, fh)


# --- parser ------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="xconc",
        description="GM concurrence of N-qubit X-matrices and GHZ decay under damping.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance (default 1e-9; 1e-10 for oracle-check)")
    common.add_argument("--out", "-o", help="output path (default stdout)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for grid evaluation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check an X-matrix file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("concurrence", parents=[common], help="GM concurrence of a file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_concurrence)

    p = sub.add_parser("evolve", parents=[common], help="apply amplitude damping")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--p", type=float, help="uniform decay probability")
    g.add_argument("--probs", type=_floats, help="per-qubit probabilities, comma separated")
    g.add_argument("--grid", type=int, metavar="POINTS",
                   help="write a (P, C_GM) trajectory CSV on an even grid over [0, 1]")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("ghz", parents=[common], help="GHZ state matrix or analytics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--alpha", type=float)
    p.add_argument("--tan-alpha", type=float)
    p.add_argument("--p", type=float, help="damp with this uniform probability")
    p.add_argument("--analytics", action="store_true",
                   help="print closed-form concurrence, P_c and half-life instead")
    p.set_defaults(func=cmd_ghz)

    p = sub.add_parser("certify", parents=[common], help="biseparability certificate (JSON)")
    p.add_argument("file")
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--verify", action="store_true", help="audit the certificate")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("oracle-check", parents=[common],
                       help="compare the formula with the dense oracles")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--p", type=float)
    g.add_argument("--probs", type=_floats)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("fig1", parents=[common], help="Q_N(P) curves as CSV")
    p.add_argument("--n", type=_ints, default=list(FIG1_N))
    p.add_argument("--alpha", type=float)
    p.add_argument("--tan-alpha", type=float)
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--verify", action="store_true",
                   help="add simulated columns for N <= 12 and fail on mismatch")
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("fig2", parents=[common], help="P_c(N) curves as CSV")
    p.add_argument("--tan-alpha", type=_floats, default=list(FIG2_TAN))
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=100)
    p.set_defaults(func=cmd_fig2)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.tol is None:
        args.tol = ORACLE_TOL if args.func is cmd_oracle_check else DEFAULT_TOL
    try:
        args.func(args)
    except XConcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
