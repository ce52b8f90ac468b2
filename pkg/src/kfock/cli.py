"""Command-line front end.

Every subcommand prints one JSON document ``{"terms", "policy", "meta"}`` (see
:mod:`kfock.serialize`).  Exit codes: 0 success, 1 verification failure,
2 invalid input.  Rationals are given as "p/q" strings; floats are refused.

Parameters nu_{r} stand for the relabeled inputs Psi^r(t_{r,0}); with the
scalar lambda-algebra used here the Adams operations act trivially.
"""

from __future__ import annotations

import argparse
import sys

from kfock.fock import KRingData, heisenberg_report
from kfock.point.correlators import corr_poly_insertions, corr_two_ones
from kfock.point.hierarchy import check_compatibility, check_flows, tau_fixed_point
from kfock.point.theory import GuardError, PointTheory
from kfock.serialize import document, dumps, monomial_dict, parse_fraction, qrat_json
from kfock.series import SeriesError, TruncationPolicy
from kfock.suites import SUITES, run_suite
from kfock.symgroup import SymGroupError, character_table, double_cosets, partitions_of

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class CliError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text!r} is negative")
    return v


def _csv_ints(text):
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of integers")
    if any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError("entries must be non-negative")
    return vals


def _rational(text):
    try:
        return parse_fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser():
    p = _Parser(prog="kfock", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="JSON output (the default and only format)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def policy_flags(sp, tdeg=False):
        sp.add_argument("--weight", type=_nonneg, default=6, help="nu-weight bound D (R = max(D, 1))")
        if tdeg:
            sp.add_argument("--tdeg", type=_nonneg, default=3, help="t-degree bound T")

    sp = sub.add_parser("jfun", help="J-function, expanded in q")
    policy_flags(sp)
    sp.add_argument("--qorder", type=_nonneg, default=8)
    sp.add_argument("--exact", action="store_true", help="also list Q(q) coefficients in meta")

    sp = sub.add_parser("smatrix", help="S-matrix, expanded in q")
    policy_flags(sp)
    sp.add_argument("--qorder", type=_nonneg, default=8)
    sp.add_argument("--exact", action="store_true", help="also list Q(q) coefficients in meta")

    sp = sub.add_parser("corr", help="<1/(1-q_1 L), ..., 1, 1> at rational q_i")
    policy_flags(sp)
    sp.add_argument("--q", type=_rational, action="append", required=True)

    sp = sub.add_parser("corr-poly", help="<L^a_1, ..., L^a_n, 1, 1>")
    policy_flags(sp)
    sp.add_argument("--exps", type=_csv_ints, required=True)

    sp = sub.add_parser("hierarchy", help="topological solution tau and flow checks")
    policy_flags(sp, tdeg=True)
    sp.add_argument("--flows", type=_nonneg, default=3)
    sp.add_argument("--check", action="store_true")

    sp = sub.add_parser("verify", help="run verification suites")
    policy_flags(sp, tdeg=True)
    sp.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    sp.add_argument("--max-n", type=_nonneg, default=6, dest="max_n")

    sp = sub.add_parser("char", help="character table of S_n")
    sp.add_argument("--n", type=_nonneg, required=True)
    sp.add_argument("--table", action="store_true")

    sp = sub.add_parser("cosets", help="double cosets S_mu \\ S_n / S_lambda")
    sp.add_argument("--lambda", type=_csv_ints, required=True, dest="lam")
    sp.add_argument("--mu", type=_csv_ints, required=True)

    sp = sub.add_parser("fock", help="Heisenberg commutators on the point Fock space")
    sp.add_argument("--demo", action="store_true")
    sp.add_argument("--weight", type=_nonneg, default=6)
    for sp in sub.choices.values():
        sp.add_argument("--json", action="store_true", help="JSON output (the default)")
    return p


def _policy(args):
    D = args.weight
    K_t = max(getattr(args, "flows", 0), 4) if args.command == "hierarchy" else 4
    return TruncationPolicy(R=max(D, 1), D=D, K_t=K_t, T=getattr(args, "tdeg", 3))


def _exact_terms(s):
    return [{"monomial": monomial_dict(m), "coeff": qrat_json(c)} for m, c in s.items()]


def _cmd_series(args, which):
    P = PointTheory(_policy(args))
    s = P.J if which == "jfun" else P.S
    meta = {"object": which, "q_expansion_order": args.qorder}
    if args.exact:
        meta["exact"] = _exact_terms(s)
    return document(s, meta=meta, qorder=args.qorder), EXIT_OK


def _cmd_corr(args):
    P = PointTheory(_policy(args))
    s = corr_two_ones(P, args.q)
    return document(s, meta={"object": "corr", "q": [str(q) for q in args.q]}), EXIT_OK


def _cmd_corr_poly(args):
    if not args.exps:
        raise CliError("--exps needs at least one exponent")
    P = PointTheory(_policy(args))
    s = corr_poly_insertions(P, args.exps)
    return document(s, meta={"object": "corr-poly", "exps": args.exps}), EXIT_OK


def _cmd_hierarchy(args):
    pol = _policy(args)
    if args.flows > pol.K_t:
        raise CliError("--flows exceeds the number of t variables")
    P = PointTheory(pol)
    tau = tau_fixed_point(P)
    meta = {"object": "tau", "flows": args.flows}
    code = EXIT_OK
    if args.check:
        flows = check_flows(P, args.flows)
        compat = check_compatibility(P, args.flows)
        meta["flows_pass"] = {str(n): ok for n, ok in flows.items()}
        meta["compatibility_pass"] = {f"{m},{n}": ok for (m, n), ok in compat.items()}
        meta["pass"] = all(flows.values()) and all(compat.values())
        code = EXIT_OK if meta["pass"] else EXIT_FAIL
    return document(tau, meta=meta), code


def _cmd_verify(args):
    pol = _policy(args)
    P = PointTheory(pol)
    rep = run_suite(P, args.suite, args.max_n)
    meta = {"suite": args.suite, "pass": rep["pass"], "instances": rep["instances"]}
    return document(policy=pol, meta=meta), EXIT_OK if rep["pass"] else EXIT_FAIL


def _cmd_char(args):
    if args.n < 1:
        raise CliError("--n must be positive")
    labels = partitions_of(args.n)
    table = character_table(args.n)
    rows = {"-".join(map(str, lam)): [int(x) for x in row] for lam, row in zip(labels, table)}
    meta = {"object": "character_table", "n": args.n,
            "classes": ["-".join(map(str, mu)) for mu in labels]}
    if args.table:
        meta["table"] = rows
    return document(policy=TruncationPolicy(R=args.n, D=args.n, K_t=0, T=0), meta=meta), EXIT_OK


def _cmd_cosets(args):
    cosets = double_cosets(args.lam, args.mu)
    meta = {"object": "double_cosets", "lambda": args.lam, "mu": args.mu,
            "cosets": [{"gamma": [list(row) for row in g], "size": s} for g, s in cosets]}
    n = sum(args.lam)
    return document(policy=TruncationPolicy(R=max(n, 1), D=n, K_t=0, T=0), meta=meta), EXIT_OK


def _cmd_fock(args):
    pol = TruncationPolicy(R=max(args.weight, 1), D=args.weight, K_t=0, T=0)
    checked, failures = heisenberg_report(KRingData.point(), pol)
    meta = {"checked": checked, "failures": failures, "pass": not failures}
    return document(policy=pol, meta=meta), EXIT_OK if not failures else EXIT_FAIL


_COMMANDS = {
    "jfun": lambda a: _cmd_series(a, "jfun"),
    "smatrix": lambda a: _cmd_series(a, "smatrix"),
    "corr": _cmd_corr,
    "corr-poly": _cmd_corr_poly,
    "hierarchy": _cmd_hierarchy,
    "verify": _cmd_verify,
    "char": _cmd_char,
    "cosets": _cmd_cosets,
    "fock": _cmd_fock,
}


def run(argv, out=None, err=None):
    """Parse ``argv``, run the subcommand, print JSON and return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        doc, code = _COMMANDS[args.command](args)
    except (CliError, GuardError, SeriesError, SymGroupError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    print(dumps(doc), file=out)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
