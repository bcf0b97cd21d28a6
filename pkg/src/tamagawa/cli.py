"""Command-line entry point.

Reports go to stdout as JSON (or to ``--out``).  The exit status is 0 when a
report has no failures, 1 when it has some and 2 for unusable input.  The
factorization budget defaults to ``$TAMAGAWA_FACTOR_BUDGET``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .curve import SingularCurveError, parse_curve, quadratic_twist
from .families import load_torsion_family
from .padic import IndeterminateError, count_padic_roots
from .poly import parse_poly
from .tate import tamagawa_number, tate_local


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _curve(args):
    E = parse_curve(args.curve)
    if args.twist is not None:
        E = quadratic_twist(E, args.twist)
    return E


def _report(report, args) -> int:
    _emit(report.to_json(), args.out)
    return 0 if report.ok else 1


def cmd_tate(args) -> int:
    L = tate_local(_curve(args), args.prime)
    out = L.summary()
    out["model"] = L.model.ainvs_str()
    out["disc_valuation"] = L.disc_valuation
    _emit(json.dumps(out) + "\n", args.out)
    return 0


def cmd_localdata(args) -> int:
    G = tamagawa_number(_curve(args), args.budget)
    lines = [json.dumps(L.summary()) for L in G.locals]
    if not G.complete:
        lines.append(json.dumps({"incomplete": True, "cofactor": G.conductor.cofactor}))
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


def cmd_qp_roots(args) -> int:
    f = parse_poly(args.poly)
    try:
        rep = count_padic_roots(f, args.prime, args.max_precision)
    except IndeterminateError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return 1
    _emit(json.dumps(rep.as_dict(), indent=1) + "\n", args.out)
    return 0


def cmd_scan_torsion(args) -> int:
    from .harness.scans import scan_torsion_family

    F = load_torsion_family(args.family)
    only = [Fraction(u) for u in args.u] if args.u else None
    return _report(scan_torsion_family(F, args.height, only, args.workers, args.max_precision), args)


def cmd_scan_x0(args) -> int:
    from .harness.scans import scan_isogeny_family

    only_h = [Fraction(h) for h in args.h] if args.h else None
    only_d = args.d or None
    r = scan_isogeny_family(args.n, args.height, args.twists, args.budget, only_h, only_d, args.workers)
    return _report(r, args)


def cmd_verify_fixed(args) -> int:
    from .harness.scans import verify_fixed_isogeny

    return _report(verify_fixed_isogeny(args.n, args.twists), args)


def cmd_verify_i0star(args) -> int:
    from .harness.scans import verify_i0star_congruences

    return _report(verify_i0star_congruences(args.pbound, args.density_bound), args)


def cmd_verify_all(args) -> int:
    from .harness.acceptance import run_all

    results = run_all(args.workers, args.only)
    lines = [c.line() for c in results]
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(c.ok for c in results) else 1


def cmd_props(args) -> int:
    from .harness.properties import run_property_suite

    return _report(run_property_suite(args.seed), args)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tamagawa", description="Local reduction data and Tamagawa divisibility checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the output to this file instead of stdout")
        return sp

    sp = common(sub.add_parser("tate", help="Tate's algorithm at one prime"))
    sp.add_argument("-c", "--curve", required=True, help='a-invariants "a1,a2,a3,a4,a6" (rationals allowed)')
    sp.add_argument("-p", "--prime", type=int, required=True)
    sp.add_argument("--twist", type=int, help="quadratic twist by this squarefree integer first")
    sp.set_defaults(func=cmd_tate)

    sp = common(sub.add_parser("localdata", help="one JSON line per bad prime"))
    sp.add_argument("-c", "--curve", required=True)
    sp.add_argument("--budget", type=int, help="Pollard rho iteration budget")
    sp.add_argument("--twist", type=int)
    sp.set_defaults(func=cmd_localdata)

    sp = common(sub.add_parser("qp-roots", help="count roots of a cubic in Q_p"))
    sp.add_argument("-f", "--poly", required=True, help='"c0,c1,c2,c3" or "x^3+2x^2-9x-2"')
    sp.add_argument("-p", "--prime", type=int, required=True)
    sp.add_argument("--max-precision", type=int, default=64)
    sp.set_defaults(func=cmd_qp_roots)

    scan = sub.add_parser("scan", help="parameter scans").add_subparsers(dest="family_kind", required=True)
    sp = common(scan.add_parser("torsion", help="the Z/2 x Z/14 family"))
    sp.add_argument("--height", type=int, default=3)
    sp.add_argument("--family", help="family JSON file (default: the packaged one)")
    sp.add_argument("--u", action="append", help="only these parameters (repeatable), e.g. --u=-1/2")
    sp.add_argument("--workers", type=int)
    sp.add_argument("--max-precision", type=int, default=2048)
    sp.set_defaults(func=cmd_scan_torsion)

    sp = common(scan.add_parser("x0", help="twists of curves with an n-isogeny"))
    sp.add_argument("--n", type=int, required=True, choices=(6, 8, 10, 18))
    sp.add_argument("--height", type=int, default=3)
    sp.add_argument("--twists", type=int, default=30)
    sp.add_argument("--h", action="append", help="only these parameters (repeatable), e.g. --h=-7/2")
    sp.add_argument("--d", action="append", type=int, help="only these twists (repeatable), e.g. --d=-5")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--workers", type=int)
    sp.set_defaults(func=cmd_scan_x0)

    verify = sub.add_parser("verify", help="fixed checks").add_subparsers(dest="check", required=True)
    sp = common(verify.add_parser("fixed", help="type III at the designated prime"))
    sp.add_argument("--n", type=int, required=True, choices=(14, 17, 19, 37, 43, 67, 163))
    sp.add_argument("--twists", type=int, default=30)
    sp.set_defaults(func=cmd_verify_fixed)

    sp = common(verify.add_parser("i0star", help="I0* congruences and density"))
    sp.add_argument("--pbound", type=int, default=200)
    sp.add_argument("--density-bound", type=int, default=10**4)
    sp.set_defaults(func=cmd_verify_i0star)

    sp = common(verify.add_parser("all", help="the acceptance suite"))
    sp.add_argument("--only", type=int, action="append", help="run only these criteria (repeatable)")
    sp.add_argument("--workers", type=int)
    sp.set_defaults(func=cmd_verify_all)

    sp = common(sub.add_parser("props", help="seeded property suite"))
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_props)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, SingularCurveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
