"""mekr command-line interface.

Exit status: 0 success, 1 a checked property failed (witness on stderr),
2 usage or resource error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import coeffs, lattice, multiset, spectrum, verify
from .errors import PropertyViolation, ResourceError, UsageError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _m_value(text: str):
    if text.lower() in ("inf", "infinity"):
        return coeffs.INF
    return _positive(text)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=_positive, default=None,
                        help="worker processes for sweeps (default: $MEKR_THREADS or CPU count)")
    common.add_argument("--ledger", default=None, help="append JSON-lines records here")
    common.add_argument("--cap", type=_positive, default=multiset.DEFAULT_CAP,
                        help="refuse to materialize more multisets than this")

    parser = _Parser(prog="mekr", description="Bounded-multiset Erdos-Ko-Rado computations and checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", parents=[common], help="coefficient row C(k, l)")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--m", type=_m_value, required=True)

    p = sub.add_parser("spectrum", parents=[common], help="first peak and unimodality of a row")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--m", type=_m_value, required=True)

    p = sub.add_parser("window", parents=[common], help="window set S(j, l, r)")
    p.add_argument("--j", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--r", type=_positive, required=True)

    check = sub.add_parser("check", help="exhaustive property checks")
    checks = check.add_subparsers(dest="check", required=True, parser_class=_Parser)
    p = checks.add_parser("transform", parents=[common], help="the transform identity")
    p.add_argument("--q", type=_positive)
    p.add_argument("--m", type=_positive)
    p.add_argument("--r", type=_positive)
    p.add_argument("--s", type=_positive)
    p.add_argument("--m-max", type=_positive, default=6)
    p.add_argument("--q-max", type=_positive, default=6)
    p = checks.add_parser("inequalities", parents=[common], help="spirality, alpha bound, reflection")
    p.add_argument("--k", type=_positive)
    p.add_argument("--m", type=_positive)
    p.add_argument("--n-max", type=_positive)
    p.add_argument("--k-max", type=_positive, default=300)
    p.add_argument("--m-max", type=_positive, default=8)
    p.add_argument("--n-extra", type=_nonneg, default=20)
    p = checks.add_parser("unimodality", parents=[common], help="first-peak unimodality of every row")
    p.add_argument("--k-max", type=_positive, default=300)
    p.add_argument("--m-max", type=_positive, default=8)
    p = checks.add_parser("windows", parents=[common], help="window sets are intervals")
    p.add_argument("--m-max", type=_positive, default=12)
    p = checks.add_parser("dominance", parents=[common], help="window dominance on all admissible pairs")
    p.add_argument("--k-max", type=_positive, default=40)
    p.add_argument("--m-max", type=_positive, default=5)

    p = sub.add_parser("maximal", parents=[common], help="maximal intersecting families of P([n])")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--count-only", action="store_true")

    construct = sub.add_parser("construct", help="build a multiset family")
    kinds = construct.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for kind in ("star", "fst", "remark"):
        p = kinds.add_parser(kind, parents=[common])
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--m", type=_m_value, required=True)
        p.add_argument("--k", type=_positive, required=True)
        if kind == "fst":
            p.add_argument("--s", type=_nonneg, required=True)
            p.add_argument("--t", type=_positive, required=True)
            p.add_argument("--convention", choices=("multiplicity", "support"), default="multiplicity")

    p = sub.add_parser("verify", parents=[common], help="verify one (n, m, k) instance")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_m_value, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--method", choices=("auto", "reduction", "brute", "both"), default="auto")

    p = sub.add_parser("sweep", parents=[common], help="verify every instance in a box")
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--m-max", type=_positive, required=True)
    p.add_argument("--k-max", type=_positive, required=True)
    p.add_argument("--k-min", type=_positive, default=2)
    p.add_argument("--method", choices=("auto", "reduction", "brute", "both"), default="auto")
    return parser


def _csv(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _render(data, fmt: str, header=None, rows=None) -> str:
    if fmt == "csv":
        if rows is None:
            header = list(data)
            rows = [[_cell(data[h]) for h in header]]
        return _csv(rows, header)
    return json.dumps(data, indent=2) + "\n"


def _cell(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    if value is None:
        return ""
    return value


def _family_output(fam: multiset.MultisetFamily, fmt: str) -> str:
    if fmt == "csv":
        return _csv(fam.to_json(), [f"x{i + 1}" for i in range(fam.n)])
    return json.dumps({"n": fam.n, "m": fam.m, "k": fam.k, "size": str(len(fam)),
                       "members": fam.to_json()}) + "\n"


def _threads(args) -> int:
    return args.threads if args.threads is not None else verify.default_threads()


def run(args, out) -> int:
    cmd = args.command
    fmt = args.format
    if cmd == "coeffs":
        table = coeffs.build_coeff_table(args.k, args.m)
        items = table.nonzero_items()
        if fmt == "csv":
            out.write(_csv([[l, c] for l, c in items], ["l", "C"]))
        else:
            out.write(json.dumps({str(l): str(c) for l, c in items}, indent=2) + "\n")
    elif cmd == "spectrum":
        out.write(_render(spectrum.spectrum_profile(args.k, args.m).to_dict(), fmt))
    elif cmd == "window":
        out.write(_render(spectrum.window_set(args.j, args.l, args.r).to_dict(), fmt))
    elif cmd == "check":
        report = _run_check(args)
        out.write(_render(report.to_dict(), fmt))
        report.require()
    elif cmd == "maximal":
        if args.count_only:
            out.write(_render({"n": args.n, "count": lattice.count_maximal_intersecting(args.n)}, fmt))
        else:
            fams = lattice.enumerate_maximal_intersecting(args.n)
            if fmt == "csv":
                out.write(_csv([[" ".join(map(str, f.members))] for f in fams], ["members"]))
            else:
                out.write(json.dumps([f.to_json() for f in fams]) + "\n")
    elif cmd == "construct":
        if args.kind == "star":
            fam = multiset.star_family(args.n, args.m, args.k, cap=args.cap)
        elif args.kind == "fst":
            fam = multiset.fst_family(args.n, args.m, args.k, args.s, args.t,
                                      convention=args.convention, cap=args.cap)
        else:
            fam = verify.construct_remark_N(args.n, args.m, args.k)
        out.write(_family_output(fam, fmt))
    elif cmd == "verify":
        report = verify.verify_instance(args.n, args.m, args.k, args.method)
        if args.ledger:
            with open(args.ledger, "a", encoding="utf-8") as fh:
                fh.write(verify.record_line(report.to_record()) + "\n")
        out.write(_render(report.to_dict(), fmt))
    elif cmd == "sweep":
        summary = verify.sweep(args.n_max, args.m_max, args.k_max, args.ledger,
                               k_min=args.k_min, threads=_threads(args), method=args.method)
        out.write(_render(summary, fmt))
    return 0


def _run_check(args) -> spectrum.CheckReport:
    if args.check == "transform":
        if None not in (args.q, args.m, args.r, args.s):
            return spectrum.transform_identity_check(args.q, args.m, args.r, args.s, strict=False)
        return spectrum.check_transform(args.m_max, args.q_max, strict=False)
    if args.check == "inequalities":
        if None not in (args.k, args.m, args.n_max):
            return spectrum.spirality_and_bounds_check(args.k, args.m, args.n_max, strict=False)
        return spectrum.check_inequalities(args.k_max, args.m_max, args.n_extra, strict=False)
    if args.check == "unimodality":
        return spectrum.check_unimodality(args.k_max, range(2, args.m_max + 1), strict=False)
    if args.check == "windows":
        return spectrum.check_windows(args.m_max, strict=False)
    return spectrum.check_window_dominance(args.k_max, args.m_max, strict=False)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return run(args, sys.stdout)
    except PropertyViolation as exc:
        print(f"mekr: property violation: {exc}", file=sys.stderr)
        print(json.dumps(exc.witness, indent=2, default=str), file=sys.stderr)
        return 1
    except (UsageError, ResourceError) as exc:
        print(f"mekr: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
