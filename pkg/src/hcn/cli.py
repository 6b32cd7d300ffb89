"""Command-line front end: compute, enumerate, verify, export.

Exit codes: 0 success (all checks passed), 1 verification failure,
2 usage or hypothesis error.  Rationals are always printed exactly as
"num/den" strings, never floats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from hcn import binary_forms, class_numbers, qseries, relations, suites, ternary_forms
from hcn.arith import rational_str
from hcn.class_numbers import PWParams
from hcn.qseries import QSeries
from hcn.reports import jsonable
from hcn.ternary_forms import TernaryForm

_PARAM_FLAGS = {
    "p": int, "n": int, "N": int, "m": int, "ell": int, "q": int,
    "N1": int, "N2": int, "Neven": int, "aniso": int, "variant": str,
}


def _add_output_flags(sub):
    sub.add_argument("--format", choices=("json", "csv", "pretty"),
                     default=None, help="output format")
    sub.add_argument("--output", default=None, help="write to file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcn",
        description="Exact generalized Hurwitz class numbers, quadratic form "
                    "enumeration, theta series, and identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hurwitz", help="Hurwitz class number H(n) (oracle path)")
    s.add_argument("n", type=int)
    _add_output_flags(s)

    s = sub.add_parser("pw", help="Pei-Wang class number H(ell, m, N; n)")
    s.add_argument("--ell", type=int, default=1)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    _add_output_flags(s)

    s = sub.add_parser("lsz", help="modified class number H^(N1,N2)(D)")
    s.add_argument("--n1", type=int, required=True)
    s.add_argument("--n2", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    _add_output_flags(s)

    s = sub.add_parser("local-factors", help="local factors A_p, B_p, C_p, D_p")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    _add_output_flags(s)

    s = sub.add_parser("orbits", help="Gamma_0(p)-orbit representatives")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--disc", type=int, required=True,
                   help="negative discriminant, e.g. --disc=-43")
    _add_output_flags(s)

    s = sub.add_parser("ternary-enumerate",
                       help="ternary form classes by level and discriminant")
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--disc", type=int, required=True)
    s.add_argument("--aniso", type=int, default=None,
                   help="restrict to exact anisotropy set (product of primes)")
    _add_output_flags(s)

    s = sub.add_parser("theta", help="theta series of a ternary form")
    s.add_argument("--form", required=True, help="a,b,c,r,s,t")
    s.add_argument("--prec", type=int, required=True)
    _add_output_flags(s)

    s = sub.add_parser("eta", help="eta product q-expansion")
    s.add_argument("--factors", required=True,
                   help="comma-separated d:e pairs, e.g. 2:1,22:1")
    s.add_argument("--prec", type=int, required=True)
    _add_output_flags(s)

    s = sub.add_parser("series-hmn", help="generating series of H(ell,m,N;n)")
    s.add_argument("--ell", type=int, default=1)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--prec", type=int, required=True)
    _add_output_flags(s)

    s = sub.add_parser("verify", help="verify one identity (or a range)")
    s.add_argument("identity", choices=relations.registry_names())
    for flag, typ in _PARAM_FLAGS.items():
        s.add_argument(f"--{flag}", type=typ, default=None)
    s.add_argument("--truncation", type=int, default=None)
    s.add_argument("--range", action="append", default=[],
                   metavar="AXIS=LO:HI",
                   help="sweep a parameter, e.g. --range n=0:100 (inclusive)")
    _add_output_flags(s)

    s = sub.add_parser("verify-all", help="run the smoke or desk suite")
    s.add_argument("--scale", choices=("smoke", "desk"), default="smoke")
    _add_output_flags(s)

    s = sub.add_parser("seed-tables",
                       help="dump golden tables (orbits, genera, series heads)")
    s.add_argument("outdir")
    return parser


def _emit(payload, fmt: str, output: str | None, pretty_fn=None):
    if fmt == "json":
        text = json.dumps(jsonable(payload), indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        text = _to_csv(payload)
    else:
        text = (pretty_fn or _default_pretty)(payload)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _default_pretty(payload) -> str:
    if isinstance(payload, Fraction):
        return rational_str(payload) + "\n"
    if isinstance(payload, QSeries):
        lines = [f"q^{n}: {rational_str(c)}" for n, c in payload.items()]
        return "\n".join(lines or ["0"]) + "\n"
    return json.dumps(jsonable(payload), indent=2, sort_keys=True) + "\n"


def _to_csv(payload) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    data = jsonable(payload)
    if isinstance(payload, QSeries):
        writer.writerow(["n", "coefficient"])
        for n, c in payload.items():
            writer.writerow([n, rational_str(c)])
    elif isinstance(data, dict) and "reports" in data:
        keys = sorted({k for r in data["reports"] for k in r["params"]})
        writer.writerow(["identity", *keys, "lhs", "rhs", "pass"])
        for r in data["reports"]:
            writer.writerow(
                [r["identity"], *[r["params"].get(k, "") for k in keys],
                 json.dumps(r["lhs"]), json.dumps(r["rhs"]), r["pass"]]
            )
    elif isinstance(data, list):
        for row in data:
            writer.writerow(row if isinstance(row, (list, tuple)) else [row])
    else:
        for k, v in sorted(data.items()):
            writer.writerow([k, json.dumps(v)])
    return buf.getvalue()


def _parse_form(text: str) -> TernaryForm:
    parts = [int(v) for v in text.split(",")]
    if len(parts) != 6:
        raise ValueError("--form needs six integers a,b,c,r,s,t")
    return TernaryForm(*parts)


def _parse_ranges(specs):
    axes = []
    for spec in specs:
        name, _, bounds = spec.partition("=")
        lo, _, hi = bounds.partition(":")
        if name not in _PARAM_FLAGS or not hi:
            raise ValueError(f"bad --range {spec!r}; use AXIS=LO:HI")
        axes.append((name, range(int(lo), int(hi) + 1)))
    return axes


def _verify_command(args) -> int:
    params = {k: getattr(args, k) for k in _PARAM_FLAGS if getattr(args, k) is not None}
    axes = _parse_ranges(args.range)
    fmt = args.format or "json"
    if not axes:
        report = relations.verify(args.identity, params, args.truncation)
        _emit(report, fmt, args.output,
              pretty_fn=lambda r: f"{r.identity} {r.params}: lhs={jsonable(r.lhs)} "
                                  f"rhs={jsonable(r.rhs)} "
                                  f"{'PASS' if r.passed else 'FAIL'}\n")
        return 0 if report.passed else 1
    grid = [dict(params)]
    for name, values in axes:
        grid = [dict(g, **{name: v}) for g in grid for v in values]
    reports, summary = relations.verify_range(args.identity, grid, args.truncation)
    payload = {"summary": summary, "reports": [r.to_dict() for r in reports]}
    _emit(payload, fmt, args.output,
          pretty_fn=lambda p: f"{summary['identity']}: {summary['passed']}/"
                              f"{summary['total']} passed\n")
    return 0 if summary["all_passed"] else 1


def _verify_all_command(args) -> int:
    suite = suites.smoke_suite() if args.scale == "smoke" else suites.desk_suite()
    progress = None if args.output else (lambda msg: print(msg, flush=True))
    summaries, ok = suites.run_suite(suite, progress=progress)
    payload = {"scale": args.scale, "all_passed": ok, "blocks": summaries}
    if args.output or (args.format or "pretty") != "pretty":
        _emit(payload, args.format or "json", args.output)
    elif not ok:
        print(json.dumps(jsonable(payload), indent=2, sort_keys=True))
    return 0 if ok else 1


def _seed_tables(outdir: str) -> int:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)

    def dump(name, payload):
        (out / name).write_text(
            json.dumps(jsonable(payload), indent=2, sort_keys=True) + "\n"
        )

    for p, n in ((31, 43), (31, 172), (41, 35), (41, 140)):
        dump(f"orbits_p{p}_disc{-n}.json", binary_forms.gamma0_orbits(p, n))
    for big_n, aniso in ((5, 5), (7, 7), (11, 11), (15, 3), (15, 5),
                         (21, 3), (21, 7), (35, 5), (35, 7)):
        dump(f"genus_N{big_n}_aniso{aniso}.json",
             ternary_forms.genus_contents(big_n, aniso))
    dump("theta_Q5.json",
         ternary_forms.theta_series(TernaryForm(7, 3, 7, 2, -6, 2), 19))
    dump("theta_Q7.json",
         ternary_forms.theta_series(TernaryForm(4, 7, 8, 0, -4, 0), 19))
    dump("theta_Q11.json",
         ternary_forms.theta_series(TernaryForm(3, 15, 15, -14, -2, -2), 48))
    dump("cusp_f_p11.json", relations.cusp_f_series(55))
    for m, big_n, prec in ((5, 5, 19), (7, 7, 19), (11, 11, 48), (35, 35, 50)):
        dump(f"hmn_{m}_{big_n}.json", relations.hmn_series(m, big_n, prec))
    dump("r3_series.json", qseries.r3_series(100))
    print(f"wrote golden tables to {out}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", None)
    out = getattr(args, "output", None)
    try:
        if args.command == "hurwitz":
            _emit(binary_forms.hurwitz_H(args.n), fmt or "pretty", out)
        elif args.command == "pw":
            value = class_numbers.pw_class_number(
                PWParams(args.ell, args.m, args.N), args.n
            )
            _emit(value, fmt or "pretty", out)
        elif args.command == "lsz":
            _emit(class_numbers.lsz_class_number(args.n1, args.n2, args.d),
                  fmt or "pretty", out)
        elif args.command == "local-factors":
            lf = class_numbers.local_factors(args.p, args.n)
            _emit({"p": lf.p, "A": lf.A, "B": lf.B, "C": lf.C, "D": lf.D},
                  fmt or "json", out)
        elif args.command == "orbits":
            if args.disc >= 0:
                raise ValueError("--disc must be negative")
            _emit(binary_forms.gamma0_orbits(args.p, -args.disc),
                  fmt or "json", out)
        elif args.command == "ternary-enumerate":
            reps = ternary_forms.enumerate_classes(args.level, args.disc,
                                                   args.aniso)
            _emit([{"form": f.to_dict(), "aut": ternary_forms.aut_order(f)}
                   for f in reps], fmt or "json", out)
        elif args.command == "theta":
            _emit(ternary_forms.theta_series(_parse_form(args.form), args.prec),
                  fmt or "json", out)
        elif args.command == "eta":
            factors = []
            for part in args.factors.split(","):
                d, _, e = part.partition(":")
                factors.append((int(d), int(e)))
            _emit(qseries.eta_product(factors, args.prec), fmt or "json", out)
        elif args.command == "series-hmn":
            _emit(relations.hmn_series(args.m, args.N, args.prec, ell=args.ell),
                  fmt or "json", out)
        elif args.command == "verify":
            return _verify_command(args)
        elif args.command == "verify-all":
            return _verify_all_command(args)
        elif args.command == "seed-tables":
            return _seed_tables(args.outdir)
        return 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
