"""Command-line interface: ``besselgspin {compute,verify,series,report} ...``.

Exit codes: 0 success, 1 a verification failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import bessel, conventions, rankinselberg
from .characters import check_dominant
from .evalcheck import DEFAULT_PRIME, InconclusiveError, check_prime, series_comparator
from .exactalg import LaurentPoly, RationalFunction, TruncatedSeries, UsageError, format_monomial
from .rootdata import SatakeSpec, Torus

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 already; keep the message on stderr
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _delta(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"delta must be comma-separated integers, got {text!r}") from None


def _torus(text: str) -> Torus:
    try:
        return Torus.parse(text)
    except UsageError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _nonneg(text: str) -> int:
    k = int(text)
    if k < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return k


def _positive(text: str) -> int:
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return k


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="besselgspin", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, torus=True, order=False):
        sp.add_argument("--n", type=_positive, required=True, help="rank")
        if torus:
            sp.add_argument("--torus", type=_torus, default=Torus.SPLIT, help="split or nonsplit")
        if order:
            sp.add_argument("--order", type=_nonneg, default=3, help="truncation degree in X")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", help="write to this file instead of stdout")
        sp.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: $BESSELGSPIN_JOBS or 1)")

    c = sub.add_parser("compute", help="compute a Bessel value or S_delta")
    c.add_argument("quantity", choices=("bessel", "sdelta"))
    common(c)
    c.add_argument("--delta", type=_delta, required=True, help="comma-separated dominant weight")
    c.add_argument("--convention", choices=bessel.CONVENTIONS, default="rho")

    v = sub.add_parser("verify", help="run an exact truncated identity check")
    v.add_argument("identity", choices=("bfg1", "claim", "a8", "corollary"))
    common(v, order=True)
    v.add_argument("--l", type=_positive, help="GL rank for the corollary (1 <= l < n)")
    v.add_argument("--mode", choices=("exact", "fast"), default="exact")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    v.add_argument("--trials", type=_positive, default=5)
    v.add_argument("--convention", choices=bessel.CONVENTIONS, default="rho")

    s = sub.add_parser("series", help="emit series coefficients")
    s.add_argument("name", choices=("d", "zeta", "lpisigma", "lsigmalambda", "extsquare"))
    common(s, order=True)

    r = sub.add_parser("report", help="deterministic reports")
    r.add_argument("name", choices=("conventions",))
    r.add_argument("--output")
    return p


# ---------------------------------------------------------------------------
# serialization


def _poly_rows(prefix: list, poly: LaurentPoly) -> list[list]:
    return [prefix + [format_monomial(poly.vars, e).replace("*", "·"), str(c)] for e, c in sorted(poly.terms.items())]


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def render_value(value: RationalFunction, fmt: str, meta: dict) -> str:
    value = value.reduced()
    if fmt == "json":
        return _dump_json({**meta, "text": str(value), "value": value.to_json(), "laurent": value.is_laurent()})
    rows = _poly_rows(["num"], value.num) + _poly_rows(["den"], value.den)
    return _csv(["part", "monomial", "coef"], rows)


def render_series(series: TruncatedSeries, fmt: str, meta: dict) -> str:
    if fmt == "json":
        coeffs = [{"degree": k, "text": str(c), "coef": c.to_json()} for k, c in enumerate(series.coeffs)]
        return _dump_json({**meta, "order": series.order, "coefficients": coeffs})
    return _csv(["degree", "coefficient"], [[k, str(c).replace("*", "·")] for k, c in enumerate(series.coeffs)])


def render_report(report: rankinselberg.Report, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(report.to_json())
    rows = [[c.degree, "pass" if c.passed else "fail", c.lhs_minus_rhs_terms] for c in report.coefficients]
    return _csv(["degree", "pass", "lhs_minus_rhs_terms"], rows)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args) -> int:
    spec = SatakeSpec(args.n, args.torus)
    delta = check_dominant(args.delta, args.n)
    fn = bessel.bessel_value if args.quantity == "bessel" else bessel.s_delta
    value = fn(spec, delta, args.convention) if fn is bessel.bessel_value else fn(delta, spec, args.convention)
    meta = {"quantity": args.quantity, "n": args.n, "torus": spec.torus.value, "delta": list(delta),
            "convention": args.convention}
    _emit(render_value(value, args.format, meta), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = SatakeSpec(args.n, args.torus)
    comparator = None
    if args.mode == "fast":
        comparator = series_comparator(args.trials, args.seed, check_prime(args.prime))
    kw = {"comparator": comparator, "jobs": args.jobs}
    if args.identity == "bfg1":
        report = rankinselberg.verify_bfg1(args.n, spec, args.order, **kw)
    elif args.identity == "claim":
        report = rankinselberg.verify_claim(args.n, spec, args.order, **kw)
    elif args.identity == "a8":
        report = rankinselberg.verify_a8(args.n, spec, args.order, convention=args.convention, **kw)
    else:
        if args.l is None:
            raise UsageError("corollary needs --l")
        report = rankinselberg.verify_corollary(args.n, args.l, spec, args.order, args.convention, **kw)
    report.options["mode"] = args.mode
    _emit(render_report(report, args.format), args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_series(args) -> int:
    spec = SatakeSpec(args.n, args.torus)
    n, order = args.n, args.order
    if args.name == "d":
        series = rankinselberg.d_series(n, order, jobs=args.jobs)
    elif args.name == "zeta":
        series = rankinselberg.zeta_local_series(n, spec, order, jobs=args.jobs)
    elif args.name == "lpisigma":
        series = rankinselberg.lfactor_pi_sigma(n, order, jobs=args.jobs)
    elif args.name == "lsigmalambda":
        series = rankinselberg.lfactor_sigma_lambda(n, spec, order)
    else:
        series = rankinselberg.lfactor_ext_square(n, order)
    meta = {"series": args.name, "n": n}
    if args.name in ("zeta", "lsigmalambda"):
        meta["torus"] = spec.torus.value
    _emit(render_series(series, args.format, meta), args.output)
    return EXIT_OK


def cmd_report(args) -> int:
    _emit(conventions.report_json(), args.output)
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "series": cmd_series, "report": cmd_report}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InconclusiveError) as e:
        sys.stderr.write(f"besselgspin: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
