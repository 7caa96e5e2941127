"""Command-line front end: ``gammapoles {eval,limit,check,sweep}``.

Exit codes: 0 ok, 1 usage, 2 pole, 3 convention discrepancy, 4 I/O,
5 an identity check failed its threshold.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import identities
from .errors import DomainError, GammaOverflowError, PoleError
from .gamma_core import Quadrature, RationalApprox, TruncatedProduct, evaluate
from .pole_limits import (
    RatioLimitSpec,
    SignConvention,
    limit_extrapolate,
    ratio_limit_closed_form,
    ratio_limit_float,
    ratio_stable,
    residue_ratio_oracle,
    sign_discrepancy,
)

EXIT_OK, EXIT_USAGE, EXIT_POLE, EXIT_DISCREPANCY, EXIT_IO, EXIT_CHECK_FAILED = range(6)

CSV_HEADER = ("z", "ratio", "limit", "abs_deviation")


@dataclass(frozen=True)
class SweepConfig:
    n: int = 100
    center: float = 0.0
    half_width: float = 0.05
    samples: int = 1000
    exclusion_radius: float = 1e-4
    convention: SignConvention = SignConvention.RESIDUE_ORACLE

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.samples < 2:
            raise ValueError("samples must be >= 2")
        if not self.half_width > 0:
            raise ValueError("half_width must be > 0")
        if not 0 <= self.exclusion_radius < self.half_width:
            raise ValueError("need 0 <= exclusion_radius < half_width")


@dataclass(frozen=True)
class OutputRecord:
    z: float
    ratio: float
    limit: float
    abs_deviation: float


def _pole_distance(z, n):
    """Distance from real z to the nearest pole of Gamma(nz) or Gamma(z).

    Poles of Gamma(z) (z = -j) are a subset of those of Gamma(nz) (z = -j/n).
    """
    if z >= 0:
        return z
    j = max(0, round(-z * n))
    return abs(z + j / n)


def sweep_records(config):
    """Gamma(nz)/Gamma(z) on an even grid around ``center``.

    Points within ``exclusion_radius`` of a pole of numerator or denominator
    are dropped, as are points where the ratio is not finite.  The ``limit``
    column is the closed-form limit at the pole -k nearest to ``center``.
    """
    k = max(0, round(-config.center))
    limit = ratio_limit_float(RatioLimitSpec(config.n, k), config.convention)
    zs = np.linspace(config.center - config.half_width, config.center + config.half_width, config.samples)
    out = []
    for z in zs:
        z = float(z)
        if _pole_distance(z, config.n) < config.exclusion_radius:
            continue
        try:
            r = ratio_stable(z, config.n)
        except (PoleError, OverflowError):
            continue
        if not math.isfinite(r):
            continue
        out.append(OutputRecord(z, r, limit, abs(r - limit)))
    return out


def write_records(records, fh, fmt="csv"):
    if fmt == "json":
        json.dump([asdict(r) for r in records], fh, indent=1)
        fh.write("\n")
        return
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow((repr(r.z), repr(r.ratio), repr(r.limit), repr(r.abs_deviation)))


# -- argument handling -------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_complex(text):
    """Parse 'a', 'bi', 'a+bi' or 'a-bi' (a 'j' suffix also works)."""
    s = text.strip().replace(" ", "")
    if s[-1:] in ("i", "I", "j", "J"):
        head = s[:-1]
        if head == "" or head[-1] in "+-":
            head += "1"
        s = head + "j"
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}") from None


def _looks_numeric(tok):
    try:
        parse_complex(tok)
        return True
    except argparse.ArgumentTypeError:
        return False


def _protect_negative_numbers(argv):
    # argparse treats '-3+1i' or '-1e-4' as option flags; a leading space defuses that
    return [(" " + t) if t.startswith("-") and len(t) > 1 and _looks_numeric(t) else t for t in argv]


def _global_flags(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=("csv", "json"), default=default, help="output format")
    parser.add_argument("--tol", type=float, default=default, help="tolerance / threshold override")


def build_parser():
    p = _Parser(prog="gammapoles", description=__doc__.splitlines()[0])
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate Gamma(z)")
    _global_flags(e, suppress=True)
    e.add_argument("z", type=parse_complex, help="complex literal such as 0.5, -3, 0.5+1i")
    e.add_argument("--method", choices=("lanczos", "product", "integral"), default="lanczos")
    e.add_argument("--terms", type=int, default=1_000_000, help="product terms (method=product)")
    e.add_argument("--nodes", type=int, default=200, help="quadrature nodes (method=integral)")

    lim = sub.add_parser("limit", help="limit of Gamma(nz)/Gamma(z) at z = -k")
    _global_flags(lim, suppress=True)
    lim.add_argument("-n", type=int, required=True)
    lim.add_argument("-k", type=int, required=True)
    lim.add_argument("--convention", choices=[c.value for c in SignConvention], default="residue")
    lim.add_argument("--eps0", type=float, default=1e-3)
    lim.add_argument("--steps", type=int, default=20)

    c = sub.add_parser("check", help="identity residual checks")
    _global_flags(c, suppress=True)
    c.add_argument("identity", help="one of: all, " + ", ".join(i.value for i in identities.IdentityId))
    c.add_argument("-n", type=int, help="single n (gauss, chord-length, sine-product, roots-of-unity, gamma-fraction-product)")
    c.add_argument("--n-max", type=int, help="largest n on the grid")
    c.add_argument("--points", type=int, help="random points (reflection, gauss per n)")
    c.add_argument("--seed", type=int, help="grid seed (reflection, gauss)")

    s = sub.add_parser("sweep", help="write Gamma(nz)/Gamma(z) samples around a pole")
    _global_flags(s, suppress=True)
    s.add_argument("-n", type=int, default=100)
    s.add_argument("--center", type=float, default=0.0)
    s.add_argument("--half-width", type=float, default=0.05)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--exclude", type=float, default=1e-4, help="exclusion radius around poles")
    s.add_argument("--convention", choices=[c.value for c in SignConvention], default="residue")
    s.add_argument("-o", "--output", default="-", help="output path, '-' for stdout")
    return p


# -- commands ------------------------------------------------------------------


def _fmt17(x):
    return f"{x:#.17g}"


def format_value(v):
    if isinstance(v, complex) and v.imag != 0:
        return f"{_fmt17(v.real)}{'+' if v.imag >= 0 else '-'}{_fmt17(abs(v.imag))}i"
    return _fmt17(v.real if isinstance(v, complex) else v)


def cmd_eval(args, out, err):
    z = args.z
    if z.imag == 0:
        z = z.real
    if args.method == "product":
        method = TruncatedProduct(args.terms)
    elif args.method == "integral":
        method = Quadrature(args.nodes)
    else:
        method = RationalApprox()
    try:
        v = evaluate(z, method)
    except PoleError as exc:
        print(str(exc), file=err)
        return EXIT_POLE
    except (DomainError, GammaOverflowError, ValueError) as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    print(format_value(v), file=out)
    return EXIT_OK


def cmd_limit(args, out, err):
    try:
        spec = RatioLimitSpec(args.n, args.k)
        est = limit_extrapolate(spec, args.eps0, args.steps)
    except ValueError as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    tol = 1e-8 if args.tol is None else args.tol
    convention = SignConvention(args.convention)
    requested = ratio_limit_closed_form(spec, convention)
    residue = ratio_limit_float(spec, SignConvention.RESIDUE_ORACLE)
    paper = ratio_limit_float(spec, SignConvention.PAPER_THEOREM2)
    oracle = residue_ratio_oracle(spec)
    flagged = sign_discrepancy(spec)
    matches_oracle = est.value.relative_difference(oracle) <= tol
    matches_requested = est.value.relative_difference(requested) <= tol

    report = {
        "n": spec.n,
        "k": spec.k,
        "convention": convention.value,
        "closed_form": ratio_limit_float(spec, convention),
        "closed_form_residue": residue,
        "closed_form_paper": paper,
        "discrepancy": flagged,
        "extrapolated": est.to_float(),
        "extrapolated_log_magnitude": est.value.log_mag,
        "extrapolated_sign": est.sign,
        "achieved_tol": est.achieved_tol,
        "order": est.order,
        "matches_oracle": matches_oracle,
        "matches_convention": matches_requested,
    }
    if args.format == "json":
        json.dump(report, out, indent=1)
        out.write("\n")
    else:
        print(f"n = {spec.n}, k = {spec.k}", file=out)
        if flagged:
            print(f"closed form (residue): {residue!r}", file=out)
            print(f"closed form (paper):   {paper!r}   DISCREPANCY (n and k odd)", file=out)
        else:
            print(f"closed form:           {ratio_limit_float(spec, convention)!r}", file=out)
        print(f"extrapolated:          {est.to_float()!r}", file=out)
        print(f"log |extrapolated|:    {est.value.log_mag!r}", file=out)
        print(f"achieved tol:          {est.achieved_tol:.3e}", file=out)
        print(f"observed order:        {est.order:.3f}", file=out)
        print(f"oracle agreement:      {'OK' if matches_oracle else 'MISMATCH'}", file=out)
        if not matches_requested:
            print(f"measured value disagrees with the '{convention.value}' convention", file=out)
    if not matches_requested or not matches_oracle:
        return EXIT_DISCREPANCY
    return EXIT_OK


def _check_kwargs(identity, args):
    I = identities.IdentityId
    kw = {}
    if args.tol is not None:
        kw["threshold"] = args.tol
    if identity in (I.SINE_PRODUCT, I.ROOTS_OF_UNITY_PRODUCT, I.GAMMA_FRACTION_PRODUCT):
        if args.n is not None:
            kw["n_min"] = kw["n_max"] = args.n
        elif args.n_max is not None:
            kw["n_max"] = args.n_max
    elif identity is I.GAUSS_MULTIPLICATION:
        if args.n is not None:
            kw["n_values"] = [args.n]
        elif args.n_max is not None:
            kw["n_values"] = range(1, args.n_max + 1)
    elif identity is I.CHORD_LENGTH:
        if args.n is not None:
            kw["ns"] = [args.n]
        elif args.n_max is not None:
            kw["ns"] = range(2, args.n_max + 1)
    if identity in (I.REFLECTION, I.GAUSS_MULTIPLICATION):
        if args.points is not None:
            kw["points"] = args.points
        if args.seed is not None:
            kw["seed"] = args.seed
    return kw


def cmd_check(args, out, err):
    if args.identity == "all":
        ids = list(identities.IdentityId)
    else:
        try:
            ids = [identities.IdentityId(args.identity)]
        except ValueError:
            print(f"unknown identity {args.identity!r}", file=err)
            return EXIT_USAGE
    try:
        reports = [identities.run_check(i, **_check_kwargs(i, args)) for i in ids]
    except ValueError as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    rows = [r.as_row() for r in reports]
    if args.format == "json":
        json.dump(rows, out, indent=1)
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("id", "grid", "max_residual", "threshold", "status"))
        for r in rows:
            w.writerow((r["id"], r["grid"], repr(r["max_residual"]), repr(r["threshold"]), r["status"]))
    else:
        width = max(len(r["id"]) for r in rows)
        for r in rows:
            print(
                f"{r['id']:<{width}}  {r['max_residual']:.3e}  <= {r['threshold']:.0e}  {r['status']}  [{r['grid']}]",
                file=out,
            )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def cmd_sweep(args, out, err):
    try:
        config = SweepConfig(
            n=args.n,
            center=args.center,
            half_width=args.half_width,
            samples=args.samples,
            exclusion_radius=args.exclude,
            convention=SignConvention(args.convention),
        )
    except ValueError as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    records = sweep_records(config)
    fmt = args.format or "csv"
    buf = io.StringIO()
    write_records(records, buf, fmt)
    try:
        if args.output == "-":
            out.write(buf.getvalue())
        else:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(buf.getvalue())
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=err)
        return EXIT_IO
    return EXIT_OK


_COMMANDS = {"eval": cmd_eval, "limit": cmd_limit, "check": cmd_check, "sweep": cmd_sweep}


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        # argparse writes usage and help to the process streams
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = build_parser().parse_args(_protect_negative_numbers(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return _COMMANDS[args.command](args, out, err)


if __name__ == "__main__":
    sys.exit(main())
