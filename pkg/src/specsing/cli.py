"""Command-line front end.

    specsing point analyze "a=1,b=0,c=2i,d=1"
    specsing point sweep --mu=-1+4i --eps-min -1 --eps-max 1 --steps 201
    specsing sphere modes --preset rose_bengal_dmso --radius 3.3mm [--exact]
    specsing sphere scan --preset rose_bengal_dmso --radius 3.3mm --g0 4.981546 \\
        --lambda-min 548.7 --lambda-max 549.3 --points 4001
    specsing sphere minradius --preset rose_bengal_dmso
    specsing bessel --nu 1.118033988749895 --z 1+2i

Wavelengths are in nm and gains in cm^-1 on the command line. Exit codes:
0 success (empty results included), 2 usage or parse error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .coalescence import CSV_COLUMNS, sweep
from .exceptions import NonConvergence, SpecsingError
from .gain_sphere import (
    GainMedium,
    SphericalResonator,
    enumerate_modes,
    min_radius,
    scan_reflection,
)
from .point_core import DEFAULT_TOL, Tolerances
from .report import (
    analyze_point,
    format_float,
    load_presets,
    medium_from_preset,
    parse_complex,
    parse_length,
    parse_matrix,
    write_csv,
)
from .specfun import sph_bessel

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

MODE_COLUMNS = ("m", "lambda_pert_nm", "lambda_exact_nm", "g0_cm1", "x", "eta", "kappa")


class UsageError(Exception):
    pass


def _tolerances(pairs):
    values = DEFAULT_TOL.as_dict()
    for pair in pairs or ():
        if "=" not in pair:
            raise UsageError(f"--tol expects NAME=VALUE, got {pair!r}")
        name, value = pair.split("=", 1)
        if name not in values:
            raise UsageError(f"unknown tolerance {name!r}; choose from {sorted(values)}")
        try:
            values[name] = float(value)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return Tolerances(values["class"], values["det"], values["disc"], values["sym"])


def _medium(args):
    """GainMedium and g0_max (1/m) from --preset and/or explicit flags."""
    base = {}
    if args.preset:
        presets = load_presets(args.presets)
        if args.preset not in presets:
            raise UsageError(f"unknown preset {args.preset!r}; have {sorted(presets)}")
        base = dict(presets[args.preset])
    for key, attr in (("n0", "n0"), ("lambda0_nm", "lambda0"), ("gamma_hat", "gamma_hat")):
        if getattr(args, attr) is not None:
            base[key] = getattr(args, attr)
    if getattr(args, "g0_max", None) is not None:
        base["g0_max_cm1"] = args.g0_max
    missing = [k for k in ("n0", "lambda0_nm", "gamma_hat") if k not in base]
    if missing:
        raise UsageError(f"medium incomplete, give --preset or {', '.join('--' + m for m in missing)}")
    base.setdefault("g0_max_cm1", math.inf)
    try:
        return medium_from_preset(base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _resonator(args):
    if args.radius is None:
        raise UsageError("--radius is required")
    try:
        return SphericalResonator(parse_length(args.radius))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_json(header, rows):
    return json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_point_analyze(args):
    try:
        B = parse_matrix(args.matrix)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = analyze_point(B, _tolerances(args.tol))
    _emit(report.to_json(), args)


def cmd_point_sweep(args):
    try:
        mu = parse_complex(args.mu)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.steps < 1:
        raise UsageError("--steps must be positive")
    if args.steps == 1:
        grid = np.array([args.eps_min])
    else:
        grid = np.linspace(args.eps_min, args.eps_max, args.steps)
    scan = sweep(mu, grid, _tolerances(args.tol))
    if args.format == "json":
        rows = [
            [r.eps, r.plus.k.real, r.plus.k.imag, r.plus.kind.value,
             r.minus.k.real, r.minus.k.imag, r.minus.kind.value]
            for r in scan.rows
        ]
        _emit(_rows_json(CSV_COLUMNS, rows), args)
    else:
        _emit(scan.to_csv(), args)


def cmd_sphere_modes(args):
    medium, g0_max = _medium(args)
    res = _resonator(args)
    modes = enumerate_modes(medium, res, g0_max, exact=args.exact)
    rows = [
        [
            s.m,
            s.lambda_pert * 1e9,
            None if s.lambda_exact is None else s.lambda_exact * 1e9,
            s.g0 / 100.0,
            s.x,
            s.eta,
            s.kappa,
        ]
        for s in modes
    ]
    if args.format == "json":
        _emit(_rows_json(MODE_COLUMNS, rows), args)
    else:
        _emit(write_csv(MODE_COLUMNS, rows), args)


def cmd_sphere_scan(args):
    medium, _ = _medium(args)
    res = _resonator(args)
    if (args.g0 is None) == (args.kappa0 is None):
        raise UsageError("give exactly one of --g0 (cm^-1) or --kappa0")
    medium = medium.with_g0(args.g0 * 100.0) if args.g0 is not None else medium.with_kappa0(args.kappa0)
    scan = scan_reflection(medium, res, (args.lambda_min * 1e-9, args.lambda_max * 1e-9), args.points)
    if args.peaks:
        header = ("lambda_nm", "R")
        rows = [[lam * 1e9, r] for lam, r in scan.peaks()[: args.peaks]]
    else:
        header = ("lambda_nm", "R")
        rows = [[float(lam) * 1e9, float(r)] for lam, r in zip(scan.wavelengths, scan.R)]
    if args.format == "json":
        _emit(_rows_json(header, rows), args)
    else:
        _emit(write_csv(header, rows), args)


def cmd_sphere_minradius(args):
    medium, g0_max = _medium(args)
    if not math.isfinite(g0_max):
        raise UsageError("--g0-max is required without a preset")
    a = min_radius(medium, g0_max)
    row = [g0_max / 100.0, a * 1e3]
    header = ("g0_max_cm1", "a_min_mm")
    if args.format == "csv":
        _emit(write_csv(header, [row]), args)
    else:
        _emit(json.dumps(dict(zip(header, row)), indent=2) + "\n", args)


def cmd_bessel(args):
    try:
        z = parse_complex(args.z)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ev = sph_bessel(args.nu, z, regime=args.regime)
    _emit(json.dumps(ev.to_dict(), indent=2) + "\n", args)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _common(p, default_format):
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    p.set_defaults(format=default_format)


def _medium_flags(p):
    p.add_argument("--preset", help="medium preset name (diode, rose_bengal_dmso, ...)")
    p.add_argument("--presets", metavar="FILE", help="presets JSON file (default: $SPECSING_PRESETS or bundled)")
    p.add_argument("--n0", type=float, help="background refractive index")
    p.add_argument("--lambda0", type=float, help="resonance wavelength in nm")
    p.add_argument("--gamma-hat", type=float, help="normalized damping coefficient")
    p.add_argument("--radius", help="sphere radius, e.g. 3.3mm or 150um (bare number: meters)")


def build_parser():
    parser = _Parser(prog="specsing", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    point = top.add_parser("point", help="general point interaction")
    point_sub = point.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = point_sub.add_parser("analyze", help="spectrum, case and symmetries of a matching matrix")
    p.add_argument("matrix", help='matching matrix as "a=..,b=..,c=..,d=.."')
    p.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override class/det/disc/sym")
    _common(p, "json")
    p.set_defaults(func=cmd_point_analyze)

    p = point_sub.add_parser("sweep", help="coalescence family nu = (1 + eps/4) mu^2")
    p.add_argument("--mu", required=True, help="complex mu with Re(mu) <= 0; write --mu=-1+4i")
    p.add_argument("--eps-min", type=float, default=-1.0)
    p.add_argument("--eps-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--tol", action="append", metavar="NAME=VALUE")
    _common(p, "csv")
    p.set_defaults(func=cmd_point_sweep)

    sphere = top.add_parser("sphere", help="spherical gain medium")
    sphere_sub = sphere.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sphere_sub.add_parser("modes", help="modes with threshold gain below g0_max")
    _medium_flags(p)
    p.add_argument("--g0-max", type=float, help="gain ceiling in cm^-1 (overrides the preset)")
    p.add_argument("--exact", action="store_true", help="refine each mode with the exact solver")
    _common(p, "csv")
    p.set_defaults(func=cmd_sphere_modes)

    p = sphere_sub.add_parser("scan", help="reflection coefficient over a wavelength range")
    _medium_flags(p)
    p.add_argument("--g0", type=float, help="gain coefficient in cm^-1")
    p.add_argument("--kappa0", type=float, help="imaginary index at resonance (instead of --g0)")
    p.add_argument("--lambda-min", type=float, required=True, help="nm")
    p.add_argument("--lambda-max", type=float, required=True, help="nm")
    p.add_argument("--points", type=int, default=4001)
    p.add_argument("--peaks", type=int, default=0, metavar="N", help="print the N tallest refined peaks instead")
    _common(p, "csv")
    p.set_defaults(func=cmd_sphere_scan)

    p = sphere_sub.add_parser("minradius", help="smallest radius supporting a singularity")
    _medium_flags(p)
    p.add_argument("--g0-max", type=float, help="gain ceiling in cm^-1")
    _common(p, "json")
    p.set_defaults(func=cmd_sphere_minradius)

    p = top.add_parser("bessel", help="spherical Bessel/Hankel values (debugging aid)")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--z", required=True, help="complex argument, e.g. 2 or 40+3i")
    p.add_argument("--regime", choices=("Series", "Asymptotic"))
    _common(p, "json")
    p.set_defaults(func=cmd_bessel)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(f"specsing: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergence as exc:
        print(f"specsing: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (SpecsingError, ValueError) as exc:
        print(f"specsing: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
