"""Command-line interface: ``wigner-well {eigen,packet,verify}``.

Exit codes: 0 success, 1 a verification check failed, 2 invalid arguments,
3 output could not be written, 4 packet too close to a wall.
"""
from __future__ import annotations

import argparse
import math
import re
import sys

from . import packet, verification
from .core import THREADS_ENV, WellError, make_grid, make_well_config, resolve_threads
from .core import PacketPlacementError
from .export import write_field
from .oracle import marginal_p, marginal_x
from .wigner import wigner_field_eigen

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO, EXIT_PLACEMENT = 0, 1, 2, 3, 4

_FRACTION = re.compile(
    r"^\s*(?:(?P<num>\d+(?:\.\d*)?)\s*\*\s*)?(?P<unit>rev|cl)(?:\s*/\s*(?P<den>\d+(?:\.\d*)?))?\s*$"
)


class UsageError(Exception):
    pass


def parse_time_fraction(text):
    """Parse ``rev/q``, ``p*rev/q``, ``cl/2``, ``rev`` ... into ``(unit, multiplier)``."""
    match = _FRACTION.match(text)
    if not match:
        raise UsageError(f"cannot parse time fraction {text!r}; expected e.g. rev/4, 3*rev/8, cl/2")
    num = float(match["num"]) if match["num"] else 1.0
    den = float(match["den"]) if match["den"] else 1.0
    if den == 0:
        raise UsageError(f"zero denominator in {text!r}")
    return match["unit"], num / den


def _absolute_time(text):
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"time must be finite, got {text!r}")
    return ("abs", value, f"t={text.strip()}")


def _fraction_time(text):
    try:
        unit, factor = parse_time_fraction(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return (unit, factor, text.strip())


def read_config(path):
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    for number, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{number}: expected 'key = value'")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _add_well_options(parser):
    group = parser.add_argument_group("well")
    group.add_argument("--mass", type=float, default=0.5)
    group.add_argument("--length", type=float, default=1.0)
    group.add_argument("--hbar", type=float, default=1.0)


def _add_output_options(parser, grid_defaults):
    nx, np_ = grid_defaults
    group = parser.add_argument_group("grid and output")
    group.add_argument("--nx", type=int, default=nx)
    group.add_argument("--np", type=int, default=np_)
    group.add_argument("--x-min", type=float, default=None, help="default 0")
    group.add_argument("--x-max", type=float, default=None, help="default L")
    group.add_argument("--p-min", type=float, default=None, help="default -p_max")
    group.add_argument("--p-max", type=float, default=None)
    group.add_argument("--out", required=True, help="output path prefix")
    group.add_argument("--format", default="csv,pgm", help="comma list of csv, pgm")
    group.add_argument("--threads", type=int, default=None,
                       help=f"worker cap (default ${THREADS_ENV} or CPU count)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wigner-well",
        description="Wigner distributions of the infinite square well.",
    )
    parser.add_argument("--config", help="file of 'key = value' lines overriding defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    eigen = sub.add_parser("eigen", help="stationary Wigner field of one eigenstate")
    eigen.add_argument("--n", type=int, required=True)
    _add_well_options(eigen)
    _add_output_options(eigen, (201, 201))

    pkt = sub.add_parser("packet", help="time-dependent Wigner field of a Gaussian packet")
    pkt.add_argument("--x0", type=float, default=None, help="default L/2")
    pkt.add_argument("--p0", type=float, default=None, help="default 40*pi*hbar/L")
    pkt.add_argument("--dx0", type=float, default=0.05, help="initial width b/sqrt(2)")
    pkt.add_argument("--n-max", type=int, default=256)
    # both flags share one list so frames keep command-line order
    pkt.add_argument("--t", dest="times", type=_absolute_time, action="append", default=[],
                     help="absolute time")
    pkt.add_argument("--t-frac", dest="times", type=_fraction_time, action="append",
                     help="time as a fraction of T_rev or T_cl: rev/4, 2*rev/3, cl/2")
    _add_well_options(pkt)
    _add_output_options(pkt, (201, 401))

    verify = sub.add_parser("verify", help="run oracle and invariant checks")
    verify.add_argument("suite", choices=sorted(verification.SUITES) + ["all"])
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    overrides = read_config(known.config)
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    accepted = set()
    for sp in subparsers.choices.values():
        dests = {a.dest for a in sp._actions}
        sp.set_defaults(**{k: v for k, v in overrides.items() if k in dests})
        accepted |= dests & overrides.keys()
    unknown = sorted(overrides.keys() - accepted)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")


def _formats(text):
    formats = {f.strip() for f in text.split(",") if f.strip()}
    if not formats or formats - {"csv", "pgm"}:
        raise UsageError(f"--format must list csv and/or pgm, got {text!r}")
    return formats


def _grid(args, well, p_default):
    x_min = 0.0 if args.x_min is None else args.x_min
    x_max = well.length if args.x_max is None else args.x_max
    p_max = p_default if args.p_max is None else args.p_max
    p_min = -p_max if args.p_min is None else args.p_min
    return make_grid(x_min, x_max, args.nx, p_min, p_max, args.np)


def _lump_summary(field):
    x_density = marginal_x(field)
    p_density = marginal_p(field)
    x_peaks = packet.lump_positions(field.grid.x, x_density)
    p_peaks = packet.lump_positions(field.grid.p, p_density)
    return {
        "x_lumps": len(x_peaks),
        "x_lump_positions": " ".join(format(v, ".6g") for v in x_peaks),
        "p_lumps": len(p_peaks),
        "p_lump_positions": " ".join(format(v, ".6g") for v in p_peaks),
        "min_value": float(field.values.min()),
        "max_value": float(field.values.max()),
    }


def cmd_eigen(args):
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    well = make_well_config(args.mass, args.length, args.hbar)
    formats = _formats(args.format)
    threads = resolve_threads(args.threads)
    grid = _grid(args, well, 4.0 * well.momentum(args.n))
    field = wigner_field_eigen(well, args.n, grid, threads)
    metadata = {
        "state": f"eigen n={args.n}",
        "mass": well.mass,
        "length": well.length,
        "hbar": well.hbar,
        "min_value": float(field.values.min()),
        "max_value": float(field.values.max()),
    }
    for path in write_field(args.out, field, metadata, formats):
        print(f"wrote {path}")
    print(f"min={field.values.min():.6g} max={field.values.max():.6g}")
    return EXIT_OK


def cmd_packet(args):
    well = make_well_config(args.mass, args.length, args.hbar)
    formats = _formats(args.format)
    threads = resolve_threads(args.threads)
    if not args.dx0 > 0:
        raise UsageError("--dx0 must be positive")
    x0 = 0.5 * well.length if args.x0 is None else args.x0
    p0 = 40 * math.pi * well.hbar / well.length if args.p0 is None else args.p0
    spec = packet.GaussianPacketSpec.from_width(x0, p0, args.dx0)
    coeffs = packet.expansion_coefficients(well, spec, args.n_max)
    scales = packet.time_scales(well, spec, coeffs)

    bases = {"abs": 1.0, "rev": scales.t_revival, "cl": scales.t_classical}
    times = [(factor * bases[unit], label) for unit, factor, label in args.times]
    if not times:
        times = [(0.0, "t=0")]

    p_default = max(3.0 * abs(p0), 6.0 * well.hbar / spec.b)
    grid = _grid(args, well, p_default)
    for frame, (t, label) in enumerate(times):
        field = packet.wigner_field_packet(well, coeffs, grid, t, threads)
        metadata = {
            "state": "gaussian packet",
            "time_label": label,
            "t": t,
            "T_cl": scales.t_classical,
            "T_rev": scales.t_revival,
            "t_spreading": scales.t_spreading,
            "x0": x0,
            "p0": p0,
            "dx0": args.dx0,
            "n0": coeffs.n0,
            "residual": coeffs.residual,
        }
        summary = _lump_summary(field)
        metadata.update(summary)
        for path in write_field(f"{args.out}_{frame:03d}", field, metadata, formats):
            print(f"wrote {path}")
        print(
            f"frame {frame} ({label}): t={t:.6g} x_lumps={summary['x_lumps']} "
            f"p_lumps={summary['p_lumps']} min={summary['min_value']:.4g}"
        )
    return EXIT_OK


def cmd_verify(args):
    checks = verification.run_suite(args.suite)
    for check in checks:
        print(check.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_CHECK


COMMANDS = {"eigen": cmd_eigen, "packet": cmd_packet, "verify": cmd_verify}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except UsageError as exc:
        print(f"wigner-well: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except PacketPlacementError as exc:
        print(f"wigner-well: packet placement: {exc}", file=sys.stderr)
        return EXIT_PLACEMENT
    except (UsageError, WellError, ValueError) as exc:
        print(f"wigner-well: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"wigner-well: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
