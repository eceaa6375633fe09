"""Command line interface: ``reentrant-casimir {sweep,point,validate,materials}``.

Diagnostics go to stderr. Their level comes from ``REENTRANT_CASIMIR_LOG``
(DEBUG, INFO, WARNING, ERROR; default WARNING) unless ``-v`` is given.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .constants import UM, angular_frequency_to_ev, thermal_wavelength
from .errors import ConfigError, ConvergenceError, DomainError
from .lifshitz import (
    HalfSpacePair,
    ThermalGap,
    dominant_frequency,
    energy_per_area,
    pressure,
    pressure_gradient,
)
from .materials import BUILTIN_NAMES, builtin_material, penetration_depth
from .oracle import default_points, validate_engine, validate_perfect_conductor
from .pfa import membrane_spring_constant, spring_constant_full, spring_constant_perfect_conductor
from .sweep import emit_csv, parse_config, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_CONVERGENCE = 0, 1, 2
LOG_ENV = "REENTRANT_CASIMIR_LOG"

log = logging.getLogger("reentrant_casimir")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _setup_logging(verbose):
    level = os.environ.get(LOG_ENV, "WARNING").upper()
    if verbose:
        level = "DEBUG" if verbose > 1 else "INFO"
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _overrides(args):
    out = {}
    for item in args.set or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    flag_map = {
        "workers": "workers",
        "temperature": "temperature_K",
        "n_points": "n_points",
        "formula": "formula",
        "coatings": "coatings",
    }
    for attr, key in flag_map.items():
        v = getattr(args, attr, None)
        if v is not None:
            out[key] = str(v)
    return out


def cmd_sweep(args):
    text = ""
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    spec = parse_config(text, _overrides(args))
    outcome = run_sweep(spec)
    csv_text = emit_csv(outcome.rows)
    if args.output in (None, "-"):
        sys.stdout.write(csv_text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv_text)
    print(outcome.timing.summary(), file=sys.stderr)
    if not outcome.ok:
        n_bad = sum(not r.valid for r in outcome.rows)
        print(f"{n_bad} gap point(s) failed to converge", file=sys.stderr)
        return EXIT_CONVERGENCE
    return EXIT_OK


def cmd_point(args):
    spec = parse_config("", _overrides(args))
    x = args.gap_um * UM
    tg = ThermalGap(x, spec.temperature)
    post = spec.material(spec.post_material)
    print(f"gap x = {args.gap_um:g} um, T = {spec.temperature:g} K, post = {post.name}")
    print(f"dominant frequency c/(2x) = {dominant_frequency(tg):.6e} rad/s "
          f"({angular_frequency_to_ev(dominant_frequency(tg)):.4g} eV/hbar); "
          f"thermal length hbar c/(k_B T) = {thermal_wavelength(spec.temperature) / UM:.4g} um")
    g = spec.geometry
    print(f"geometry r0 = {g.r0 / UM:g} um, r1 = {g.r1 / UM:g} um, h = {g.h / UM:g} um")
    for c in spec.coatings:
        pair = HalfSpacePair(post, spec.material(c))
        e = energy_per_area(pair, tg, spec.engine)
        p = pressure(pair, tg, spec.engine)
        d = pressure_gradient(pair, tg, spec.engine)
        k = spring_constant_full(g, pair, x, spec.temperature, spec.engine)
        print(f"[{pair.label()}]")
        print(f"  E_PP  = {e.value:.10e} J/m^2   (+/- {e.est_error:.1e}, {e.n_matsubara} Matsubara terms)")
        print(f"  F_PP  = {p.value:.10e} N/m^2   (+/- {p.est_error:.1e})")
        print(f"  F'_PP = {d.value:.10e} N/m^3   (+/- {d.est_error:.1e})")
        print(f"  F_C   = {g.cap_area * p.value:.10e} N (cap)")
        b = k.breakdown
        print(f"  k_C cap            = {b['cap']:.10e} N/m")
        print(f"  k_C sidewall force = {b['sidewall_force']:.10e} N/m")
        print(f"  k_C sidewall energy= {b['sidewall_energy']:.10e} N/m")
        print(f"  k_C full           = {k.k_C:.10e} N/m")
        k_s = membrane_spring_constant(c)
        if k_s is not None:
            print(f"  k_C / k_S          = {b['cap'] / k_s:.4e}  (k_S = {k_s:g} N/m)")
    print(f"perfect conductor, T = 0: k_C = {spring_constant_perfect_conductor(g, x).k_C:.10e} N/m")
    return EXIT_OK


def cmd_validate(args):
    report = validate_engine(default_points(), args.tolerance)
    pc_dev, pc_ok = validate_perfect_conductor()
    if args.json:
        doc = report.to_dict()
        doc["perfect_conductor"] = {"gap_um": 0.3, "rel_dev": pc_dev, "tolerance": 0.01, "passed": pc_ok}
        print(json.dumps(doc, indent=2))
    else:
        print(report.render())
        print(f"perfect-conductor pressure at 0.3 um vs -pi^2 hbar c/(240 a^4): "
              f"{pc_dev:.3e} (tolerance 1e-2): {'PASS' if pc_ok else 'FAIL'}")
    return EXIT_OK if (report.passed and pc_ok) else EXIT_CONVERGENCE


def cmd_materials(args):
    for name in BUILTIN_NAMES:
        m = builtin_material(name)
        line = m.describe()
        if m.is_drude:
            line += f", penetration depth c/Omega = {penetration_depth(m) * 1e9:.1f} nm"
        print(line)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="reentrant-casimir", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def engine_flags(sp):
        sp.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override any config key (repeatable)")
        sp.add_argument("--temperature", type=float, help="temperature in K")
        sp.add_argument("--coatings", help="comma-separated coating materials")

    sw = sub.add_parser("sweep", help="spring constant versus gap, written as CSV")
    sw.add_argument("config", nargs="?", help="key = value config file")
    sw.add_argument("-o", "--output", help="CSV path (default: stdout)")
    sw.add_argument("--workers", type=int, help="worker threads, 0 = all cores")
    sw.add_argument("--n-points", dest="n_points", type=int)
    sw.add_argument("--formula", choices=["cap_only", "full"])
    engine_flags(sw)
    sw.set_defaults(func=cmd_sweep)

    pt = sub.add_parser("point", help="all quantities at one gap")
    pt.add_argument("gap_um", type=float, help="gap in micrometres")
    engine_flags(pt)
    pt.set_defaults(func=cmd_point)

    va = sub.add_parser("validate", help="engine against the brute-force reference")
    va.add_argument("--tolerance", type=float, default=1e-6)
    va.add_argument("--json", action="store_true", help="machine-readable report")
    va.set_defaults(func=cmd_validate)

    ma = sub.add_parser("materials", help="list built-in materials")
    ma.set_defaults(func=cmd_materials)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        return args.func(args)
    except (ConfigError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
