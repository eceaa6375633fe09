"""Slow reference evaluation of the Lifshitz energy and derivative checks.

The reference integrates in SI variables on a fixed uniform grid with
composite Gauss-Legendre rules, reusing only the public Fresnel functions. It
shares no integration code with the adaptive engine, so agreement between the
two is a real check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import C, K_B, UM, matsubara_frequency
from .lifshitz import (
    DEFAULT_CONFIG,
    HalfSpacePair,
    ThermalGap,
    energy_per_area,
    pressure,
    pressure_gradient,
)
from .materials import PERFECT, builtin_material
from .constants import HBAR
from .reflection import fresnel_te, fresnel_tm

Y_MAX = 60.0
MATSUBARA_CUTOFF = 50.0  # in units of c / (2a)
N_PANELS = 20000
_GL_X, _GL_W = np.polynomial.legendre.leggauss(4)

ZETA3 = 1.2020569031595942853997


def zeta3_zero_mode_energy(tg):
    """Energy of the half-weighted l = 0 term for a Drude pair, -k_B T zeta(3) / (16 pi a^2)."""
    return -K_B * tg.T * ZETA3 / (16.0 * math.pi * tg.a**2)


def ideal_pressure(a):
    """T = 0 perfect-conductor pressure -pi^2 hbar c / (240 a^4)."""
    return -math.pi**2 * HBAR * C / (240.0 * a**4)


def ideal_pressure_gradient(a):
    return math.pi**2 * HBAR * C / (60.0 * a**5)


def _composite_nodes(lo, hi, n):
    edges = np.linspace(lo, hi, n + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    weights = (half[:, None] * _GL_W[None, :]).ravel()
    return nodes, weights


def _reference_term(pair, a, xi):
    """int_0^inf k dk sum_pol log(1 - r1 r2 exp(-2 a q)) for one Matsubara frequency."""
    y_lo = 2.0 * a * xi / C
    if y_lo >= Y_MAX:
        return 0.0
    y, w = _composite_nodes(y_lo, Y_MAX, N_PANELS)
    q = y / (2.0 * a)
    k = np.sqrt(np.maximum(q**2 - (xi / C) ** 2, 0.0))
    k = np.where(k > 0, k, np.finfo(float).tiny)
    decay = np.exp(-y)
    total = np.zeros_like(y)
    for coeff in (fresnel_te, fresnel_tm):
        rr = coeff(pair.side_1, xi, k) * coeff(pair.side_2, xi, k)
        total += np.log1p(-rr * decay)
    # k dk = q dq and q dq = y dy / (4 a^2)
    return float(np.sum(w * y * total)) / (4.0 * a**2)


def reference_energy_per_area(pair, tg):
    """Brute-force E_PP(a): fixed grid in y, hard Matsubara cutoff at 50 c/(2a)."""
    if pair.has_vacuum:
        return 0.0
    total = 0.0
    l = 0
    while True:
        xi = matsubara_frequency(l, tg.T)
        if xi > MATSUBARA_CUTOFF * C / (2.0 * tg.a):
            break
        weight = 0.5 if l == 0 else 1.0
        total += weight * _reference_term(pair, tg.a, xi)
        l += 1
    return K_B * tg.T / (2.0 * math.pi) * total


def finite_difference(f, a, step_frac=1e-4):
    """Central difference (f(a + d) - f(a - d)) / (2 d) with d = step_frac * a."""
    if not 1e-8 < step_frac < 1e-2:
        raise ValueError(f"step_frac must lie in (1e-8, 1e-2), got {step_frac!r}")
    if not a > 0:
        raise ValueError("a must be > 0")
    d = step_frac * a
    return (f(a + d) - f(a - d)) / (2.0 * d)


def _rel(x, ref):
    if ref == 0:
        return abs(x)
    return abs(x - ref) / abs(ref)


@dataclass(frozen=True)
class ValidationPoint:
    a: float
    T: float
    pair: HalfSpacePair


@dataclass
class PointDeviation:
    point: ValidationPoint
    energy: float
    pressure: float
    gradient: float

    @property
    def worst(self):
        return max(self.energy, self.pressure, self.gradient)


@dataclass
class ValidationReport:
    tolerance: float
    rows: list = field(default_factory=list)

    @property
    def max_deviation(self):
        return max((r.worst for r in self.rows), default=0.0)

    @property
    def passed(self):
        return self.max_deviation < self.tolerance or (not self.rows)

    def to_dict(self):
        return {
            "tolerance": self.tolerance,
            "max_deviation": self.max_deviation,
            "passed": self.passed,
            "points": [
                {
                    "gap_um": r.point.a / UM,
                    "temperature_K": r.point.T,
                    "pair": r.point.pair.label(),
                    "energy_rel_dev": r.energy,
                    "pressure_rel_dev": r.pressure,
                    "gradient_rel_dev": r.gradient,
                }
                for r in self.rows
            ],
        }

    def render(self):
        lines = [f"{'pair':>10} {'gap_um':>8} {'T_K':>6} {'energy':>10} {'pressure':>10} {'gradient':>10}"]
        for r in self.rows:
            p = r.point
            lines.append(
                f"{p.pair.label():>10} {p.a / UM:8.3f} {p.T:6.1f} "
                f"{r.energy:10.2e} {r.pressure:10.2e} {r.gradient:10.2e}"
            )
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"max deviation {self.max_deviation:.3e} vs tolerance {self.tolerance:.1e}: {verdict}")
        return "\n".join(lines)


def check_point(point, cfg=DEFAULT_CONFIG, step_frac=1e-4):
    """Relative deviations of the engine from the reference and from its own derivatives.

    Energy is compared with the brute-force reference; pressure with minus the
    central difference of the engine energy; gradient with the central
    difference of the engine pressure.
    """
    pair, T = point.pair, point.T
    tg = ThermalGap(point.a, T)
    e = energy_per_area(pair, tg, cfg).value
    e_ref = reference_energy_per_area(pair, tg)
    p = pressure(pair, tg, cfg).value
    g = pressure_gradient(pair, tg, cfg).value
    dE = finite_difference(lambda a: energy_per_area(pair, ThermalGap(a, T), cfg).value, point.a, step_frac)
    dP = finite_difference(lambda a: pressure(pair, ThermalGap(a, T), cfg).value, point.a, step_frac)
    return PointDeviation(point, _rel(e, e_ref), _rel(p, -dE), _rel(g, dP))


DEFAULT_GRID_UM = (0.59, 1.0, 1.7, 2.5, 3.3)


def default_points(T=300.0):
    pair = HalfSpacePair(builtin_material("Al"), builtin_material("Au"))
    return [ValidationPoint(x * UM, T, pair) for x in DEFAULT_GRID_UM]


def validate_engine(points, tolerance=1e-6, cfg=DEFAULT_CONFIG):
    """Run every point and collect the deviations in input order."""
    if not points:
        raise ValueError("validate_engine needs at least one point")
    report = ValidationReport(tolerance)
    for pt in points:
        report.rows.append(check_point(pt, cfg))
    return report


def validate_perfect_conductor(a=0.3 * UM, T=300.0, tolerance=0.01, cfg=DEFAULT_CONFIG):
    """Engine pressure for two perfect conductors against the T = 0 closed form."""
    pair = HalfSpacePair(PERFECT, PERFECT)
    p = pressure(pair, ThermalGap(a, T), cfg).value
    dev = _rel(p, ideal_pressure(a))
    return dev, dev < tolerance
