"""Casimir force and spring constant of the re-entrant cavity via the PFA."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import C, HBAR, UM
from .errors import DomainError
from .lifshitz import (
    DEFAULT_CONFIG,
    ThermalGap,
    energy_per_area,
    pressure,
    pressure_gradient,
)

CAP_ONLY = "cap_only"
FULL = "full"
PERFECT_CONDUCTOR_FORMULA = "pc_closed_form"

# Membrane spring constants (N/m) used as denominators of the headline ratio.
MEMBRANE_SPRING = {"Au": 572.0, "Nb": 949.0}


@dataclass(frozen=True)
class ReentrantGeometry:
    r0: float = 200 * UM  # post cap radius
    r1: float = 300 * UM  # outer step radius
    h: float = 500 * UM  # step height

    def __post_init__(self):
        if not (0 <= self.r0 <= self.r1):
            raise DomainError(f"need 0 <= r0 <= r1, got r0={self.r0!r}, r1={self.r1!r}")
        if not self.h > 0:
            raise DomainError(f"step height must be > 0, got {self.h!r}")

    @property
    def cap_area(self):
        return math.pi * self.r0**2


DEFAULT_GEOMETRY = ReentrantGeometry()


@dataclass
class SpringResult:
    k_C: float  # N/m
    formula: str
    breakdown: dict = field(default_factory=dict)
    F_C: float | None = None
    est_error: float = 0.0
    n_evals: int = 0


def _check_gap(x):
    if not x > 0:
        raise DomainError(f"gap must be > 0, got {x!r}")


def spring_constant_perfect_conductor(geom, x):
    """Closed-form spring constant pi^3 hbar c r0^2 / (60 x^5) of an ideal cavity at T = 0."""
    _check_gap(x)
    k = math.pi**3 * HBAR * C * geom.r0**2 / (60.0 * x**5)
    return SpringResult(k, PERFECT_CONDUCTOR_FORMULA, {"cap": k})


def spring_constant_cap_only(geom, pair, x, T, cfg=DEFAULT_CONFIG):
    """k_C = pi r0^2 F'_PP(x): the flat top of the post only."""
    _check_gap(x)
    g = pressure_gradient(pair, ThermalGap(x, T), cfg)
    k = geom.cap_area * g.value
    return SpringResult(k, CAP_ONLY, {"cap": k}, est_error=geom.cap_area * g.est_error, n_evals=g.n_evals)


def spring_constant_full(geom, pair, x, T, cfg=DEFAULT_CONFIG):
    """Cap term plus the two sidewall terms of the stepped post.

    The sidewall terms need F_PP and E_PP at x and at x + h. When r1 == r0
    both vanish identically and no extra evaluations are made.
    """
    _check_gap(x)
    cap = spring_constant_cap_only(geom, pair, x, T, cfg)
    dr = geom.r1 - geom.r0
    if dr == 0:
        return SpringResult(cap.k_C, FULL, {"cap": cap.k_C, "sidewall_force": 0.0, "sidewall_energy": 0.0},
                            est_error=cap.est_error, n_evals=cap.n_evals)
    near = ThermalGap(x, T)
    far = ThermalGap(x + geom.h, T)
    f_near, f_far = pressure(pair, near, cfg), pressure(pair, far, cfg)
    e_near, e_far = energy_per_area(pair, near, cfg), energy_per_area(pair, far, cfg)
    side_f = 2.0 * math.pi * dr / geom.h * (geom.r1 * f_far.value - geom.r0 * f_near.value)
    side_e = 2.0 * math.pi * dr**2 / geom.h**2 * (e_far.value - e_near.value)
    err = (cap.est_error
           + 2.0 * math.pi * dr / geom.h * (geom.r1 * f_far.est_error + geom.r0 * f_near.est_error)
           + 2.0 * math.pi * dr**2 / geom.h**2 * (e_far.est_error + e_near.est_error))
    evals = cap.n_evals + f_near.n_evals + f_far.n_evals + e_near.n_evals + e_far.n_evals
    total = cap.k_C + side_f + side_e
    return SpringResult(total, FULL, {"cap": cap.k_C, "sidewall_force": side_f, "sidewall_energy": side_e},
                        est_error=err, n_evals=evals)


def spring_constant(geom, pair, x, T, formula=CAP_ONLY, cfg=DEFAULT_CONFIG):
    if formula == CAP_ONLY:
        return spring_constant_cap_only(geom, pair, x, T, cfg)
    if formula == FULL:
        return spring_constant_full(geom, pair, x, T, cfg)
    raise ValueError(f"unknown formula {formula!r}; expected {CAP_ONLY!r} or {FULL!r}")


def casimir_force_cap_only(geom, pair, x, T, cfg=DEFAULT_CONFIG):
    """PFA force on the cap, pi r0^2 F_PP(x), in newtons (negative = attraction)."""
    _check_gap(x)
    return geom.cap_area * pressure(pair, ThermalGap(x, T), cfg).value


def membrane_spring_constant(coating_name):
    """Reference membrane spring constant for Au or Nb coatings, else None."""
    return MEMBRANE_SPRING.get(coating_name)
