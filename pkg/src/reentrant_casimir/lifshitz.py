"""Plane-parallel Casimir energy, pressure and pressure gradient at finite T.

The Lifshitz formula is evaluated as a primed Matsubara sum of integrals over
the axial momentum ``q``. Pressure and gradient come from differentiating the
integrand analytically with respect to the gap, not from finite differences:

    E  = (k_B T / 2 pi) sum' int q dq    sum_pol log(1 - u)
    F  = -(k_B T / pi)  sum' int q^2 dq  sum_pol u / (1 - u)
    F' = (2 k_B T / pi) sum' int q^3 dq  sum_pol u / (1 - u)^2

with ``u = r1 r2 exp(-2 a q)``. After ``y = 2 a q`` all three share the
prefactor ``k_B T / (8 pi a^(p+1))`` with p = 1, 2, 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .constants import C, K_B, first_matsubara_frequency
from .errors import ConvergenceError, DomainError
from .materials import MaterialModel, susceptibility

KINDS = {"energy": K.ENERGY, "pressure": K.PRESSURE, "gradient": K.GRADIENT}
_SIGN = {K.ENERGY: 1.0, K.PRESSURE: -1.0, K.GRADIENT: 1.0}


@dataclass(frozen=True)
class HalfSpacePair:
    side_1: MaterialModel  # post
    side_2: MaterialModel  # membrane coating

    @property
    def has_vacuum(self):
        return self.side_1.is_vacuum or self.side_2.is_vacuum

    def label(self):
        return f"{self.side_2.name}-{self.side_1.name}"


@dataclass(frozen=True)
class ThermalGap:
    a: float  # gap, m
    T: float  # temperature, K

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"gap must be > 0, got {self.a!r}")
        if not self.T > 0:
            raise DomainError(f"temperature must be > 0, got {self.T!r}")


@dataclass(frozen=True)
class EngineConfig:
    quad_rel_tol: float = 1e-9
    matsubara_rel_tol: float = 1e-10
    l_max_cap: int = 2000
    quad_max_subdivisions: int = 200

    def __post_init__(self):
        for name in ("quad_rel_tol", "matsubara_rel_tol"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise DomainError(f"{name} must lie in (0, 1), got {v!r}")
        for name in ("l_max_cap", "quad_max_subdivisions"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise DomainError(f"{name} must be an integer >= 1, got {v!r}")


DEFAULT_CONFIG = EngineConfig()


@dataclass(frozen=True)
class LifshitzResult:
    value: float
    est_error: float
    n_matsubara: int
    n_evals: int
    kind: str = field(default="energy")


def _material_code(m):
    if m.is_vacuum:
        return K.VACUUM_CODE
    if m.is_perfect_conductor:
        return K.PC_CODE
    return K.DRUDE_CODE


@lru_cache(maxsize=256)
def susceptibility_table(material, T, l_max):
    """``eps(i xi_l) - 1`` for l = 0..l_max (entry 0 unused).

    Depends only on the material and temperature, so one table serves every
    gap of a sweep. The array is read-only; filling the cache twice from two
    threads yields identical tables, so no locking is needed.
    """
    table = np.zeros(l_max + 1)
    if material.is_drude and l_max >= 1:
        xi = first_matsubara_frequency(T) * np.arange(1, l_max + 1)
        table[1:] = susceptibility(material, xi)
    table.flags.writeable = False
    return table


def warm_cache(pair, T, cfg=DEFAULT_CONFIG):
    for m in (pair.side_1, pair.side_2):
        susceptibility_table(m, T, cfg.l_max_cap)


def _prefactor(kind, a, T):
    return _SIGN[kind] * K_B * T / (8.0 * math.pi * a ** (kind + 2))


def _y1(tg):
    return 2.0 * tg.a * first_matsubara_frequency(tg.T) / C


def _evaluate(pair, tg, cfg, kind_name):
    kind = KINDS[kind_name]
    if pair.has_vacuum:
        return LifshitzResult(0.0, 0.0, 1, 0, kind_name)
    tab_1 = susceptibility_table(pair.side_1, tg.T, cfg.l_max_cap)
    tab_2 = susceptibility_table(pair.side_2, tg.T, cfg.l_max_cap)
    total, err, n_terms, n_evals, status = K.matsubara_sum(
        kind, _y1(tg),
        _material_code(pair.side_1), tab_1,
        _material_code(pair.side_2), tab_2,
        cfg.quad_rel_tol, cfg.matsubara_rel_tol, int(cfg.l_max_cap), int(cfg.quad_max_subdivisions),
    )
    pref = _prefactor(kind, tg.a, tg.T)
    result = LifshitzResult(float(pref * total), float(abs(pref) * err), int(n_terms), int(n_evals), kind_name)
    if status == K.MATSUBARA_CAP:
        raise ConvergenceError(
            f"Matsubara sum not converged within l_max_cap={cfg.l_max_cap} "
            f"(a={tg.a:g} m, T={tg.T:g} K)", result)
    if status == K.QUADRATURE_CAP:
        raise ConvergenceError(
            f"quadrature exceeded {cfg.quad_max_subdivisions} subdivisions at Matsubara term "
            f"{n_terms - 1} (a={tg.a:g} m, T={tg.T:g} K)", result)
    return result


def energy_per_area(pair, tg, cfg=DEFAULT_CONFIG):
    """Casimir energy per unit area E_PP(a) in J/m^2 (negative for attraction)."""
    return _evaluate(pair, tg, cfg, "energy")


def pressure(pair, tg, cfg=DEFAULT_CONFIG):
    """Casimir pressure F_PP(a) = -dE_PP/da in N/m^2 (negative for attraction)."""
    return _evaluate(pair, tg, cfg, "pressure")


def pressure_gradient(pair, tg, cfg=DEFAULT_CONFIG):
    """dF_PP/da in N/m^3; positive for attracting metals."""
    return _evaluate(pair, tg, cfg, "gradient")


def evaluate(pair, tg, kind, cfg=DEFAULT_CONFIG):
    return _evaluate(pair, tg, cfg, kind)


def matsubara_term(pair, tg, l, cfg=DEFAULT_CONFIG, kind="energy"):
    """Contribution of the single Matsubara index ``l``, half-weighted at l = 0."""
    if l < 0:
        raise DomainError(f"Matsubara index must be >= 0, got {l!r}")
    k = KINDS[kind]
    if pair.has_vacuum:
        return 0.0
    y1 = _y1(tg)
    em1 = [float(susceptibility(m, l * first_matsubara_frequency(tg.T))) if (m.is_drude and l > 0) else 0.0
           for m in (pair.side_1, pair.side_2)]
    val, err, _, ok = K.term_integral(
        k, l * y1, _material_code(pair.side_1), em1[0], _material_code(pair.side_2), em1[1],
        l == 0, cfg.quad_rel_tol, int(cfg.quad_max_subdivisions))
    if not ok:
        raise ConvergenceError(f"quadrature failed for Matsubara term {l}")
    weight = 0.5 if l == 0 else 1.0
    return float(weight * _prefactor(k, tg.a, tg.T) * val)


def dominant_frequency(tg):
    """Characteristic imaginary frequency c / (2a) of the modes that matter at gap a."""
    return C / (2.0 * tg.a)
