"""Thermal Casimir spring constant of a narrow-gap re-entrant cavity."""

from .constants import (
    CODATA2018,
    PhysicalConstants,
    ev_to_angular_frequency,
    matsubara_frequency,
    thermal_wavelength,
)
from .errors import ConfigError, ConvergenceError, DomainError, UnsupportedModelError
from .lifshitz import (
    EngineConfig,
    HalfSpacePair,
    LifshitzResult,
    ThermalGap,
    dominant_frequency,
    energy_per_area,
    matsubara_term,
    pressure,
    pressure_gradient,
)
from .materials import DrudeParams, MaterialModel, builtin_material, penetration_depth, permittivity
from .pfa import (
    ReentrantGeometry,
    SpringResult,
    casimir_force_cap_only,
    spring_constant_cap_only,
    spring_constant_full,
    spring_constant_perfect_conductor,
)
from .reflection import fresnel_te, fresnel_tm, zero_frequency_limits
from .sweep import SweepSpec, emit_csv, parse_config, run_sweep

__version__ = "0.1.0"
