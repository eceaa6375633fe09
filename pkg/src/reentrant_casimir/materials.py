"""Dielectric response on the imaginary frequency axis.

Three kinds of half-space are supported: Drude metals, the ideal perfect
conductor and empty space. A plasma-model metal can be emulated with a Drude
model whose relaxation frequency is tiny.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import C, ev_to_angular_frequency, angular_frequency_to_ev
from .errors import DomainError, UnsupportedModelError

DRUDE = "drude"
PERFECT_CONDUCTOR = "pc"
VACUUM = "vacuum"


@dataclass(frozen=True)
class DrudeParams:
    omega_p: float  # plasma frequency, rad/s
    gamma: float  # relaxation frequency, rad/s

    def __post_init__(self):
        if not (self.omega_p > 0 and self.gamma > 0):
            raise DomainError(
                f"Drude parameters must be positive, got omega_p={self.omega_p!r}, "
                f"gamma={self.gamma!r}"
            )

    @classmethod
    def from_ev(cls, omega_ev, gamma_ev):
        return cls(ev_to_angular_frequency(omega_ev), ev_to_angular_frequency(gamma_ev))


@dataclass(frozen=True)
class MaterialModel:
    name: str
    kind: str
    drude: DrudeParams | None = None

    def __post_init__(self):
        if self.kind not in (DRUDE, PERFECT_CONDUCTOR, VACUUM):
            raise ValueError(f"unknown material kind {self.kind!r}")
        if (self.kind == DRUDE) != (self.drude is not None):
            raise ValueError("Drude parameters are required for, and only for, kind='drude'")

    @property
    def is_drude(self):
        return self.kind == DRUDE

    @property
    def is_perfect_conductor(self):
        return self.kind == PERFECT_CONDUCTOR

    @property
    def is_vacuum(self):
        return self.kind == VACUUM

    def describe(self):
        if self.is_drude:
            return (
                f"{self.name}: Drude, Omega = {angular_frequency_to_ev(self.drude.omega_p):g} eV/hbar, "
                f"gamma = {angular_frequency_to_ev(self.drude.gamma):g} eV/hbar"
            )
        if self.is_perfect_conductor:
            return f"{self.name}: perfect conductor"
        return f"{self.name}: vacuum"


def drude(name, omega_ev, gamma_ev):
    """Drude metal with parameters given in eV/hbar."""
    return MaterialModel(name, DRUDE, DrudeParams.from_ev(omega_ev, gamma_ev))


# Plasma and relaxation frequencies in eV/hbar.
DRUDE_TABLE = {
    "Au": (9.0, 0.035),
    "Nb": (9.9, 0.2),
    "Al": (13.0, 0.1),
}

PERFECT = MaterialModel("PC", PERFECT_CONDUCTOR)
EMPTY = MaterialModel("vacuum", VACUUM)

BUILTIN_NAMES = ("Au", "Nb", "Al", "PC", "vacuum")


def builtin_material(name):
    """Look up a built-in material by case-insensitive name."""
    key = name.strip().lower()
    for label, (omega, gamma) in DRUDE_TABLE.items():
        if key == label.lower():
            return drude(label, omega, gamma)
    if key == "pc":
        return PERFECT
    if key == "vacuum":
        return EMPTY
    raise KeyError(f"unknown material {name!r}; built-in materials are {', '.join(BUILTIN_NAMES)}")


def _require_positive(xi):
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(~(xi_arr > 0)):
        raise DomainError("permittivity is defined here only for xi > 0; use the zero-frequency limits at xi = 0")
    return xi_arr


def susceptibility(m, xi):
    """``eps(i xi) - 1``, kept separate because it can be far below rounding of eps."""
    if m.is_perfect_conductor:
        raise UnsupportedModelError("perfect conductor has no finite permittivity")
    xi_arr = _require_positive(xi)
    if m.is_vacuum:
        out = np.zeros_like(xi_arr)
    else:
        p = m.drude
        out = p.omega_p**2 / (xi_arr * (xi_arr + p.gamma))
    return out if out.ndim else float(out)


def permittivity(m, xi):
    """Relative permittivity ``eps(i xi)`` for Drude or vacuum, ``xi`` in rad/s."""
    return 1.0 + susceptibility(m, xi)


def penetration_depth(m):
    """Plasma penetration depth ``c / Omega`` of a Drude metal, in metres."""
    if not m.is_drude:
        raise UnsupportedModelError(f"penetration depth needs a Drude model, got {m.kind!r}")
    return C / m.drude.omega_p
