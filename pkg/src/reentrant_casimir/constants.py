"""Physical constants (CODATA 2018, exact SI values) and unit conversions.

Everything inside the package is SI. Electron-volts only show up when reading
material tables or config files, via :func:`ev_to_angular_frequency`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.054571817e-34  # J s
    c: float = 299792458.0  # m/s
    k_B: float = 1.380649e-23  # J/K
    eV: float = 1.602176634e-19  # J

    @property
    def hbar_c(self) -> float:
        return self.hbar * self.c


CODATA2018 = PhysicalConstants()

HBAR = CODATA2018.hbar
C = CODATA2018.c
K_B = CODATA2018.k_B
EV = CODATA2018.eV
TWO_PI = 2.0 * math.pi

UM = 1e-6
NM = 1e-9


def ev_to_angular_frequency(e):
    """Convert an energy in eV to the angular frequency ``e / hbar`` in rad/s."""
    if e < 0:
        raise DomainError(f"energy must be >= 0 eV, got {e!r}")
    return e * EV / HBAR


def angular_frequency_to_ev(w):
    return w * HBAR / EV


def _check_temperature(T):
    if not T > 0:
        raise DomainError(f"temperature must be > 0 K, got {T!r}")


def first_matsubara_frequency(T):
    _check_temperature(T)
    return TWO_PI * K_B * T / HBAR


def matsubara_frequency(l, T):
    """Bosonic Matsubara frequency ``2 pi l k_B T / hbar`` in rad/s.

    Always evaluated as ``l * xi_1`` so that integer multiples are exact.
    """
    if l < 0:
        raise DomainError(f"Matsubara index must be >= 0, got {l!r}")
    return l * first_matsubara_frequency(T)


def thermal_wavelength(T):
    """``hbar c / (k_B T)`` in metres."""
    _check_temperature(T)
    return HBAR * C / (K_B * T)
