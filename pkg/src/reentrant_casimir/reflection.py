"""Fresnel coefficients of a vacuum / half-space interface at imaginary frequency.

All functions broadcast over ``xi`` (rad/s) and ``k_perp`` (1/m). Points with
``xi == 0`` take the analytic zero-frequency limits instead of the general
formula, which is 0/0-adjacent there for Drude metals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import C
from .errors import DomainError
from .materials import susceptibility


@dataclass(frozen=True)
class WaveNumbers:
    xi: np.ndarray
    k_perp: np.ndarray
    q: np.ndarray  # vacuum axial momentum
    s: np.ndarray  # axial momentum inside the medium


def zero_frequency_limits(m):
    """``(r_TE, r_TM)`` in the limit xi -> 0+."""
    if m.is_perfect_conductor:
        return -1.0, 1.0
    if m.is_vacuum:
        return 0.0, 0.0
    # Drude: eps ~ 1/xi diverges but eps * xi**2 -> 0, so s -> k_perp.
    return 0.0, 1.0


def _prepare(xi, k_perp):
    xi, k_perp = np.broadcast_arrays(np.asarray(xi, dtype=float), np.asarray(k_perp, dtype=float))
    if np.any(~(k_perp > 0)):
        raise DomainError("k_perp must be > 0")
    if np.any(xi < 0):
        raise DomainError("xi must be >= 0")
    return xi, k_perp


def wave_numbers(m, xi, k_perp):
    """Axial momenta ``q`` and ``s`` for a Drude or vacuum medium (``xi > 0``)."""
    xi, k_perp = _prepare(xi, k_perp)
    k0_sq = (xi / C) ** 2
    q = np.sqrt(k0_sq + k_perp**2)
    # eps xi^2 / c^2 formed without ever building the huge eps at small xi
    s = np.sqrt(k_perp**2 + k0_sq + susceptibility(m, xi) * k0_sq)
    return WaveNumbers(xi, k_perp, q, s)


def _coefficient(m, xi, k_perp, polarization):
    xi, k_perp = _prepare(xi, k_perp)
    r_te0, r_tm0 = zero_frequency_limits(m)
    limit = r_te0 if polarization == "TE" else r_tm0
    if m.is_perfect_conductor:
        out = np.full(xi.shape, limit)
    else:
        out = np.full(xi.shape, limit)
        pos = xi > 0
        if np.any(pos):
            w = wave_numbers(m, xi[pos], k_perp[pos])
            if polarization == "TE":
                out[pos] = (w.q - w.s) / (w.q + w.s)
            else:
                eps = 1.0 + susceptibility(m, w.xi)
                out[pos] = (eps * w.q - w.s) / (eps * w.q + w.s)
    return out if out.ndim else float(out)


def fresnel_te(m, xi, k_perp):
    """TE reflection coefficient ``(q - s) / (q + s)``; -1 for a perfect conductor."""
    return _coefficient(m, xi, k_perp, "TE")


def fresnel_tm(m, xi, k_perp):
    """TM reflection coefficient ``(eps q - s) / (eps q + s)``; +1 for a perfect conductor."""
    return _coefficient(m, xi, k_perp, "TM")
