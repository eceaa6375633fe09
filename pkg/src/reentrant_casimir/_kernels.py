"""Inner loops of the Lifshitz engine.

Every function here is plain numpy code. When numba is importable and the
environment variable ``REENTRANT_CASIMIR_JIT`` is not set to ``0`` they are
compiled with ``numba.njit(nogil=True)``; otherwise they run as ordinary
Python, which is slower but gives identical results.

The integrals are written in the dimensionless variable ``y = 2 a q`` on
``[y_l, inf)`` with ``y_l = 2 a xi_l / c``. In these units the axial momenta
are ``q -> y`` and ``s -> sqrt(y**2 + (eps - 1) * y_l**2)``.

Setting ``REENTRANT_CASIMIR_DEBUG=1`` checks ``0 <= u < 1`` on every quadrature
node and raises ``FloatingPointError`` otherwise (compiled kernels are then
not cached on disk, since the flag is baked in at compile time).

``kind`` selects the integrand: 0 energy ``y log(1-u)``, 1 pressure
``y**2 u/(1-u)``, 2 gradient ``y**3 u/(1-u)**2``; each summed over TE and TM.
Material codes: 0 vacuum, 1 Drude, 2 perfect conductor.
"""

from __future__ import annotations

import math
import os

import numpy as np

ENERGY, PRESSURE, GRADIENT = 0, 1, 2
VACUUM_CODE, DRUDE_CODE, PC_CODE = 0, 1, 2

# status codes returned by matsubara_sum
OK, MATSUBARA_CAP, QUADRATURE_CAP = 0, 1, 2

_FLAG = os.environ.get("REENTRANT_CASIMIR_JIT", "1").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

JIT_ENABLED = numba is not None and _FLAG not in ("0", "false", "no", "off")
BACKEND = "numba" if JIT_ENABLED else "numpy"
DEBUG_CHECKS = os.environ.get("REENTRANT_CASIMIR_DEBUG", "0").strip() not in ("", "0")


def _maybe_jit(fn):
    if JIT_ENABLED:
        return numba.njit(cache=not DEBUG_CHECKS, nogil=True)(fn)
    return fn


# 15-point Kronrod nodes on [-1, 1] with the embedded 7-point Gauss weights
# (zero at the Kronrod-only nodes).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate((-_XGK[:7], _XGK[::-1]))
KRONROD_WEIGHTS = np.concatenate((_WGK[:7], _WGK[::-1]))
GAUSS_WEIGHTS = np.concatenate((_WG[:7], _WG[::-1]))
N_NODES = 15


@_maybe_jit
def reflection(code, em1, yl, y, is_zero):
    """(r_TE, r_TM) on the nodes ``y`` for one half-space."""
    if code == VACUUM_CODE:
        return np.zeros_like(y), np.zeros_like(y)
    if code == PC_CODE:
        return np.full_like(y, -1.0), np.full_like(y, 1.0)
    if is_zero:
        return np.zeros_like(y), np.ones_like(y)
    yl2 = yl * yl
    s = np.sqrt(y * y + em1 * yl2)
    eps = 1.0 + em1
    # difference-free forms of (q - s)/(q + s) and (eps q - s)/(eps q + s)
    r_te = -em1 * yl2 / ((y + s) * (y + s))
    d = eps * y + s
    r_tm = em1 * ((eps + 1.0) * y * y - yl2) / (d * d)
    return r_te, r_tm


@_maybe_jit
def polarization_term(kind, y, rr, ey, emy):
    # 1 - rr e^{-y} written to stay accurate when rr = 1 and y -> 0
    omu = (1.0 - rr) - rr * emy
    u = rr * ey
    if DEBUG_CHECKS:
        if np.any(u < 0.0) or np.any(u >= 1.0):
            raise FloatingPointError("integrand bound 0 <= r1 r2 exp(-y) < 1 violated")
    if kind == ENERGY:
        # log(omu) loses digits once u is small; log1p(-u) does not
        return y * np.where(u < 0.5, np.log1p(-u), np.log(omu))
    if kind == PRESSURE:
        return y * y * u / omu
    return y * y * y * u / (omu * omu)


@_maybe_jit
def integrand(kind, y, yl, code_a, em1_a, code_b, em1_b, is_zero):
    te_a, tm_a = reflection(code_a, em1_a, yl, y, is_zero)
    te_b, tm_b = reflection(code_b, em1_b, yl, y, is_zero)
    ey = np.exp(-y)
    emy = np.expm1(-y)
    return (polarization_term(kind, y, te_a * te_b, ey, emy)
            + polarization_term(kind, y, tm_a * tm_b, ey, emy))


@_maybe_jit
def gauss_kronrod(kind, lo, hi, yl, code_a, em1_a, code_b, em1_b, is_zero):
    """K15 estimate on [lo, hi] and |K15 - G7| as its error."""
    half = 0.5 * (hi - lo)
    y = 0.5 * (hi + lo) + half * NODES
    f = integrand(kind, y, yl, code_a, em1_a, code_b, em1_b, is_zero)
    res_k = half * np.sum(KRONROD_WEIGHTS * f)
    res_g = half * np.sum(GAUSS_WEIGHTS * f)
    return res_k, abs(res_k - res_g)


@_maybe_jit
def upper_gamma(p, x):
    """Gamma(p + 1, x) for integer p >= 0."""
    acc = 0.0
    term = 1.0
    fact = 1.0
    for j in range(p + 1):
        if j > 0:
            term *= x / j
            fact *= j
        acc += term
    return fact * math.exp(-x) * acc


@_maybe_jit
def tail_bound(kind, y0):
    """Bound on the TE+TM integral over [y0, inf) from |r1 r2| <= 1.

    With u <= e^{-y}: |log(1-u)| <= u/(1-u) <= e^{-y}/(1-e^{-y0}), and
    u/(1-u)**2 <= e^{-y}/(1-e^{-y0})**2.
    """
    damp = -math.expm1(-y0)
    if kind == GRADIENT:
        damp = damp * damp
    return 2.0 * upper_gamma(kind + 1, y0) / damp


@_maybe_jit
def adaptive_panel(kind, lo, hi, yl, code_a, em1_a, code_b, em1_b, is_zero,
                   total_before, rel_tol, budget):
    """Bisect the worst subinterval until the panel meets its share of the tolerance.

    Returns (result, error, subdivisions used, evaluations, converged).
    """
    cap = budget + 1
    lo_s = np.empty(cap)
    hi_s = np.empty(cap)
    res_s = np.empty(cap)
    err_s = np.empty(cap)
    r, e = gauss_kronrod(kind, lo, hi, yl, code_a, em1_a, code_b, em1_b, is_zero)
    lo_s[0] = lo
    hi_s[0] = hi
    res_s[0] = r
    err_s[0] = e
    n = 1
    res = r
    err = e
    evals = N_NODES
    while err > 0.5 * rel_tol * (abs(total_before) + abs(res)):
        if n >= cap:
            return res, err, n - 1, evals, False
        i = np.argmax(err_s[:n])
        mid = 0.5 * (lo_s[i] + hi_s[i])
        r1, e1 = gauss_kronrod(kind, lo_s[i], mid, yl, code_a, em1_a, code_b, em1_b, is_zero)
        r2, e2 = gauss_kronrod(kind, mid, hi_s[i], yl, code_a, em1_a, code_b, em1_b, is_zero)
        evals += 2 * N_NODES
        lo_s[n] = mid
        hi_s[n] = hi_s[i]
        res_s[n] = r2
        err_s[n] = e2
        hi_s[i] = mid
        res_s[i] = r1
        err_s[i] = e1
        n += 1
        res = np.sum(res_s[:n])
        err = np.sum(err_s[:n])
    return res, err, n - 1, evals, True


@_maybe_jit
def term_integral(kind, yl, code_a, em1_a, code_b, em1_b, is_zero, rel_tol, max_sub):
    """Integral over [yl, inf) on geometric panels with an analytic tail bound.

    Panel edges sit at m + 1, m + 2, m + 4, ... with m = max(yl, 1).
    Returns (value, error, evaluations, converged).
    """
    m = max(yl, 1.0)
    lo = yl
    step = 1.0
    total = 0.0
    err = 0.0
    evals = 0
    used = 0
    for _ in range(64):
        hi = m + step
        r, e, u, ev, ok = adaptive_panel(kind, lo, hi, yl, code_a, em1_a, code_b, em1_b,
                                         is_zero, total, rel_tol, max_sub - used)
        total += r
        err += e
        used += u
        evals += ev
        if not ok:
            return total, err, evals, False
        tail = tail_bound(kind, hi)
        if tail <= 0.5 * rel_tol * abs(total):
            return total, err + tail, evals, True
        lo = hi
        step *= 2.0
    return total, err + tail_bound(kind, lo), evals, False


@_maybe_jit
def matsubara_tail(kind, y1, l_last):
    """Bound on the sum of all Matsubara terms beyond ``l_last``."""
    acc = 0.0
    l = l_last + 1
    while True:
        b = tail_bound(kind, l * y1)
        acc += b
        if b <= 1e-6 * acc or l > l_last + 100000:
            return acc
        l += 1


@_maybe_jit
def matsubara_sum(kind, y1, code_a, em1_a, code_b, em1_b,
                  quad_rel_tol, matsubara_rel_tol, l_max_cap, max_sub):
    """Primed Matsubara sum of the dimensionless term integrals.

    ``y1 = 2 a xi_1 / c``; ``em1_a[l]`` and ``em1_b[l]`` hold eps(i xi_l) - 1.
    Terms are added strictly in order of l, so the result does not depend on
    how callers schedule independent evaluations.
    Returns (sum, error, terms used, evaluations, status).
    """
    total = 0.0
    err = 0.0
    evals = 0
    small = 0
    for l in range(l_max_cap + 1):
        yl = l * y1
        t, e, ev, ok = term_integral(kind, yl, code_a, em1_a[l], code_b, em1_b[l],
                                     l == 0, quad_rel_tol, max_sub)
        w = 0.5 if l == 0 else 1.0
        total += w * t
        err += w * e
        evals += ev
        if not ok:
            return total, err, l + 1, evals, QUADRATURE_CAP
        if l >= 1 and abs(w * t) <= matsubara_rel_tol * abs(total):
            small += 1
        else:
            small = 0
        if small >= 3 and yl > 5.0:
            return total, err + matsubara_tail(kind, y1, l), l + 1, evals, OK
    return total, err, l_max_cap + 1, evals, MATSUBARA_CAP
