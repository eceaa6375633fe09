"""Sweep configuration, the parallel gap sweep and CSV output."""

from __future__ import annotations

import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import UM
from .errors import ConfigError, ConvergenceError
from .lifshitz import EngineConfig, HalfSpacePair, warm_cache
from .materials import BUILTIN_NAMES, builtin_material, drude
from .pfa import (
    CAP_ONLY,
    FULL,
    ReentrantGeometry,
    membrane_spring_constant,
    spring_constant,
    spring_constant_perfect_conductor,
)

log = logging.getLogger(__name__)

GAP_RANGE_UM = (0.59, 3.3)

_FLOAT_KEYS = {"gap_min_um", "gap_max_um", "temperature_K", "r0_um", "r1_um", "h_um",
               "quad_rel_tol", "matsubara_rel_tol"}
_INT_KEYS = {"n_points", "l_max_cap", "workers", "quad_max_subdivisions"}
_STR_KEYS = {"spacing", "post_material", "formula"}
_LIST_KEYS = {"coatings"}
_BOOL_KEYS = {"include_pc_curve"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | _LIST_KEYS | _BOOL_KEYS


@dataclass(frozen=True)
class SweepSpec:
    gap_min: float = GAP_RANGE_UM[0] * UM
    gap_max: float = GAP_RANGE_UM[1] * UM
    n_points: int = 50
    spacing: str = "log"
    coatings: tuple = ("Au", "Nb")
    post_material: str = "Al"
    temperature: float = 300.0
    geometry: ReentrantGeometry = ReentrantGeometry()
    formula: str = CAP_ONLY
    include_pc_curve: bool = True
    engine: EngineConfig = EngineConfig()
    workers: int = 0
    custom_materials: dict = field(default_factory=dict, hash=False, compare=False)

    def material(self, name):
        if name in self.custom_materials:
            return self.custom_materials[name]
        return builtin_material(name)

    def gaps(self):
        if self.spacing == "log":
            return np.geomspace(self.gap_min, self.gap_max, self.n_points)
        return np.linspace(self.gap_min, self.gap_max, self.n_points)

    def resolved_workers(self):
        return self.workers if self.workers > 0 else (os.cpu_count() or 1)


def _parse_bool(key, raw):
    v = raw.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {raw!r}")


def read_key_values(text):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        out[key] = value
    return out


def spec_from_mapping(values):
    """Build a SweepSpec from raw string values; lengths in um, Drude parameters in eV/hbar."""
    fields = {}
    custom = {}
    custom_raw = {}
    for key, raw in values.items():
        if key.startswith("material."):
            parts = key.split(".")
            if len(parts) != 3 or parts[2] not in ("omega_eV", "gamma_eV"):
                raise ConfigError(f"unknown key {key!r}; custom materials use material.<name>.omega_eV / .gamma_eV")
            try:
                custom_raw.setdefault(parts[1], {})[parts[2]] = float(raw)
            except ValueError:
                raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
            continue
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}")
        try:
            if key in _FLOAT_KEYS:
                fields[key] = float(raw)
            elif key in _INT_KEYS:
                fields[key] = int(raw)
            elif key in _BOOL_KEYS:
                fields[key] = _parse_bool(key, raw)
            elif key in _LIST_KEYS:
                fields[key] = tuple(s.strip() for s in raw.split(",") if s.strip())
            else:
                fields[key] = raw.strip()
        except ConfigError:
            raise
        except ValueError:
            raise ConfigError(f"{key}: cannot parse {raw!r}") from None

    for name, params in custom_raw.items():
        if set(params) != {"omega_eV", "gamma_eV"}:
            raise ConfigError(f"material.{name}: both omega_eV and gamma_eV are required")
        if params["omega_eV"] <= 0 or params["gamma_eV"] <= 0:
            raise ConfigError(f"material.{name}: omega_eV > 0 and gamma_eV > 0 violated")
        custom[name] = drude(name, params["omega_eV"], params["gamma_eV"])

    d = SweepSpec()
    geom_d = d.geometry
    eng_d = d.engine
    gap_min = fields.get("gap_min_um", d.gap_min / UM) * UM
    gap_max = fields.get("gap_max_um", d.gap_max / UM) * UM
    if not gap_min > 0:
        raise ConfigError("gap_min_um: gap_min > 0 violated")
    if not gap_min < gap_max:
        raise ConfigError("gap_min < gap_max violated")
    n_points = fields.get("n_points", d.n_points)
    if n_points < 2:
        raise ConfigError("n_points: n_points >= 2 violated")
    spacing = fields.get("spacing", d.spacing)
    if spacing not in ("log", "linear"):
        raise ConfigError(f"spacing: must be 'log' or 'linear', got {spacing!r}")
    coatings = fields.get("coatings", d.coatings)
    if not coatings:
        raise ConfigError("coatings: at least one coating required")
    post = fields.get("post_material", d.post_material)
    for name in (*coatings, post):
        if name in custom:
            continue
        try:
            builtin_material(name)
        except KeyError:
            raise ConfigError(
                f"unknown material {name!r}; built-in materials are {', '.join(BUILTIN_NAMES)}"
            ) from None
    temperature = fields.get("temperature_K", d.temperature)
    if not temperature > 0:
        raise ConfigError("temperature_K: temperature > 0 violated")
    formula = fields.get("formula", d.formula)
    if formula not in (CAP_ONLY, FULL):
        raise ConfigError(f"formula: must be {CAP_ONLY!r} or {FULL!r}, got {formula!r}")
    workers = fields.get("workers", d.workers)
    if workers < 0:
        raise ConfigError("workers: workers >= 0 violated")
    try:
        geometry = ReentrantGeometry(
            fields.get("r0_um", geom_d.r0 / UM) * UM,
            fields.get("r1_um", geom_d.r1 / UM) * UM,
            fields.get("h_um", geom_d.h / UM) * UM,
        )
        engine = EngineConfig(
            fields.get("quad_rel_tol", eng_d.quad_rel_tol),
            fields.get("matsubara_rel_tol", eng_d.matsubara_rel_tol),
            fields.get("l_max_cap", eng_d.l_max_cap),
            fields.get("quad_max_subdivisions", eng_d.quad_max_subdivisions),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return SweepSpec(gap_min, gap_max, n_points, spacing, tuple(coatings), post, temperature,
                     geometry, formula, fields.get("include_pc_curve", d.include_pc_curve),
                     engine, workers, custom)


def parse_config(text, overrides=None):
    """Parse a config document; ``overrides`` (same keys) take precedence over the file."""
    values = read_key_values(text)
    if overrides:
        values.update(overrides)
    return spec_from_mapping(values)


@dataclass
class SweepRow:
    x: float
    k_C: dict  # coating -> N/m (nan if the point failed)
    est_error: dict
    k_C_pc: float | None = None
    ratio: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    @property
    def valid(self):
        return not self.failures


@dataclass
class SweepTiming:
    wall_time: float
    n_points: int
    n_evaluations: int
    workers: int
    backend: str

    @property
    def evals_per_point(self):
        return self.n_evaluations / max(self.n_points, 1)

    def summary(self):
        return (f"{self.n_points} gap points x coatings in {self.wall_time:.3f} s "
                f"with {self.workers} worker(s) [{self.backend}]; "
                f"{self.n_evaluations} integrand evaluations ({self.evals_per_point:.0f} per point)")


@dataclass
class SweepOutcome:
    rows: list
    timing: SweepTiming

    @property
    def ok(self):
        return all(r.valid for r in self.rows)


def _point_task(args):
    spec, pair, coating, x = args
    try:
        res = spring_constant(spec.geometry, pair, x, spec.temperature, spec.formula, spec.engine)
    except ConvergenceError as exc:
        return coating, x, None, str(exc)
    return coating, x, res, None


def run_sweep(spec):
    """Evaluate every (coating, gap) point; rows come back sorted by gap.

    Failed points are kept in their row with nan values and a message instead
    of aborting the sweep.
    """
    from . import _kernels

    gaps = spec.gaps()
    post = spec.material(spec.post_material)
    pairs = {c: HalfSpacePair(post, spec.material(c)) for c in spec.coatings}
    for pair in pairs.values():
        warm_cache(pair, spec.temperature, spec.engine)

    tasks = [(spec, pairs[c], c, float(x)) for c in spec.coatings for x in gaps]
    workers = spec.resolved_workers()
    t0 = time.perf_counter()
    if workers == 1:
        results = [_point_task(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_point_task, tasks))
    wall = time.perf_counter() - t0

    by_key = {(c, x): (res, err) for c, x, res, err in results}
    rows = []
    n_evals = 0
    for x in gaps:
        x = float(x)
        row = SweepRow(x, {}, {})
        for c in spec.coatings:
            res, err = by_key[(c, x)]
            if res is None:
                row.k_C[c] = math.nan
                row.est_error[c] = math.nan
                row.failures[c] = err
                log.warning("point failed: coating=%s x=%.6g um: %s", c, x / UM, err)
            else:
                row.k_C[c] = res.k_C
                row.est_error[c] = res.est_error
                n_evals += res.n_evals
            k_s = membrane_spring_constant(c)
            if k_s is not None:
                row.ratio[c] = row.k_C[c] / k_s
        if spec.include_pc_curve:
            row.k_C_pc = spring_constant_perfect_conductor(spec.geometry, x).k_C
        rows.append(row)

    timing = SweepTiming(wall, len(tasks), n_evals, workers, _kernels.BACKEND)
    log.info(timing.summary())
    return SweepOutcome(rows, timing)


def format_number(v):
    """Shortest scientific representation that round-trips exactly."""
    if math.isnan(v):
        return "nan"
    return np.format_float_scientific(v, unique=True, trim="-")


def csv_header(coatings, include_pc, ratio_coatings):
    cols = ["x_um"]
    for c in coatings:
        cols += [f"kC_{c}_N_per_m", f"err_{c}"]
    if include_pc:
        cols.append("kC_pc_N_per_m")
    cols += [f"ratio_{c}_kS" for c in ratio_coatings]
    return cols


def emit_csv(rows):
    """CSV text with one line per gap, LF line endings."""
    if not rows:
        raise ValueError("emit_csv needs at least one row")
    coatings = list(rows[0].k_C)
    include_pc = rows[0].k_C_pc is not None
    ratio_coatings = [c for c in coatings if c in rows[0].ratio]
    lines = [",".join(csv_header(coatings, include_pc, ratio_coatings))]
    for r in rows:
        vals = [r.x / UM]
        for c in coatings:
            vals += [r.k_C[c], r.est_error[c]]
        if include_pc:
            vals.append(r.k_C_pc)
        vals += [r.ratio[c] for c in ratio_coatings]
        lines.append(",".join(format_number(float(v)) for v in vals))
    return "\n".join(lines) + "\n"


def with_workers(spec, workers):
    return replace(spec, workers=workers)
