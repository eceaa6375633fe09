import math

import numpy as np
import pytest

from reentrant_casimir.constants import UM, ev_to_angular_frequency
from reentrant_casimir.errors import ConfigError
from reentrant_casimir.pfa import spring_constant_perfect_conductor
from reentrant_casimir.sweep import (
    SweepRow,
    SweepSpec,
    emit_csv,
    parse_config,
    read_key_values,
    run_sweep,
    with_workers,
)


def test_empty_document_gives_defaults():
    spec = parse_config("")
    assert spec == SweepSpec()
    assert spec.coatings == ("Au", "Nb")
    assert spec.post_material == "Al"
    assert spec.temperature == 300.0
    assert spec.n_points == 50 and spec.spacing == "log"
    gaps = spec.gaps()
    assert gaps[0] == pytest.approx(0.59 * UM) and gaps[-1] == pytest.approx(3.3 * UM)
    np.testing.assert_allclose(np.diff(np.log(gaps)), np.log(3.3 / 0.59) / 49)


def test_single_override():
    spec = parse_config("temperature_K = 4\n")
    assert spec.temperature == 4.0
    assert spec.coatings == ("Au", "Nb") and spec.n_points == 50


def test_full_document():
    text = """
    # comment line
    gap_min_um = 0.5
    gap_max_um = 2   # trailing comment
    n_points = 7
    spacing = linear
    coatings = Au, Cu
    post_material = PC
    r0_um = 150
    r1_um = 250
    h_um = 800
    formula = full
    include_pc_curve = false
    quad_rel_tol = 1e-8
    matsubara_rel_tol = 1e-9
    l_max_cap = 500
    workers = 3
    material.Cu.omega_eV = 8.8
    material.Cu.gamma_eV = 0.03
    """
    spec = parse_config(text)
    assert spec.gap_min == pytest.approx(0.5 * UM) and spec.gap_max == pytest.approx(2 * UM)
    np.testing.assert_allclose(np.diff(spec.gaps()), 0.25 * UM)
    assert spec.coatings == ("Au", "Cu")
    assert spec.material("Cu").drude.omega_p == pytest.approx(ev_to_angular_frequency(8.8))
    assert spec.material("PC").is_perfect_conductor
    assert spec.geometry.r0 == pytest.approx(150 * UM) and spec.geometry.h == pytest.approx(800 * UM)
    assert spec.formula == "full" and spec.include_pc_curve is False
    assert spec.engine.quad_rel_tol == 1e-8 and spec.engine.l_max_cap == 500
    assert spec.workers == 3


def test_overrides_beat_file():
    spec = parse_config("temperature_K = 4\nn_points = 5", overrides={"temperature_K": "77"})
    assert spec.temperature == 77.0 and spec.n_points == 5


@pytest.mark.parametrize(
    "text, match",
    [
        ("gap_min_um = 5\ngap_max_um = 1", "gap_min < gap_max violated"),
        ("colour = blue", "unknown key 'colour'"),
        ("coatings = Cu", "built-in materials are Au, Nb, Al, PC, vacuum"),
        ("n_points = 1", "n_points >= 2"),
        ("temperature_K = -1", "temperature > 0"),
        ("spacing = cubic", "spacing"),
        ("formula = exact", "formula"),
        ("r0_um = 400", "r0 <= r1"),
        ("quad_rel_tol = 2", "quad_rel_tol"),
        ("n_points = many", "n_points"),
        ("material.Cu.omega_eV = 8.8", "both omega_eV and gamma_eV"),
        ("material.Cu.colour = 1", "unknown key"),
        ("just words", "expected 'key = value'"),
        ("include_pc_curve = maybe", "boolean"),
        ("coatings = ,", "at least one coating"),
    ],
)
def test_config_errors(text, match):
    with pytest.raises(ConfigError, match=match):
        parse_config(text)


def test_read_key_values_strips_comments():
    assert read_key_values("a = 1 # x\n\n# y\nb=2") == {"a": "1", "b": "2"}


@pytest.fixture(scope="module")
def small_spec():
    return parse_config("n_points = 8\nworkers = 1")


@pytest.fixture(scope="module")
def small_outcome(small_spec):
    return run_sweep(small_spec)


def test_pc_column_matches_closed_form(small_spec, small_outcome):
    for row in small_outcome.rows:
        exact = spring_constant_perfect_conductor(small_spec.geometry, row.x).k_C
        assert row.k_C_pc == pytest.approx(exact, rel=1e-12)


def test_rows_sorted_and_ordered_below_pc(small_outcome):
    xs = [r.x for r in small_outcome.rows]
    assert xs == sorted(xs) and len(set(xs)) == len(xs)
    for c in ("Au", "Nb"):
        k = np.array([r.k_C[c] for r in small_outcome.rows])
        assert np.all(k > 0) and np.all(np.diff(k) < 0)
        assert all(r.k_C[c] < r.k_C_pc for r in small_outcome.rows)
    assert small_outcome.ok
    assert small_outcome.timing.n_evaluations > 0


def test_ratio_columns(small_outcome):
    row = small_outcome.rows[0]
    assert row.ratio["Au"] == row.k_C["Au"] / 572.0
    assert row.ratio["Nb"] == row.k_C["Nb"] / 949.0


def test_no_ratio_for_other_coatings():
    out = run_sweep(parse_config("n_points = 2\ncoatings = Al\nworkers = 1"))
    assert out.rows[0].ratio == {}
    assert "ratio" not in emit_csv(out.rows).splitlines()[0]


def test_doubling_r0_quadruples(small_outcome):
    spec2 = parse_config("n_points = 8\nworkers = 1\nr0_um = 400\nr1_um = 600")
    for r1, r2 in zip(small_outcome.rows, run_sweep(spec2).rows):
        for c in ("Au", "Nb"):
            assert r2.k_C[c] == 4 * r1.k_C[c]


def test_worker_count_does_not_change_bytes(small_spec, small_outcome):
    multi = run_sweep(with_workers(small_spec, 4))
    assert emit_csv(multi.rows) == emit_csv(small_outcome.rows)


def test_failed_points_are_recorded():
    out = run_sweep(parse_config("n_points = 3\nl_max_cap = 2\nworkers = 2"))
    assert not out.ok
    assert all(not r.valid for r in out.rows)
    assert math.isnan(out.rows[0].k_C["Au"])
    assert "Matsubara" in out.rows[0].failures["Au"]
    assert "nan" in emit_csv(out.rows)


def test_csv_layout(small_outcome):
    text = emit_csv(small_outcome.rows)
    assert "\r" not in text and text.endswith("\n")
    lines = text.split("\n")[:-1]
    assert lines[0] == ("x_um,kC_Au_N_per_m,err_Au,kC_Nb_N_per_m,err_Nb,kC_pc_N_per_m,"
                        "ratio_Au_kS,ratio_Nb_kS")
    assert len(lines) == 9
    assert all("e" in field for field in lines[1].split(","))


def test_csv_round_trips_exactly(small_outcome):
    lines = emit_csv(small_outcome.rows).splitlines()[1:]
    for line, row in zip(lines, small_outcome.rows):
        vals = [float(v) for v in line.split(",")]
        assert vals[0] == row.x / UM
        assert vals[1] == row.k_C["Au"] and vals[2] == row.est_error["Au"]
        assert vals[5] == row.k_C_pc


def test_csv_pc_row_value():
    row = SweepRow(UM, {}, {}, k_C_pc=spring_constant_perfect_conductor(SweepSpec().geometry, UM).k_C)
    text = emit_csv([row])
    assert text.splitlines()[1].startswith("1e+00,6.535")


def test_emit_csv_needs_rows():
    with pytest.raises(ValueError):
        emit_csv([])
