import pytest

from reentrant_casimir.constants import UM
from reentrant_casimir.lifshitz import HalfSpacePair, ThermalGap, energy_per_area, pressure
from reentrant_casimir.materials import EMPTY, builtin_material
from reentrant_casimir.oracle import (
    ValidationPoint,
    default_points,
    finite_difference,
    reference_energy_per_area,
    validate_engine,
    validate_perfect_conductor,
    zeta3_zero_mode_energy,
)


def test_finite_difference_polynomial():
    assert finite_difference(lambda a: a * a, 3.0, 1e-4) == pytest.approx(6.0, abs=1e-9)


@pytest.mark.parametrize("bad", [1e-9, 1e-2, 0.5])
def test_finite_difference_step_range(bad):
    with pytest.raises(ValueError):
        finite_difference(lambda a: a, 1.0, bad)


def test_reference_vacuum(vacuum_pair):
    assert reference_energy_per_area(vacuum_pair, ThermalGap(UM, 300.0)) == 0.0


def test_reference_zero_mode():
    # a Drude pair at a gap so large that only l = 0 survives the y <= 60 grid
    pair = HalfSpacePair(builtin_material("Al"), builtin_material("Au"))
    tg = ThermalGap(100 * UM, 300.0)
    assert reference_energy_per_area(pair, tg) == pytest.approx(zeta3_zero_mode_energy(tg), rel=1e-6)


def test_richardson_step_halving(au_al):
    # mismatch of the central difference shrinks ~4x per halving of the step
    a = 1.0 * UM
    exact = -pressure(au_al, ThermalGap(a, 300.0)).value

    def f(s):
        return energy_per_area(au_al, ThermalGap(s, 300.0)).value

    e1 = abs(finite_difference(f, a, 4e-3) - exact)
    e2 = abs(finite_difference(f, a, 2e-3) - exact)
    assert 2.5 <= e1 / e2 <= 6


def test_validate_vacuum_points():
    pair = HalfSpacePair(EMPTY, builtin_material("Au"))
    report = validate_engine([ValidationPoint(UM, 300.0, pair)], tolerance=1e-6)
    assert report.max_deviation == 0.0
    assert report.passed


def test_validate_default_grid():
    report = validate_engine(default_points(), tolerance=1e-6)
    assert report.passed, report.render()
    assert [r.point.a for r in report.rows] == [p.a for p in default_points()]
    doc = report.to_dict()
    assert doc["passed"] is True and len(doc["points"]) == 5
    assert "PASS" in report.render()


def test_validate_flags_failures():
    report = validate_engine(default_points()[:1], tolerance=1e-14)
    assert not report.passed


def test_validate_needs_points():
    with pytest.raises(ValueError):
        validate_engine([])


def test_validate_perfect_conductor():
    dev, ok = validate_perfect_conductor()
    assert ok and dev < 1e-2
