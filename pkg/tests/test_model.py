import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecoplan.model import (INFEASIBLE, ConfigError, RoadProfile, RoadProfileError,
                           VehicleParams, apply_efficiency, edge_energy,
                           resistance_force, total_power_equivalent)
from oracles import edge_energy_quadrature


class TestResistanceForce:
    def test_flat(self, unit_drag_params):
        # 0.5 * 1 * 10^2 + 0.012 * 1500 * 9.81
        assert resistance_force(unit_drag_params, 10.0, 0.0) == pytest.approx(226.58, abs=1e-9)

    def test_all_channels_off(self):
        p = VehicleParams(m=1500, rho_a=1e-300, c_d=1e-300, A_f=1e-300, c_r=0.0)
        assert resistance_force(p, 10.0, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_five_percent_grade(self, unit_drag_params):
        alpha = math.atan(0.05)
        expected = 50.0 + 176.58 * math.cos(alpha) + 1500 * 9.81 * math.sin(alpha)
        got = resistance_force(unit_drag_params, 10.0, alpha)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(961.2, abs=0.05)

    @pytest.mark.parametrize("v", [0.0, -1.0])
    def test_rejects_non_positive_speed(self, unit_drag_params, v):
        with pytest.raises(ValueError):
            resistance_force(unit_drag_params, v, 0.0)

    @given(v=st.floats(0.1, 80), dv=st.floats(1e-3, 10), alpha=st.floats(-0.2, 0.2))
    def test_increasing_in_speed(self, v, dv, alpha):
        p = VehicleParams(m=1500, rho_a=1.2, c_d=0.3, A_f=2.2, c_r=0.01)
        assert resistance_force(p, v + dv, alpha) > resistance_force(p, v, alpha)


class TestPowerEquivalent:
    def test_no_operating_cost(self):
        p = VehicleParams(m=1, rho_a=1, c_d=1, A_f=1, c_r=0, P_aux=1000.0)
        assert total_power_equivalent(p) == 1000.0

    def test_hourly_rate(self):
        p = VehicleParams(m=1, rho_a=1, c_d=1, A_f=1, c_r=0, P_aux=1000.0, hr=36.0, ep=1e-5)
        assert total_power_equivalent(p) == pytest.approx(2000.0, rel=1e-12)

    def test_zero(self):
        p = VehicleParams(m=1, rho_a=1, c_d=1, A_f=1, c_r=0)
        assert total_power_equivalent(p) == 0.0

    def test_hourly_rate_without_price(self):
        with pytest.raises(ConfigError):
            VehicleParams(m=1, rho_a=1, c_d=1, A_f=1, c_r=0, hr=10.0, ep=0.0)


@pytest.mark.parametrize("field,value", [
    ("m", 0.0), ("rho_a", -1.0), ("c_d", 0.0), ("A_f", 0.0), ("c_r", -0.1),
    ("eta_max", 0.0), ("eta_max", 1.1), ("P_aux", -1.0), ("a_min", 0.5), ("a_max", -0.5),
])
def test_vehicle_invariants(field, value):
    kwargs = dict(m=1500, rho_a=1.2, c_d=0.3, A_f=2.2, c_r=0.01)
    kwargs[field] = value
    with pytest.raises(ConfigError):
        VehicleParams(**kwargs)


class TestEdgeEnergy:
    def test_flat_cruise(self, unit_drag_params):
        road = RoadProfile.flat(0, 100)
        e = edge_energy(unit_drag_params, road, 0.0, 10.0, 10.0, 10.0)
        assert e.motor_energy == pytest.approx(2265.8 / 0.9, rel=1e-12)
        assert e.aux_energy == pytest.approx(1000.0, rel=1e-12)
        assert e.dt == pytest.approx(1.0)
        assert e.total == pytest.approx(3517.6, abs=0.05)
        # time-domain quadrature oracle
        assert e.total == pytest.approx(
            edge_energy_quadrature(unit_drag_params, 10.0, 10.0, 10.0, 0.0), rel=1e-9)

    def test_downhill_recuperates(self, unit_drag_params):
        road = RoadProfile.from_grades([0, 100], [-0.1])
        e = edge_energy(unit_drag_params, road, 0.0, 10.0, 10.0, 10.0)
        alpha = math.atan(-0.1)
        force = 50.0 + 176.58 * math.cos(alpha) + 14715.0 * math.sin(alpha)
        assert force < 0
        assert e.motor_energy == pytest.approx(force * 10.0 * 0.9, rel=1e-12)
        assert e.total < 0

    def test_acceleration_limit(self, unit_drag_params):
        road = RoadProfile.flat(0, 100)
        # (14^2 - 10^2) / 20 = 4.8 > a_max = 2
        e = edge_energy(unit_drag_params, road, 0.0, 10.0, 10.0, 14.0)
        assert not e.feasible and e.total == INFEASIBLE

    def test_force_cap(self):
        p = VehicleParams(m=1500, rho_a=1, c_d=1, A_f=1, c_r=0.012, a_min=-2, a_max=2,
                          F_prop_max=1000.0)
        road = RoadProfile.flat(0, 100)
        assert edge_energy(p, road, 0, 10, 10, 10).feasible
        # needs 1500 * 2 + drag > 1000 N
        assert not edge_energy(p, road, 0, 10, 10, math.sqrt(140)).feasible

    def test_rejects_backwards_edge(self, unit_drag_params):
        with pytest.raises(ValueError):
            edge_energy(unit_drag_params, RoadProfile.flat(0, 100), 10, 10, 10, 10)

    def test_matches_quadrature_on_random_edges(self):
        rng = np.random.default_rng(7)
        p = VehicleParams(m=1800, rho_a=1.2, c_d=0.32, A_f=2.4, c_r=0.011, eta_max=0.85,
                          P_aux=1500, a_min=-3, a_max=3)
        for _ in range(50):
            v1, v2 = rng.uniform(3, 35, size=2)
            ds_min = abs(v2 ** 2 - v1 ** 2) / 6 + 0.5
            ds = rng.uniform(ds_min, ds_min + 60)
            grade = rng.uniform(-0.08, 0.08)
            road = RoadProfile.from_grades([0, ds], [grade])
            e = edge_energy(p, road, 0.0, v1, ds, v2)
            q = edge_energy_quadrature(p, v1, v2, ds, math.atan(grade))
            assert e.total == pytest.approx(q, rel=1e-6)

    def test_closed_loop_has_no_residue(self):
        # up 3 % then down 3 %, speed returns to its start value
        p = VehicleParams(m=1500, rho_a=1.2, c_d=0.3, A_f=2.2, c_r=0.01, eta_max=1.0,
                          P_aux=0.0, a_min=-3, a_max=3)
        s = np.arange(0, 201, 10.0)
        grades = np.where(s[:-1] < 100, 0.03, -0.03)
        road = RoadProfile.from_grades(s, grades)
        speeds = [10, 11, 12, 13, 12, 11, 12, 13, 14, 13, 12, 11, 10, 11, 12, 11, 10, 11, 10, 11, 10]
        total = roll_air = 0.0
        for k in range(20):
            v1, v2 = speeds[k], speeds[k + 1]
            alpha = road.slope(s[k] + 5)
            total += edge_energy(p, road, s[k], v1, s[k + 1], v2).total
            roll_air += (0.01 * 1500 * 9.81 * math.cos(alpha)
                         + 0.5 * 1.2 * 0.3 * 2.2 * (v1 ** 2 + v2 ** 2) / 2) * 10
        assert total == pytest.approx(roll_air, rel=1e-12)


@given(work=st.floats(1e-3, 1e7), eta=st.floats(0.05, 1.0))
def test_recuperation_sign_rule(work, eta):
    e = apply_efficiency(work, eta)
    assert apply_efficiency(-work, eta) == pytest.approx(-e * eta * eta, rel=1e-12)


class TestRoadProfile:
    def test_rejects_non_monotone(self):
        with pytest.raises(RoadProfileError):
            RoadProfile(np.array([0, 10, 10, 20]), np.zeros(4))

    def test_needs_two_samples(self):
        with pytest.raises(RoadProfileError):
            RoadProfile(np.array([0.0]), np.array([0.0]))

    def test_slope_and_integrals(self):
        road = RoadProfile(np.array([0.0, 100.0, 300.0]), np.array([0.0, 4.0, 0.0]))
        a1, a2 = math.atan(0.04), math.atan(-0.02)
        assert road.slope(50) == pytest.approx(a1)
        assert road.slope(100) == pytest.approx(a2)  # right-continuous at breakpoints
        assert road.elevation(200) == pytest.approx(2.0)
        assert road.rolling_integral(300) == pytest.approx(100 * math.cos(a1) + 200 * math.cos(a2))
        assert road.lift_integral(150) == pytest.approx(100 * math.sin(a1) + 50 * math.sin(a2))
        assert np.all(np.diff(road.cum_cos) > 0)

    def test_resample_aligns_breakpoints(self):
        road = RoadProfile(np.array([0.0, 15.0, 40.0]), np.array([0.0, 1.5, 0.5]))
        rs = road.resample(np.arange(0, 41, 10.0))
        assert list(rs.s) == [0, 10, 20, 30, 40]
        assert rs.elevation(20) == pytest.approx(road.elevation(20))

    def test_out_of_range(self):
        with pytest.raises(RoadProfileError):
            RoadProfile.flat(0, 10).slope(11)
