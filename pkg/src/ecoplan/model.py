"""Longitudinal vehicle and road physics.

The vehicle is a lumped mass driven by a motor with constant peak
efficiency.  Transition energies are computed at force level over
uniform-acceleration segments; the same routine feeds A* cost-to-come and
the dynamic-programming sweep, so both planners see identical edge costs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

SECONDS_PER_HOUR = 3600.0

#: Cost returned for transitions that violate acceleration or force limits.
INFEASIBLE = math.inf


class ConfigError(ValueError):
    """Invalid vehicle or grid configuration."""


class RoadProfileError(ValueError):
    """Malformed or inconsistent elevation profile."""


@dataclass(frozen=True)
class VehicleParams:
    """Vehicle parameters, all SI.

    ``hr`` is an operator cost per hour and ``ep`` an electricity price per
    joule; together they add a time-proportional power equivalent on top of
    ``P_aux``.
    """

    m: float
    rho_a: float
    c_d: float
    A_f: float
    c_r: float
    g: float = 9.81
    eta_max: float = 1.0
    P_aux: float = 0.0
    hr: float = 0.0
    ep: float = 0.0
    a_min: float = -1.0
    a_max: float = 1.0
    F_prop_max: Optional[float] = None

    def __post_init__(self) -> None:
        checks = [
            (self.m > 0, "m must be positive"),
            (self.rho_a > 0, "rho_a must be positive"),
            (self.c_d > 0, "c_d must be positive"),
            (self.A_f > 0, "A_f must be positive"),
            (self.c_r >= 0, "c_r must be non-negative"),
            (self.g > 0, "g must be positive"),
            (0 < self.eta_max <= 1, "eta_max must lie in (0, 1]"),
            (self.P_aux >= 0, "P_aux must be non-negative"),
            (self.hr >= 0, "hr must be non-negative"),
            (self.ep >= 0, "ep must be non-negative"),
            (self.a_min < 0 < self.a_max, "need a_min < 0 < a_max"),
            (self.hr == 0 or self.ep > 0, "ep must be positive when hr > 0"),
            (self.F_prop_max is None or self.F_prop_max > 0, "F_prop_max must be positive"),
        ]
        for ok, msg in checks:
            if not ok:
                raise ConfigError(msg)

    @property
    def drag_factor(self) -> float:
        """rho_a * c_d * A_f [kg/m]."""
        return self.rho_a * self.c_d * self.A_f

    @property
    def P_tot(self) -> float:
        return total_power_equivalent(self)


def total_power_equivalent(p: VehicleParams) -> float:
    """Auxiliary power plus operating cost expressed as power [W]."""
    if p.hr == 0:
        return float(p.P_aux)
    if p.ep <= 0:
        raise ConfigError("hr > 0 requires a positive electricity price ep")
    return p.P_aux + (p.hr / SECONDS_PER_HOUR) / p.ep


def resistance_force(p: VehicleParams, v: float, alpha: float) -> float:
    """Air drag + rolling resistance + slope force at speed ``v`` [N]."""
    if not v > 0:
        raise ValueError(f"speed must be positive, got {v}")
    drag = 0.5 * p.drag_factor * v * v
    roll = p.c_r * p.m * p.g * math.cos(alpha)
    grade = p.m * p.g * math.sin(alpha)
    return drag + roll + grade


def apply_efficiency(work: float, eta: float) -> float:
    """Battery-side energy for mechanical ``work`` through the motor.

    Traction divides by the efficiency, recuperation multiplies by it.
    """
    if work > 0:
        return work / eta
    return work * eta


@dataclass(frozen=True)
class EnergyCoefficients:
    """Per-vehicle constants in the order the edge kernels expect."""

    m: float
    half_drag: float
    roll: float
    mg: float
    eta: float
    p_tot: float
    a_min: float
    a_max: float
    f_max: float

    @classmethod
    def from_params(cls, p: VehicleParams) -> "EnergyCoefficients":
        return cls(
            m=p.m,
            half_drag=0.5 * p.drag_factor,
            roll=p.c_r * p.m * p.g,
            mg=p.m * p.g,
            eta=p.eta_max,
            p_tot=total_power_equivalent(p),
            a_min=p.a_min,
            a_max=p.a_max,
            f_max=math.inf if p.F_prop_max is None else float(p.F_prop_max),
        )

    def as_tuple(self) -> tuple:
        return (self.m, self.half_drag, self.roll, self.mg, self.eta,
                self.p_tot, self.a_min, self.a_max, self.f_max)


@dataclass(frozen=True)
class EdgeEnergy:
    motor_energy: float
    aux_energy: float
    dt: float
    feasible: bool = True

    @property
    def total(self) -> float:
        if not self.feasible:
            return INFEASIBLE
        return self.motor_energy + self.aux_energy


INFEASIBLE_EDGE = EdgeEnergy(math.inf, math.inf, math.inf, feasible=False)


# --------------------------------------------------------------------------
# Road profile


@dataclass(frozen=True)
class RoadProfile:
    """Piecewise-linear elevation over distance.

    ``s`` is the planning coordinate; the slope angle of each segment is
    ``atan(dh/ds)``.  Cumulative integrals of ``cos(alpha)`` and
    ``sin(alpha)`` are precomputed at the breakpoints.
    """

    s: np.ndarray
    h: np.ndarray
    alpha: np.ndarray = field(init=False, repr=False)
    cum_cos: np.ndarray = field(init=False, repr=False)
    cum_sin: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        s = np.asarray(self.s, dtype=float)
        h = np.asarray(self.h, dtype=float)
        if s.ndim != 1 or s.shape != h.shape:
            raise RoadProfileError("s and h must be 1-D arrays of equal length")
        if s.size < 2:
            raise RoadProfileError("a road profile needs at least two samples")
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(h))):
            raise RoadProfileError("road samples must be finite")
        ds = np.diff(s)
        if np.any(ds <= 0):
            bad = int(np.argmax(ds <= 0)) + 1
            raise RoadProfileError(f"s must be strictly increasing (sample {bad})")
        alpha = np.array([math.atan(x) for x in np.diff(h) / ds])
        cum_cos = np.concatenate(([0.0], np.cumsum(np.array([math.cos(a) for a in alpha]) * ds)))
        cum_sin = np.concatenate(([0.0], np.cumsum(np.array([math.sin(a) for a in alpha]) * ds)))
        for name, arr in (("s", s), ("h", h), ("alpha", alpha),
                          ("cum_cos", cum_cos), ("cum_sin", cum_sin)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def flat(cls, s_start: float, s_end: float, elevation: float = 0.0) -> "RoadProfile":
        return cls(np.array([s_start, s_end]), np.array([elevation, elevation]))

    @classmethod
    def from_grades(cls, s: np.ndarray, grades: np.ndarray, h0: float = 0.0) -> "RoadProfile":
        """Profile through breakpoints ``s`` with per-segment grade dh/ds."""
        s = np.asarray(s, dtype=float)
        h = h0 + np.concatenate(([0.0], np.cumsum(np.asarray(grades) * np.diff(s))))
        return cls(s, h)

    @property
    def s_min(self) -> float:
        return float(self.s[0])

    @property
    def s_max(self) -> float:
        return float(self.s[-1])

    def _check_range(self, x: float) -> None:
        if x < self.s[0] - 1e-9 or x > self.s[-1] + 1e-9:
            raise RoadProfileError(
                f"s={x} outside road range [{self.s[0]}, {self.s[-1]}]")

    def segment_index(self, x: float) -> int:
        """Index of the segment containing ``x`` (right-continuous)."""
        self._check_range(x)
        i = int(np.searchsorted(self.s, x, side="right")) - 1
        return min(max(i, 0), self.s.size - 2)

    def elevation(self, x: float) -> float:
        self._check_range(x)
        return float(np.interp(x, self.s, self.h))

    def slope(self, x: float) -> float:
        return float(self.alpha[self.segment_index(x)])

    def _cumulative(self, table: np.ndarray, trig, x: float) -> float:
        i = self.segment_index(x)
        return float(table[i] + trig(float(self.alpha[i])) * (x - self.s[i]))

    def rolling_integral(self, x: float) -> float:
        """Integral of cos(alpha) from the start of the road to ``x``."""
        return self._cumulative(self.cum_cos, math.cos, x)

    def lift_integral(self, x: float) -> float:
        """Integral of sin(alpha) from the start of the road to ``x``.

        This is the height gain felt by the slope force ``m g sin(alpha)``.
        """
        return self._cumulative(self.cum_sin, math.sin, x)

    def resample(self, positions: np.ndarray) -> "RoadProfile":
        """Profile with breakpoints exactly at ``positions``.

        Elevation is linearly interpolated, so every grid stage interval
        becomes a single road segment.
        """
        positions = np.asarray(positions, dtype=float)
        for x in (positions[0], positions[-1]):
            self._check_range(x)
        return RoadProfile(positions, np.interp(positions, self.s, self.h))


# --------------------------------------------------------------------------
# Edge energy


def implied_acceleration(v1: float, v2: float, ds: float) -> float:
    """Uniform acceleration taking ``v1`` to ``v2`` over distance ``ds``."""
    return (v2 * v2 - v1 * v1) / (2.0 * ds)


def edge_components(c: EnergyCoefficients, v1: float, v2: float, ds: float,
                    sin_a: float, cos_a: float) -> EdgeEnergy:
    """Edge energy from precomputed coefficients and slope trig values.

    The operation order here is mirrored exactly by the compiled and
    pure-Python kernels.
    """
    a = (v2 * v2 - v1 * v1) / (2.0 * ds)
    if a < c.a_min or a > c.a_max:
        return INFEASIBLE_EDGE
    vm2 = 0.5 * (v1 * v1 + v2 * v2)
    force = c.m * a + c.half_drag * vm2 + c.roll * cos_a + c.mg * sin_a
    if force > c.f_max:
        return INFEASIBLE_EDGE
    work = force * ds
    motor = work / c.eta if work > 0 else work * c.eta
    dt = 2.0 * ds / (v1 + v2)
    return EdgeEnergy(motor_energy=motor, aux_energy=c.p_tot * dt, dt=dt)


def edge_energy(p: VehicleParams, road: RoadProfile, s1: float, v1: float,
                s2: float, v2: float) -> EdgeEnergy:
    """Energy drawn from the battery to drive from (s1, v1) to (s2, v2).

    Acceleration is uniform over distance, resistance forces are evaluated
    at the mean-square speed and the grade of the segment containing the
    midpoint.  Infeasible transitions return :data:`INFEASIBLE_EDGE`.
    """
    if not s2 > s1:
        raise ValueError("edge must advance in distance (s2 > s1)")
    if not (v1 > 0 and v2 > 0):
        raise ValueError("edge speeds must be positive")
    alpha = road.slope(0.5 * (s1 + s2))
    return edge_components(EnergyCoefficients.from_params(p), v1, v2, s2 - s1,
                           math.sin(alpha), math.cos(alpha))
