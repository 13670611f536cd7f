"""Cost-to-go lower bounds for the velocity planner.

Three heuristics are available:

* ``zero``     -- no estimate.
* ``soa``      -- kinetic + potential energy change and rolling loss, with the
                  peak motor efficiency applied.
* ``pro``      -- ``soa`` plus a lower bound on air-drag and auxiliary
                  (time-proportional) energy built around the optimal
                  cruising velocity and the acceleration limits.

The drag/auxiliary bound treats ``0.5 rho c_d A_f v^2 + P_tot / v`` as a
virtual force that is convex in ``v`` with a unique minimum at the optimal
cruising velocity.

When the remaining wheel work is negative the motor ends up recuperating,
and drag losses then only reduce recuperated energy, i.e. they cost
``eta_max`` times their mechanical value.  ``pro`` therefore scales the drag
part of the virtual force by ``eta_max`` in that regime; without it the sum
overestimates the cost-to-go on recuperating stretches.
:func:`h_pro_unscaled` keeps the unscaled sum for comparison.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, Optional, Tuple

from .grid import NodeId
from .model import RoadProfile, VehicleParams, apply_efficiency, total_power_equivalent

# Slack on velocity comparisons when deciding whether a ramp is reachable.
_VEL_TOL = 1e-9


class HeuristicKind(str, enum.Enum):
    ZERO = "zero"
    SOA = "soa"
    PROPOSED = "pro"


def virtual_force(p: VehicleParams, v: float) -> float:
    """Air drag plus the time-proportional power spread over distance [N]."""
    if not v > 0:
        raise ValueError(f"speed must be positive, got {v}")
    return 0.5 * p.drag_factor * v * v + total_power_equivalent(p) / v


def optimal_cruise_velocity(p: VehicleParams, v_min: Optional[float] = None,
                            v_max: Optional[float] = None) -> float:
    """Speed minimizing :func:`virtual_force`, optionally clamped to a band."""
    v = (total_power_equivalent(p) / p.drag_factor) ** (1.0 / 3.0)
    if v_min is not None:
        v = max(v, v_min)
    if v_max is not None:
        v = min(v, v_max)
    return v


@dataclass(frozen=True)
class CruiseData:
    """Per-query constants for the drag/auxiliary bound."""

    v_star: float
    F_v_min: float
    half_drag: float
    p_tot: float
    a_min: float
    a_max: float
    road: RoadProfile
    v_min: float
    v_max: float
    eta: float = 1.0

    @classmethod
    def build(cls, p: VehicleParams, road: RoadProfile, v_min: float,
              v_max: float, drag_scale: float = 1.0) -> "CruiseData":
        half_drag = 0.5 * p.drag_factor * drag_scale
        p_tot = total_power_equivalent(p)
        v_star = min(max((p_tot / (2.0 * half_drag)) ** (1.0 / 3.0), v_min), v_max)
        return cls(
            v_star=v_star,
            F_v_min=half_drag * v_star * v_star + p_tot / v_star,
            half_drag=half_drag,
            p_tot=p_tot,
            a_min=p.a_min,
            a_max=p.a_max,
            road=road,
            v_min=v_min,
            v_max=v_max,
            eta=p.eta_max,
        )

    @cached_property
    def recuperating(self) -> "CruiseData":
        """Same bound with the drag term scaled by the peak efficiency."""
        half_drag = self.half_drag * self.eta
        v_star = min(max((self.p_tot / (2.0 * half_drag)) ** (1.0 / 3.0), self.v_min), self.v_max)
        return replace(self, half_drag=half_drag, v_star=v_star, eta=1.0,
                       F_v_min=half_drag * v_star * v_star + self.p_tot / v_star)


def w_a_constant(cd: CruiseData, s_i: float, s_f: float) -> float:
    """Drag + auxiliary energy when cruising at v* the whole way."""
    if s_f < s_i:
        raise ValueError("s_f must not precede s_i")
    return cd.F_v_min * (s_f - s_i)


def _ramp(half_drag: float, p_tot: float, v1: float, v2: float, a: float) -> Tuple[float, float]:
    # Exact integral of (half_drag v^3 + p_tot) dt for v = v1 + a t.
    if v1 == v2:
        return 0.0, 0.0
    T = (v2 - v1) / a
    drag = half_drag * (v2 ** 4 - v1 ** 4) / (4.0 * a)
    return drag + p_tot * T, (v2 * v2 - v1 * v1) / (2.0 * a)


def w_at(p: VehicleParams, v1: float, v2: float, a: float) -> Tuple[float, float]:
    """Drag + auxiliary energy and distance of a uniform-acceleration ramp.

    Returns ``(energy, distance)`` for driving from ``v1`` to ``v2`` at
    constant acceleration ``a``.
    """
    if v1 == v2:
        return 0.0, 0.0
    if a == 0 or (v2 - v1) / a <= 0:
        raise ValueError(f"acceleration {a} cannot take {v1} to {v2}")
    return _ramp(0.5 * p.drag_factor, total_power_equivalent(p), v1, v2, a)


def ramp_distance(v1: float, v2: float, a: float) -> float:
    if v1 == v2:
        return 0.0
    return (v2 * v2 - v1 * v1) / (2.0 * a)


def peak_velocity(v_i: float, v_f: float, a1: float, a2: float, s: float) -> Optional[float]:
    """Speed where a two-ramp profile (a1 then a2) covering ``s`` switches.

    None when no real switching speed exists.
    """
    radicand = (2.0 * a1 * a2 * s + a2 * v_i * v_i - a1 * v_f * v_f) / (a2 - a1)
    if radicand < 0:
        return None
    return math.sqrt(radicand)


def _ramp_accels(cd: CruiseData, v_i: float, v_f: float) -> Tuple[float, float]:
    vs = cd.v_star
    if v_i > vs:
        a1 = cd.a_min
    elif v_i < vs:
        a1 = cd.a_max
    else:
        # No first ramp needed; pick the orientation that bends toward v_f.
        a1 = cd.a_max if v_f < vs else cd.a_min
    if v_f < vs:
        a2 = cd.a_min
    elif v_f > vs:
        a2 = cd.a_max
    else:
        a2 = cd.a_min if v_i < vs else cd.a_max
    return a1, a2


def w_ai(p: VehicleParams, cd: CruiseData, v_i: float, v_f: float,
         s_i: float, s_f: float) -> float:
    """Lower bound on drag + auxiliary energy honoring acceleration limits.

    Ramp from ``v_i`` toward v* as hard as allowed, cruise, and ramp to
    ``v_f`` at the last moment.  When the distance is too short to reach v*
    the profile peaks (or dips) at the switching speed instead; if even that
    is impossible the goal is unreachable and the bound is infinite.
    """
    if s_f < s_i:
        raise ValueError("s_f must not precede s_i")
    if not (v_i > 0 and v_f > 0):
        raise ValueError("speeds must be positive")
    d = s_f - s_i
    vs = cd.v_star
    a1, a2 = _ramp_accels(cd, v_i, v_f)
    s1 = ramp_distance(v_i, vs, a1)
    s2 = ramp_distance(vs, v_f, a2)
    if s1 + s2 <= d:
        e1, _ = _ramp(cd.half_drag, cd.p_tot, v_i, vs, a1)
        e2, _ = _ramp(cd.half_drag, cd.p_tot, vs, v_f, a2)
        return e1 + cd.F_v_min * (d - s1 - s2) + e2
    if (v_i - vs) * (v_f - vs) < 0:
        return math.inf
    v_x = peak_velocity(v_i, v_f, a1, a2, d)
    if v_x is None:
        return math.inf
    # Both ramps must run in the direction of their acceleration.
    if (v_x - v_i) * a1 < -_VEL_TOL or (v_f - v_x) * a2 < -_VEL_TOL:
        return math.inf
    e1, _ = _ramp(cd.half_drag, cd.p_tot, v_i, v_x, a1)
    e2, _ = _ramp(cd.half_drag, cd.p_tot, v_x, v_f, a2)
    return max(e1, 0.0) + max(e2, 0.0)


def soa_work(p: VehicleParams, road: RoadProfile, s_i: float, v_i: float,
             s_f: float, v_f: float) -> float:
    """Kinetic + potential energy change plus rolling loss, at the wheel [J].

    The potential term integrates ``sin(alpha)`` so it equals the work of
    the slope force used in the edge costs.
    """
    kinetic = 0.5 * p.m * (v_f * v_f - v_i * v_i)
    potential = p.m * p.g * (road.lift_integral(s_f) - road.lift_integral(s_i))
    rolling = p.c_r * p.m * p.g * (road.rolling_integral(s_f) - road.rolling_integral(s_i))
    return kinetic + potential + rolling


def h_soa(p: VehicleParams, cd: CruiseData, node: Tuple[float, float],
          goal: Tuple[float, float]) -> float:
    """State-of-the-art bound: :func:`soa_work` through the peak efficiency."""
    (s_i, v_i), (s_f, v_f) = node, goal
    if s_f < s_i:
        raise ValueError("goal must not precede node")
    return apply_efficiency(soa_work(p, cd.road, s_i, v_i, s_f, v_f), p.eta_max)


def h_pro(p: VehicleParams, cd: CruiseData, node: Tuple[float, float],
          goal: Tuple[float, float]) -> float:
    """h_soa plus the drag/auxiliary bound.

    No efficiency is applied to the auxiliary share, which never flows
    through the motor.  If the wheel work is negative the drag share is
    scaled by ``eta_max`` (see module docstring).
    """
    (s_i, v_i), (s_f, v_f) = node, goal
    if s_f < s_i:
        raise ValueError("goal must not precede node")
    work = soa_work(p, cd.road, s_i, v_i, s_f, v_f)
    bound = cd.recuperating if work < 0 else cd
    return apply_efficiency(work, p.eta_max) + w_ai(p, bound, v_i, v_f, s_i, s_f)


def h_pro_unscaled(p: VehicleParams, cd: CruiseData, node: Tuple[float, float],
                   goal: Tuple[float, float]) -> float:
    """h_soa + W_AI with no efficiency handling on the drag share.

    Not admissible when the motor recuperates over the remaining distance.
    """
    (s_i, v_i), (s_f, v_f) = node, goal
    return h_soa(p, cd, node, goal) + w_ai(p, cd, v_i, v_f, s_i, s_f)


class Heuristic:
    """Memoized heuristic for one planning problem.

    Nodes on the goal stage other than the goal itself get an infinite
    estimate since the terminal speed is a hard constraint.
    """

    def __init__(self, problem, kind: HeuristicKind):
        self.kind = HeuristicKind(kind)
        self.problem = problem
        spec = problem.spec
        self.cruise = CruiseData.build(problem.params, problem.road, spec.v_min, spec.v_max)
        self._goal = spec.goal
        self._goal_state = (float(spec.positions[-1]), float(spec.speeds[self._goal.vidx]))
        self._memo: Dict[NodeId, float] = {}
        p = problem.params
        self._fn = {HeuristicKind.SOA: h_soa, HeuristicKind.PROPOSED: h_pro}.get(self.kind)
        self._p = p

    def __call__(self, n: NodeId) -> float:
        try:
            return self._memo[n]
        except KeyError:
            pass
        val = self._evaluate(n)
        self._memo[n] = val
        return val

    def _evaluate(self, n: NodeId) -> float:
        if n.stage == self._goal.stage:
            return 0.0 if n.vidx == self._goal.vidx else math.inf
        if self._fn is None:
            return 0.0
        spec = self.problem.spec
        state = (float(spec.positions[n.stage]), float(spec.speeds[n.vidx]))
        return self._fn(self._p, self.cruise, state, self._goal_state)
