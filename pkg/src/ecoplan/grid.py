"""Discretized (distance, velocity) search graph."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import List, NamedTuple, Tuple

import numpy as np

from .model import ConfigError, VehicleParams, implied_acceleration

_INTEGRAL_TOL = 1e-9


class NodeId(NamedTuple):
    stage: int
    vidx: int


def _steps(span: float, step: float, what: str) -> int:
    ratio = span / step
    n = int(round(ratio))
    if abs(ratio - n) > _INTEGRAL_TOL:
        raise ConfigError(f"{what} span {span} is not a multiple of step {step}")
    return n


@dataclass(frozen=True)
class GridSpec:
    s_start: float
    s_goal: float
    ds: float
    v_min: float
    v_max: float
    dv: float
    v_init: float
    v_goal: float

    def __post_init__(self) -> None:
        if not self.s_goal > self.s_start:
            raise ConfigError("s_goal must exceed s_start")
        if not self.ds > 0 or not self.dv > 0:
            raise ConfigError("ds and dv must be positive")
        if not 0 < self.v_min <= self.v_max:
            raise ConfigError("need 0 < v_min <= v_max")
        for name in ("v_init", "v_goal"):
            v = getattr(self, name)
            if not self.v_min <= v <= self.v_max:
                raise ConfigError(f"{name}={v} outside [{self.v_min}, {self.v_max}]")
        _steps(self.s_goal - self.s_start, self.ds, "distance")
        _steps(self.v_max - self.v_min, self.dv, "velocity")
        _steps(self.v_init - self.v_min, self.dv, "v_init offset")
        _steps(self.v_goal - self.v_min, self.dv, "v_goal offset")

    @property
    def n_stages(self) -> int:
        """Number of distance steps; stages are numbered 0..n_stages."""
        return _steps(self.s_goal - self.s_start, self.ds, "distance")

    @property
    def n_speeds(self) -> int:
        """Number of velocity grid points."""
        return _steps(self.v_max - self.v_min, self.dv, "velocity") + 1

    @cached_property
    def speeds(self) -> np.ndarray:
        v = self.v_min + np.arange(self.n_speeds) * self.dv
        v.setflags(write=False)
        return v

    @cached_property
    def positions(self) -> np.ndarray:
        s = self.s_start + np.arange(self.n_stages + 1) * self.ds
        s.setflags(write=False)
        return s

    @property
    def start(self) -> NodeId:
        return NodeId(0, _steps(self.v_init - self.v_min, self.dv, "v_init offset"))

    @property
    def goal(self) -> NodeId:
        return NodeId(self.n_stages, _steps(self.v_goal - self.v_min, self.dv, "v_goal offset"))

    @property
    def node_count(self) -> int:
        return (self.n_stages + 1) * self.n_speeds

    def contains(self, n: NodeId) -> bool:
        return 0 <= n.stage <= self.n_stages and 0 <= n.vidx < self.n_speeds


def node_state(spec: GridSpec, n: NodeId) -> Tuple[float, float]:
    """(s, v) of a grid node."""
    if not spec.contains(n):
        raise IndexError(f"node {tuple(n)} outside grid")
    return (spec.s_start + n.stage * spec.ds, spec.v_min + n.vidx * spec.dv)


def successors(spec: GridSpec, p: VehicleParams, n: NodeId) -> List[Tuple[NodeId, float]]:
    """Next-stage nodes reachable within the acceleration limits.

    Ascending ``vidx``.  Only the acceleration constraint is checked here;
    a force cap, if any, is applied by the edge energy.
    """
    if not spec.contains(n):
        raise IndexError(f"node {tuple(n)} outside grid")
    if n.stage >= spec.n_stages:
        return []
    v = spec.speeds
    v1 = float(v[n.vidx])
    out = []
    for j in range(spec.n_speeds):
        a = implied_acceleration(v1, float(v[j]), spec.ds)
        if p.a_min <= a <= p.a_max:
            out.append((NodeId(n.stage + 1, j), a))
    return out
