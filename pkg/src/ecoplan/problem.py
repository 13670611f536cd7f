"""A planning instance: grid, vehicle and a stage-aligned road."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import GridSpec, NodeId
from .model import EnergyCoefficients, RoadProfile, VehicleParams
from . import kernels


@dataclass(frozen=True)
class Problem:
    """Immutable bundle shared by the planners and heuristics.

    The road is resampled onto the stage positions on construction, so each
    stage interval is exactly one road segment.
    """

    spec: GridSpec
    params: VehicleParams
    road: RoadProfile
    coef: tuple = field(init=False, repr=False)
    stage_sin: np.ndarray = field(init=False, repr=False)
    stage_cos: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        road = self.road.resample(self.spec.positions)
        object.__setattr__(self, "road", road)
        object.__setattr__(self, "coef", EnergyCoefficients.from_params(self.params).as_tuple())
        # libm trig, matching model.edge_energy bit for bit
        sin_a = np.array([math.sin(a) for a in road.alpha])
        cos_a = np.array([math.cos(a) for a in road.alpha])
        sin_a.setflags(write=False)
        cos_a.setflags(write=False)
        object.__setattr__(self, "stage_sin", sin_a)
        object.__setattr__(self, "stage_cos", cos_a)

    def edge_cost(self, n: NodeId, vidx2: int) -> float:
        """Total energy of the edge from ``n`` to (n.stage + 1, vidx2)."""
        v = self.spec.speeds
        k = n.stage
        return kernels.edge_cost(self.coef, float(v[n.vidx]), float(v[vidx2]),
                                 self.spec.ds, float(self.stage_sin[k]),
                                 float(self.stage_cos[k]))

    def edge_row(self, n: NodeId) -> np.ndarray:
        """Edge costs from ``n`` to every node of the next stage (inf if infeasible)."""
        k = n.stage
        return kernels.edge_row(self.coef, self.spec.speeds, n.vidx, self.spec.ds,
                                float(self.stage_sin[k]), float(self.stage_cos[k]))
