"""Backward dynamic programming over the full stage grid.

Besides being a planner on its own, the complete cost-to-go table is the
reference used to measure heuristic errors.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from . import kernels
from .astar import PlanResult, build_trajectory
from .grid import NodeId
from .problem import Problem


@dataclass(frozen=True)
class CostToGoTable:
    J: np.ndarray
    policy: np.ndarray
    evaluated_states: int

    def cost_to_go(self, n: NodeId) -> float:
        return float(self.J[n.stage, n.vidx])


def solve(problem: Problem) -> CostToGoTable:
    """Optimal cost-to-go for every grid node (inf where the goal is unreachable)."""
    spec = problem.spec
    J, policy = kernels.dp_sweep(problem.coef, spec.speeds, spec.ds,
                                 problem.stage_sin, problem.stage_cos, spec.goal.vidx)
    J.setflags(write=False)
    policy.setflags(write=False)
    return CostToGoTable(J=J, policy=policy, evaluated_states=spec.node_count)


def extract_trajectory(table: CostToGoTable, problem: Problem) -> PlanResult:
    """Follow the stored policy from the start node."""
    spec = problem.spec
    start = spec.start
    stats = dict(nodes_expanded=table.evaluated_states, nodes_generated=table.evaluated_states)
    if math.isinf(table.cost_to_go(start)):
        return PlanResult.no_path(**stats)
    path = [start]
    while path[-1].stage < spec.n_stages:
        n = path[-1]
        path.append(NodeId(n.stage + 1, int(table.policy[n.stage, n.vidx])))
    traj = build_trajectory(problem, path)
    return PlanResult(found=True, trajectory=traj, total_energy=traj[-1].energy,
                      path=path, **stats)


def write_cost_to_go(table: CostToGoTable, problem: Problem, fh: TextIO) -> None:
    """CSV dump ``stage,vidx,s_m,v_mps,J_joule``."""
    spec = problem.spec
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["stage", "vidx", "s_m", "v_mps", "J_joule"])
    for k in range(spec.n_stages + 1):
        for i in range(spec.n_speeds):
            w.writerow([k, i, repr(float(spec.positions[k])), repr(float(spec.speeds[i])),
                        repr(float(table.J[k, i]))])
