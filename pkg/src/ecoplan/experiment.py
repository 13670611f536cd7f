"""DP vs A* comparison with heuristic error statistics.

DP supplies the exact cost-to-go of every grid node; each heuristic is
scored by ``h(n) - J*(n)`` over all nodes with finite ``J*`` and A* is run
with it to count explored nodes.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, TextIO

import numpy as np

from . import astar, dp
from .grid import NodeId
from .heuristics import Heuristic, HeuristicKind
from .problem import Problem

METHOD_NAMES = {
    None: "dp",
    HeuristicKind.ZERO: "astar_zero",
    HeuristicKind.SOA: "astar_soa",
    HeuristicKind.PROPOSED: "astar_pro",
}


@dataclass(frozen=True)
class HeuristicErrorStats:
    average_error: float
    min_error: float
    max_error: float
    sample_count: int

    @classmethod
    def from_errors(cls, errors: np.ndarray) -> "HeuristicErrorStats":
        if errors.size == 0:
            return cls(0.0, 0.0, 0.0, 0)
        return cls(float(errors.mean()), float(errors.min()), float(errors.max()), int(errors.size))


@dataclass(frozen=True)
class MethodRow:
    method: str
    nodes_expanded: int
    avg_err_J: float
    min_err_J: float
    max_err_J: float
    total_energy_J: float


@dataclass
class ComparisonReport:
    rows: List[MethodRow]
    sample_count: int
    dp_table: dp.CostToGoTable = field(repr=False)
    plans: Dict[str, astar.PlanResult] = field(repr=False, default_factory=dict)

    def row(self, method: str) -> MethodRow:
        for r in self.rows:
            if r.method == method:
                return r
        raise KeyError(method)

    def to_json(self) -> str:
        payload = {"sample_count": self.sample_count,
                   "rows": [asdict(r) for r in self.rows]}
        return json.dumps(payload, indent=2, allow_nan=True) + "\n"

    def to_text(self) -> str:
        header = ["method", "nodes_expanded", "avg_err_kJ", "min_err_kJ", "max_err_kJ",
                  "total_energy_kJ"]
        body = [[r.method, str(r.nodes_expanded), f"{r.avg_err_J / 1e3:.3f}",
                 f"{r.min_err_J / 1e3:.3f}", f"{r.max_err_J / 1e3:.6f}",
                 f"{r.total_energy_J / 1e3:.3f}"] for r in self.rows]
        widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
        lines = ["  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(row, widths)))
                 for row in [header] + body]
        return "\n".join(lines) + "\n"

    def write_explored(self, fh: TextIO) -> None:
        """Expanded nodes per A* run as ``stage,vidx,expanded_by``."""
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["stage", "vidx", "expanded_by"])
        for method, res in self.plans.items():
            for n in sorted(res.expanded):
                w.writerow([n.stage, n.vidx, method])


def heuristic_errors(problem: Problem, table: dp.CostToGoTable,
                     h: Callable[[NodeId], float]) -> np.ndarray:
    """``h(n) - J*(n)`` for every node with finite cost-to-go, stage-major order."""
    spec = problem.spec
    out = []
    for k in range(spec.n_stages + 1):
        for i in range(spec.n_speeds):
            J = table.J[k, i]
            if math.isfinite(J):
                out.append(h(NodeId(k, i)) - float(J))
    return np.array(out, dtype=float)


def compare(problem: Problem,
            kinds: Sequence[HeuristicKind] = (HeuristicKind.SOA, HeuristicKind.PROPOSED),
            table: Optional[dp.CostToGoTable] = None) -> ComparisonReport:
    """Run DP once and A* with each heuristic; rows are DP first, then ``kinds`` in order."""
    if table is None:
        table = dp.solve(problem)
    dp_plan = dp.extract_trajectory(table, problem)
    if not dp_plan.found:
        raise NoPathError("goal unreachable from the start node")
    finite = int(np.isfinite(table.J).sum())
    rows = [MethodRow(METHOD_NAMES[None], table.evaluated_states, 0.0, 0.0, 0.0,
                      dp_plan.total_energy)]
    plans: Dict[str, astar.PlanResult] = {}
    for kind in kinds:
        kind = HeuristicKind(kind)
        h = Heuristic(problem, kind)
        stats = HeuristicErrorStats.from_errors(heuristic_errors(problem, table, h))
        res = astar.plan(problem, kind, heuristic=h)
        name = METHOD_NAMES[kind]
        plans[name] = res
        rows.append(MethodRow(name, res.nodes_expanded, stats.average_error,
                              stats.min_error, stats.max_error, res.total_energy))
    return ComparisonReport(rows=rows, sample_count=finite, dp_table=table, plans=plans)


class NoPathError(RuntimeError):
    pass
