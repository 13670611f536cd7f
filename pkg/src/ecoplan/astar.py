"""A* over the stage graph.

The open list is a binary min-heap paired with a hash table that records
each node's heap position (for in-place key updates) and whether it has
been closed.  Edge costs can be negative under recuperation, so a closed
node whose cost-to-come improves is reopened.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

from .grid import NodeId
from .heuristics import Heuristic, HeuristicKind
from .problem import Problem

OPEN = "open"
CLOSED = "closed"


class TrajectoryPoint(NamedTuple):
    s: float
    v: float
    t: float
    energy: float


@dataclass
class PlanResult:
    """Outcome of a planner run.

    ``found`` is False when the goal is unreachable; the trajectory is then
    empty and ``total_energy`` is infinite.
    """

    found: bool
    trajectory: List[TrajectoryPoint]
    total_energy: float
    nodes_expanded: int = 0
    nodes_generated: int = 0
    reopen_count: int = 0
    expanded: FrozenSet[NodeId] = field(default_factory=frozenset, repr=False)
    path: List[NodeId] = field(default_factory=list, repr=False)

    @classmethod
    def no_path(cls, **stats) -> "PlanResult":
        return cls(found=False, trajectory=[], total_energy=math.inf, **stats)


def build_trajectory(problem: Problem, path: List[NodeId]) -> List[TrajectoryPoint]:
    """Time and cumulative energy along a node path, summed forward."""
    spec = problem.spec
    v = spec.speeds
    s = spec.positions
    t = 0.0
    e = 0.0
    first = path[0]
    out = [TrajectoryPoint(float(s[first.stage]), float(v[first.vidx]), t, e)]
    for a, b in zip(path, path[1:]):
        v1 = float(v[a.vidx])
        v2 = float(v[b.vidx])
        e += problem.edge_cost(a, b.vidx)
        t += 2.0 * spec.ds / (v1 + v2)
        out.append(TrajectoryPoint(float(s[b.stage]), v2, t, e))
    return out


class SearchNodeRecord:
    __slots__ = ("node", "g", "f", "parent", "status", "pos")

    def __init__(self, node: NodeId, g: float, f: float, parent: Optional[NodeId]):
        self.node = node
        self.g = g
        self.f = f
        self.parent = parent
        self.status = OPEN
        self.pos = -1

    def key(self) -> Tuple[float, float, int, int]:
        # lowest f, then larger g, then lower speed index
        return (self.f, -self.g, self.node.vidx, self.node.stage)


class OpenList:
    """Binary heap of records; positions live in the shared record table."""

    def __init__(self) -> None:
        self._heap: List[SearchNodeRecord] = []

    def __len__(self) -> int:
        return len(self._heap)

    def push(self, rec: SearchNodeRecord) -> None:
        rec.pos = len(self._heap)
        self._heap.append(rec)
        self._sift_up(rec.pos)

    def update(self, rec: SearchNodeRecord) -> None:
        """Restore heap order after ``rec``'s key changed."""
        self._sift_up(rec.pos)
        self._sift_down(rec.pos)

    def pop(self) -> SearchNodeRecord:
        heap = self._heap
        top = heap[0]
        last = heap.pop()
        if heap:
            heap[0] = last
            last.pos = 0
            self._sift_down(0)
        top.pos = -1
        return top

    def _swap(self, i: int, j: int) -> None:
        heap = self._heap
        heap[i], heap[j] = heap[j], heap[i]
        heap[i].pos = i
        heap[j].pos = j

    def _sift_up(self, i: int) -> None:
        heap = self._heap
        while i > 0:
            parent = (i - 1) >> 1
            if heap[i].key() < heap[parent].key():
                self._swap(i, parent)
                i = parent
            else:
                break

    def _sift_down(self, i: int) -> None:
        heap = self._heap
        n = len(heap)
        while True:
            left = 2 * i + 1
            if left >= n:
                break
            best = left
            right = left + 1
            if right < n and heap[right].key() < heap[left].key():
                best = right
            if heap[best].key() < heap[i].key():
                self._swap(i, best)
                i = best
            else:
                break


def plan(problem: Problem, kind: HeuristicKind = HeuristicKind.PROPOSED,
         heuristic: Optional[Heuristic] = None) -> PlanResult:
    """Minimum-energy trajectory from the start node to the goal node."""
    h = heuristic if heuristic is not None else Heuristic(problem, kind)
    spec = problem.spec
    start, goal = spec.start, spec.goal
    n_stages = spec.n_stages

    table: Dict[NodeId, SearchNodeRecord] = {}
    open_list = OpenList()
    expanded = set()
    generated = 1
    reopened = 0

    h0 = h(start)
    if math.isinf(h0):
        return PlanResult.no_path(nodes_generated=generated)
    root = SearchNodeRecord(start, 0.0, h0, None)
    table[start] = root
    open_list.push(root)

    goal_rec = None
    while open_list:
        rec = open_list.pop()
        rec.status = CLOSED
        node = rec.node
        expanded.add(node)
        if node == goal:
            goal_rec = rec
            break
        if node.stage == n_stages:
            continue
        costs = problem.edge_row(node)
        stage = node.stage + 1
        g_here = rec.g
        for j in range(spec.n_speeds):
            c = costs[j]
            if c == math.inf:
                continue
            succ = NodeId(stage, j)
            g_new = g_here + float(c)
            other = table.get(succ)
            if other is not None and g_new >= other.g:
                continue
            h_succ = h(succ)
            if math.isinf(h_succ):
                continue
            if other is None:
                other = SearchNodeRecord(succ, g_new, g_new + h_succ, node)
                table[succ] = other
                open_list.push(other)
                generated += 1
                continue
            other.g = g_new
            other.f = g_new + h_succ
            other.parent = node
            if other.status == CLOSED:
                other.status = OPEN
                reopened += 1
                open_list.push(other)
            else:
                open_list.update(other)

    stats = dict(nodes_expanded=len(expanded), nodes_generated=generated,
                 reopen_count=reopened, expanded=frozenset(expanded))
    if goal_rec is None:
        return PlanResult.no_path(**stats)
    path = [goal]
    while table[path[-1]].parent is not None:
        path.append(table[path[-1]].parent)
    path.reverse()
    traj = build_trajectory(problem, path)
    return PlanResult(found=True, trajectory=traj, total_energy=traj[-1].energy,
                      path=path, **stats)
