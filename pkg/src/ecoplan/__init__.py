"""Energy-optimal longitudinal velocity planning on a (distance, velocity) grid."""

from .grid import GridSpec, NodeId, node_state, successors
from .heuristics import HeuristicKind
from .model import (ConfigError, EdgeEnergy, RoadProfile, RoadProfileError,
                    VehicleParams, edge_energy, resistance_force,
                    total_power_equivalent)
from .problem import Problem

__all__ = [
    "ConfigError", "EdgeEnergy", "GridSpec", "HeuristicKind", "NodeId", "Problem",
    "RoadProfile", "RoadProfileError", "VehicleParams", "edge_energy",
    "node_state", "resistance_force", "successors", "total_power_equivalent",
]
