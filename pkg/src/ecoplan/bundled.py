"""The bundled 1 km benchmark: a smooth hill with grades up to 4 %."""

from importlib import resources

from .grid import GridSpec
from .io import read_road_csv, read_vehicle_config
from .model import RoadProfile, VehicleParams
from .problem import Problem

DEFAULT_GRID = dict(ds=10.0, v_min=5.0, v_max=40.0, dv=0.5, v_init=20.0, v_goal=20.0)


def road_path():
    return resources.files("ecoplan") / "data" / "benchmark_road.csv"


def vehicle_path():
    return resources.files("ecoplan") / "data" / "benchmark_vehicle.json"


def road() -> RoadProfile:
    with resources.as_file(road_path()) as p:
        return read_road_csv(p)


def vehicle() -> VehicleParams:
    with resources.as_file(vehicle_path()) as p:
        return read_vehicle_config(p)


def grid(r: RoadProfile = None, **overrides) -> GridSpec:
    r = road() if r is None else r
    fields = dict(s_start=r.s_min, s_goal=r.s_max, **DEFAULT_GRID)
    fields.update(overrides)
    return GridSpec(**fields)


def problem(**overrides) -> Problem:
    r = road()
    return Problem(grid(r, **overrides), vehicle(), r)
