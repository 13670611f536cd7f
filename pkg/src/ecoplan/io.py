"""Road-profile CSV and vehicle-config readers."""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from pathlib import Path
from typing import Union

import numpy as np

from .model import ConfigError, RoadProfile, RoadProfileError, VehicleParams

ROAD_HEADER = ["s_m", "elevation_m"]

PathLike = Union[str, Path]


def _number(text: str, lineno: int, column: str) -> float:
    try:
        x = float(text.strip())
    except ValueError:
        raise RoadProfileError(f"line {lineno}: {column} is not a number: {text!r}") from None
    if not math.isfinite(x):
        raise RoadProfileError(f"line {lineno}: {column} must be finite")
    return x


def read_road_csv(path: PathLike) -> RoadProfile:
    """Parse a ``s_m,elevation_m`` CSV.  Errors cite the 1-based file line."""
    s, h = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip() for c in header] != ROAD_HEADER:
            raise RoadProfileError(f"line 1: expected header {','.join(ROAD_HEADER)}")
        for row in reader:
            lineno = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise RoadProfileError(f"line {lineno}: expected 2 fields, got {len(row)}")
            x = _number(row[0], lineno, "s_m")
            if s and x <= s[-1]:
                raise RoadProfileError(f"line {lineno}: s_m={x} does not increase")
            s.append(x)
            h.append(_number(row[1], lineno, "elevation_m"))
    if len(s) < 2:
        raise RoadProfileError("road profile needs at least two samples")
    return RoadProfile(np.array(s), np.array(h))


def write_road_csv(road: RoadProfile, path: PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(ROAD_HEADER)
        for x, y in zip(road.s, road.h):
            w.writerow([repr(float(x)), repr(float(y))])


_VEHICLE_FIELDS = {f.name for f in dataclasses.fields(VehicleParams)}


def vehicle_from_mapping(data: dict) -> VehicleParams:
    unknown = sorted(set(data) - _VEHICLE_FIELDS)
    if unknown:
        raise ConfigError(f"unknown vehicle keys: {', '.join(unknown)}")
    kwargs = {}
    for key, value in data.items():
        if key == "F_prop_max" and value is None:
            kwargs[key] = None
            continue
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"vehicle key {key} must be a number")
        kwargs[key] = float(value)
    try:
        return VehicleParams(**kwargs)
    except TypeError as exc:  # missing required field
        raise ConfigError(str(exc)) from None


def read_vehicle_config(path: PathLike) -> VehicleParams:
    """Flat JSON object keyed by :class:`VehicleParams` field names (SI)."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a flat JSON object")
    return vehicle_from_mapping(data)


def vehicle_to_mapping(p: VehicleParams) -> dict:
    return dataclasses.asdict(p)
