"""Mission/world description: GBS layout, UAV endpoints, link budget.

A Scenario is immutable after construction and safe to share between
threads. All coordinates are double-precision meters on a flat plane;
GBS indices are 1-based everywhere in the public API.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ScenarioError

SCENARIO_FORMAT = "uav-scenario/1"


class Point2(NamedTuple):
    x: float
    y: float


def dist(a: Point2, b: Point2) -> float:
    """Euclidean distance between two planar points."""
    return math.hypot(a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True)
class CoverageDisk:
    """Horizontal disk around a GBS inside which the SNR target is met."""

    center: Point2
    radius: float

    def contains(self, p: Point2, tol: float = 0.0) -> bool:
        return dist(p, self.center) <= self.radius + tol


@dataclass(frozen=True)
class Scenario:
    """World description for one planning problem.

    Fields mirror the scenario file schema; SNR values are carried in dB
    and converted to linear ratios only when the coverage radius is
    derived. ``coverage_radius_override_m`` pins the radius directly so
    desk-scale tests can fix geometry without SNR bookkeeping.
    """

    gbs: tuple[Point2, ...]
    u0: Point2
    uF: Point2
    uav_altitude_m: float
    gbs_height_m: float
    v_max_mps: float
    ref_snr_db: float
    snr_target_db: float
    coverage_radius_override_m: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "gbs", tuple(Point2(float(x), float(y)) for x, y in self.gbs))
        object.__setattr__(self, "u0", Point2(float(self.u0[0]), float(self.u0[1])))
        object.__setattr__(self, "uF", Point2(float(self.uF[0]), float(self.uF[1])))
        self._validate()

    def _validate(self) -> None:
        if len(self.gbs) < 1:
            raise ScenarioError("at least one GBS is required")
        for p in (*self.gbs, self.u0, self.uF):
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise ScenarioError(f"non-finite coordinate {p}")
        for k in range(len(self.gbs)):
            for j in range(k + 1, len(self.gbs)):
                if self.gbs[k] == self.gbs[j]:
                    raise ScenarioError(
                        f"GBS positions must be pairwise distinct; {k + 1} and {j + 1} coincide"
                    )
        if not self.uav_altitude_m > self.gbs_height_m:
            raise ScenarioError("uav_altitude_m must exceed gbs_height_m")
        if self.gbs_height_m < 0:
            raise ScenarioError("gbs_height_m must be non-negative")
        if not self.v_max_mps > 0:
            raise ScenarioError("v_max_mps must be positive")
        if self.coverage_radius_override_m is None:
            # fails early with the named invariant instead of at first use
            derive_coverage_radius(self)
        elif not self.coverage_radius_override_m > 0:
            raise ScenarioError("coverage_radius_override_m must be positive")

    @property
    def m(self) -> int:
        """Number of GBSs."""
        return len(self.gbs)

    def gbs_point(self, index: int) -> Point2:
        """Position of GBS ``index`` (1-based)."""
        if not 1 <= index <= self.m:
            raise IndexError(f"GBS index {index} out of range 1..{self.m}")
        return self.gbs[index - 1]

    def coverage_radius(self) -> float:
        return derive_coverage_radius(self)

    def disks(self) -> list[CoverageDisk]:
        r = self.coverage_radius()
        return [CoverageDisk(g, r) for g in self.gbs]


def derive_coverage_radius(s: Scenario) -> float:
    """Maximum horizontal UAV-GBS distance at which the SNR target holds.

    Returns the override when set. Otherwise converts the dB link budget
    to a linear ratio and takes sqrt(ratio - (H - H_G)^2).
    """
    if s.coverage_radius_override_m is not None:
        return s.coverage_radius_override_m
    ratio = 10.0 ** ((s.ref_snr_db - s.snr_target_db) / 10.0)
    dh = s.uav_altitude_m - s.gbs_height_m
    radicand = ratio - dh * dh
    if radicand <= 0.0:
        raise ScenarioError(
            "SNR target unreachable even at zero horizontal distance "
            f"(ratio {ratio:.6g} <= (H - H_G)^2 = {dh * dh:.6g})"
        )
    return math.sqrt(radicand)


def closest_gbs(p: Point2, s: Scenario) -> tuple[int, float]:
    """Index (1-based) and horizontal distance of the nearest GBS.

    Ties are broken by the lowest index.
    """
    best_i, best_d = 1, dist(p, s.gbs[0])
    for i, g in enumerate(s.gbs[1:], start=2):
        d = dist(p, g)
        if d < best_d:
            best_i, best_d = i, d
    return best_i, best_d


def _point_from_json(value, key: str) -> Point2:
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise ScenarioError(f"'{key}' must be an [x, y] pair")
    try:
        return Point2(float(value[0]), float(value[1]))
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"'{key}' has non-numeric coordinates") from exc


def scenario_from_dict(doc: dict) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    if doc.get("format") != SCENARIO_FORMAT:
        raise ScenarioError(f"unsupported format {doc.get('format')!r}, expected {SCENARIO_FORMAT!r}")
    required = ["gbs", "u0", "uF", "uav_altitude_m", "gbs_height_m", "v_max_mps", "ref_snr_dB", "snr_target_dB"]
    missing = [k for k in required if k not in doc]
    if missing:
        raise ScenarioError(f"missing keys: {', '.join(missing)}")
    raw_gbs = doc["gbs"]
    if not isinstance(raw_gbs, list):
        raise ScenarioError("'gbs' must be an array of [x, y] pairs")
    gbs = tuple(_point_from_json(g, f"gbs[{i}]") for i, g in enumerate(raw_gbs))
    try:
        scalars = {k: float(doc[k]) for k in ("uav_altitude_m", "gbs_height_m", "v_max_mps", "ref_snr_dB", "snr_target_dB")}
    except (TypeError, ValueError) as exc:
        raise ScenarioError("scalar fields must be numbers") from exc
    override = doc.get("coverage_radius_override_m")
    return Scenario(
        gbs=gbs,
        u0=_point_from_json(doc["u0"], "u0"),
        uF=_point_from_json(doc["uF"], "uF"),
        uav_altitude_m=scalars["uav_altitude_m"],
        gbs_height_m=scalars["gbs_height_m"],
        v_max_mps=scalars["v_max_mps"],
        ref_snr_db=scalars["ref_snr_dB"],
        snr_target_db=scalars["snr_target_dB"],
        coverage_radius_override_m=None if override is None else float(override),
    )


def scenario_to_dict(s: Scenario) -> dict:
    doc = {
        "format": SCENARIO_FORMAT,
        "gbs": [[g.x, g.y] for g in s.gbs],
        "u0": [s.u0.x, s.u0.y],
        "uF": [s.uF.x, s.uF.y],
        "uav_altitude_m": s.uav_altitude_m,
        "gbs_height_m": s.gbs_height_m,
        "v_max_mps": s.v_max_mps,
        "ref_snr_dB": s.ref_snr_db,
        "snr_target_dB": s.snr_target_db,
    }
    if s.coverage_radius_override_m is not None:
        doc["coverage_radius_override_m"] = s.coverage_radius_override_m
    return doc


def load_scenario(path) -> Scenario:
    """Load and validate a scenario JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"malformed scenario file {path}: {exc}") from exc
    return scenario_from_dict(doc)


def save_scenario(s: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(s), fh, indent=2)
        fh.write("\n")


def generate_random_scenario(
    m: int,
    box_m: float,
    seed: int,
    *,
    uav_altitude_m: float = 90.0,
    gbs_height_m: float = 12.5,
    v_max_mps: float = 50.0,
    ref_snr_db: float = 80.0,
    snr_target_db: float = 20.0,
) -> Scenario:
    """Scenario with ``m`` GBSs placed uniformly in a box_m x box_m region.

    Mission endpoints sit at 10% and 90% of the box diagonal. Defaults
    reproduce the standard experiment parameterization.
    """
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, box_m, size=(m, 2))
    # uniform doubles never collide in practice; resample defensively anyway
    while len({(x, y) for x, y in pts}) < m:
        pts = rng.uniform(0.0, box_m, size=(m, 2))
    return Scenario(
        gbs=tuple(Point2(float(x), float(y)) for x, y in pts),
        u0=Point2(0.1 * box_m, 0.1 * box_m),
        uF=Point2(0.9 * box_m, 0.9 * box_m),
        uav_altitude_m=uav_altitude_m,
        gbs_height_m=gbs_height_m,
        v_max_mps=v_max_mps,
        ref_snr_db=ref_snr_db,
        snr_target_db=snr_target_db,
    )
