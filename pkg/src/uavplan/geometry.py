"""Coverage-disk geometry for a fixed GBS association sequence.

Contains the closed-form waypoint construction that minimizes the longest
uncovered stretch of a mission, and the value of that minimum. All
functions are pure; points on a disk boundary are accepted as inside
within BOUNDARY_TOL.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ScenarioError
from .scenario import CoverageDisk, Point2, Scenario, dist

BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class AssociationSequence:
    """Ordered, pairwise-distinct 1-based GBS indices serving the UAV in turn."""

    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if len(self.indices) == 0:
            raise ScenarioError("association sequence must be non-empty")
        if any(i < 1 for i in self.indices):
            raise ScenarioError("GBS indices are 1-based")
        if len(set(self.indices)) != len(self.indices):
            raise ScenarioError(f"association sequence has repeated indices: {self.indices}")

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, i):
        return self.indices[i]


def check_sequence(seq: AssociationSequence, s: Scenario) -> None:
    """Raise if any index falls outside the scenario's GBS range."""
    for i in seq:
        if i > s.m:
            raise ScenarioError(f"sequence index {i} exceeds GBS count {s.m}")


@dataclass(frozen=True)
class WaypointPlan:
    """Critical waypoints of a mission: where each serving disk is entered/left.

    ``enter[i]`` / ``exit[i]`` belong to the disk of ``sequence[i]``;
    ``start`` and ``finish`` are the fixed mission endpoints. The flight
    path is the polyline start, enter[0], exit[0], ..., enter[-1],
    exit[-1], finish.
    """

    sequence: AssociationSequence
    enter: tuple[Point2, ...]
    exit: tuple[Point2, ...]
    start: Point2
    finish: Point2

    def __post_init__(self):
        n = len(self.sequence)
        if len(self.enter) != n or len(self.exit) != n:
            raise ScenarioError("enter/exit lists must match the sequence length")

    def chain(self) -> list[Point2]:
        """Full waypoint polyline including the mission endpoints."""
        pts = [self.start]
        for e, x in zip(self.enter, self.exit):
            pts.append(e)
            pts.append(x)
        pts.append(self.finish)
        return pts

    def path_length(self) -> float:
        pts = self.chain()
        return sum(dist(a, b) for a, b in zip(pts, pts[1:]))

    def gap_lengths(self) -> list[float]:
        """Lengths of the uncovered hand-over segments, in chain order."""
        pts = self.chain()
        return [dist(pts[2 * i], pts[2 * i + 1]) for i in range(len(self.sequence) + 1)]


def project_to_disk(p: Point2, disk: CoverageDisk) -> Point2:
    """Closest point of the disk to ``p`` (p itself when already inside)."""
    d = dist(p, disk.center)
    if d <= disk.radius:
        return p
    f = disk.radius / d
    return Point2(
        disk.center.x + f * (p.x - disk.center.x),
        disk.center.y + f * (p.y - disk.center.y),
    )


def _boundary_toward(center: Point2, radius: float, target: Point2) -> Point2:
    """Point of the circle around ``center`` lying on the ray toward ``target``."""
    d = dist(center, target)
    if d == 0.0:
        raise ScenarioError("degenerate geometry: coincident center and target")
    f = radius / d
    return Point2(center.x + f * (target.x - center.x), center.y + f * (target.y - center.y))


def min_outage_waypoints(seq: AssociationSequence, s: Scenario) -> WaypointPlan:
    """Closed-form waypoints minimizing the longest uncovered stretch.

    Entry into the first disk is the boundary point facing the start
    (or the start itself when covered); exit from the last disk faces the
    finish symmetrically. Between consecutive disks both hand-over points
    lie on the segment joining the two centers: the exit on the first
    boundary, the entry either coinciding with it (overlapping disks) or
    on the second boundary.
    """
    check_sequence(seq, s)
    r = s.coverage_radius()
    centers = [s.gbs_point(i) for i in seq]
    n = len(seq)

    enter: list[Point2 | None] = [None] * n
    exit_: list[Point2 | None] = [None] * n

    if dist(s.u0, centers[0]) <= r:
        enter[0] = s.u0
    else:
        enter[0] = _boundary_toward(centers[0], r, s.u0)
    if dist(s.uF, centers[-1]) <= r:
        exit_[-1] = s.uF
    else:
        exit_[-1] = _boundary_toward(centers[-1], r, s.uF)

    for i in range(1, n):
        prev_c, cur_c = centers[i - 1], centers[i]
        exit_[i - 1] = _boundary_toward(prev_c, r, cur_c)
        if dist(cur_c, prev_c) <= 2.0 * r:
            enter[i] = exit_[i - 1]
        else:
            enter[i] = _boundary_toward(cur_c, r, prev_c)

    return WaypointPlan(
        sequence=seq,
        enter=tuple(enter),
        exit=tuple(exit_),
        start=s.u0,
        finish=s.uF,
    )


def min_outage_value(seq: AssociationSequence, s: Scenario) -> float:
    """Smallest achievable maximum outage duration for this sequence, in seconds."""
    check_sequence(seq, s)
    r = s.coverage_radius()
    centers = [s.gbs_point(i) for i in seq]
    worst = max(dist(s.u0, centers[0]) - r, dist(s.uF, centers[-1]) - r, 0.0)
    for a, b in zip(centers, centers[1:]):
        worst = max(worst, dist(a, b) - 2.0 * r)
    return worst / s.v_max_mps


def min_gap_lengths(seq: AssociationSequence, s: Scenario) -> list[float]:
    """Per-gap minima achievable by any waypoint choice, in meters.

    Entry 0 is the start leg, entries 1..N-1 the disk-to-disk hand-overs,
    entry N the finish leg.
    """
    check_sequence(seq, s)
    r = s.coverage_radius()
    centers = [s.gbs_point(i) for i in seq]
    gaps = [max(dist(s.u0, centers[0]) - r, 0.0)]
    for a, b in zip(centers, centers[1:]):
        gaps.append(max(dist(a, b) - 2.0 * r, 0.0))
    gaps.append(max(dist(s.uF, centers[-1]) - r, 0.0))
    return gaps
