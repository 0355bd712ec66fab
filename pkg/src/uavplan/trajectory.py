"""Time-parameterized flight paths and their communication audits.

``synthesize`` turns a waypoint plan into a constant-speed piecewise-linear
trajectory; ``audit_outage`` computes the outage intervals of any
trajectory exactly by intersecting each linear segment with every
coverage disk (no sampling error). A sampled audit exists purely as a
cross-check.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass

from .geometry import WaypointPlan
from .scenario import Point2, Scenario, closest_gbs, dist

_COLLAPSE_TOL = 1e-12


@dataclass(frozen=True)
class Trajectory:
    """Piecewise-linear path flown at constant maximum speed.

    ``critical_times`` holds the (enter, leave) instants of each serving
    disk for trajectories synthesized from a waypoint plan; it is None for
    raw polylines (straight flight, grid paths).
    """

    times: tuple[float, ...]
    points: tuple[Point2, ...]
    speed_mps: float
    critical_times: tuple[tuple[float, float], ...] | None = None

    @property
    def duration_s(self) -> float:
        return self.times[-1]

    def position(self, t: float) -> Point2:
        """Linear interpolation; clamps outside [0, T]."""
        if t <= self.times[0]:
            return self.points[0]
        if t >= self.times[-1]:
            return self.points[-1]
        k = bisect_right(self.times, t) - 1
        t0, t1 = self.times[k], self.times[k + 1]
        if t1 == t0:
            return self.points[k]
        f = (t - t0) / (t1 - t0)
        a, b = self.points[k], self.points[k + 1]
        return Point2(a.x + f * (b.x - a.x), a.y + f * (b.y - a.y))


@dataclass(frozen=True)
class OutageReport:
    """Maximal outage intervals of one mission, ordered and disjoint."""

    intervals: tuple[tuple[float, float], ...]
    max_outage_s: float
    total_outage_s: float

    def to_dict(self) -> dict:
        return {
            "intervals": [[a, b] for a, b in self.intervals],
            "max_outage_s": self.max_outage_s,
            "total_outage_s": self.total_outage_s,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def trajectory_from_polyline(points, s: Scenario) -> Trajectory:
    """Constant-speed trajectory through the given points, zero-length runs collapsed."""
    pts = [Point2(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise ValueError("polyline needs at least one point")
    kept = [pts[0]]
    for p in pts[1:]:
        if dist(p, kept[-1]) > _COLLAPSE_TOL:
            kept.append(p)
    times = [0.0]
    for a, b in zip(kept, kept[1:]):
        times.append(times[-1] + dist(a, b) / s.v_max_mps)
    return Trajectory(times=tuple(times), points=tuple(kept), speed_mps=s.v_max_mps)


def synthesize(plan: WaypointPlan, s: Scenario) -> Trajectory:
    """Trajectory visiting the plan's waypoints in order at maximum speed.

    Segment times follow from cumulative length over speed; zero-length
    segments (seamless hand-overs) are collapsed so no duplicate
    timestamps are emitted, but every critical instant is still reported.
    """
    chain = plan.chain()
    v = s.v_max_mps
    cumulative = [0.0]
    for a, b in zip(chain, chain[1:]):
        cumulative.append(cumulative[-1] + dist(a, b) / v)

    critical = tuple(
        (cumulative[2 * i + 1], cumulative[2 * i + 2]) for i in range(len(plan.sequence))
    )

    times = [0.0]
    points = [chain[0]]
    for t, p in zip(cumulative[1:], chain[1:]):
        if t - times[-1] > _COLLAPSE_TOL:
            times.append(t)
            points.append(p)
    return Trajectory(
        times=tuple(times), points=tuple(points), speed_mps=v, critical_times=critical
    )


def segment_coverage_intervals(p: Point2, q: Point2, centers, radius: float):
    """Covered sub-intervals of segment p->q as fractions in [0, 1].

    Each disk cuts at most one chord out of the segment; the union of all
    chords is returned as a sorted list of merged closed intervals.
    """
    dx, dy = q[0] - p[0], q[1] - p[1]
    a = dx * dx + dy * dy
    spans = []
    if a == 0.0:
        for c in centers:
            if math.hypot(p[0] - c[0], p[1] - c[1]) <= radius:
                return [(0.0, 1.0)]
        return []
    r2 = radius * radius
    for c in centers:
        px, py = p[0] - c[0], p[1] - c[1]
        b = 2.0 * (dx * px + dy * py)
        cc = px * px + py * py - r2
        disc = b * b - 4.0 * a * cc
        if disc < 0.0:
            continue
        root = math.sqrt(disc)
        lo = (-b - root) / (2.0 * a)
        hi = (-b + root) / (2.0 * a)
        lo, hi = max(lo, 0.0), min(hi, 1.0)
        if lo <= hi:
            spans.append((lo, hi))
    if not spans:
        return []
    spans.sort()
    merged = [spans[0]]
    for lo, hi in spans[1:]:
        if lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def audit_outage(t: Trajectory, s: Scenario) -> OutageReport:
    """Exact outage intervals of a trajectory.

    Per segment, coverage is the union of the segment-disk chords; its
    complement is outage. Outage runs crossing breakpoints are merged. A
    point exactly on a disk boundary counts as covered.
    """
    radius = s.coverage_radius()
    centers = s.gbs
    out: list[list[float]] = []

    def push(t0: float, t1: float) -> None:
        if out and t0 <= out[-1][1] + 0.0:
            out[-1][1] = max(out[-1][1], t1)
        else:
            out.append([t0, t1])

    if len(t.points) == 1:
        covered = any(dist(t.points[0], c) <= radius for c in centers)
        if not covered:
            push(0.0, t.times[-1])
    for k in range(len(t.points) - 1):
        t0, t1 = t.times[k], t.times[k + 1]
        span = t1 - t0
        covered = segment_coverage_intervals(t.points[k], t.points[k + 1], centers, radius)
        cursor = 0.0
        for lo, hi in covered:
            if lo > cursor:
                push(t0 + cursor * span, t0 + lo * span)
            cursor = max(cursor, hi)
        if cursor < 1.0:
            push(t0 + cursor * span, t1)

    intervals = tuple((a, b) for a, b in out if b > a)
    max_outage = max((b - a for a, b in intervals), default=0.0)
    total = sum(b - a for a, b in intervals)
    return OutageReport(intervals=intervals, max_outage_s=max_outage, total_outage_s=total)


def audit_outage_sampled(t: Trajectory, s: Scenario, dt_s: float) -> float:
    """Max outage estimated on a uniform time grid; cross-check only."""
    radius = s.coverage_radius()
    n = int(math.floor(t.duration_s / dt_s)) if dt_s > 0 else 0
    worst = 0
    run = 0
    for k in range(n + 1):
        p = t.position(k * dt_s)
        _, d = closest_gbs(p, s)
        if d > radius:
            run += 1
            worst = max(worst, run)
        else:
            run = 0
    return worst * dt_s


def snr_trace(t: Trajectory, s: Scenario, dt_s: float):
    """(time, SNR in dB, serving GBS index) samples along the trajectory.

    Samples every dt_s plus all breakpoint times. The SNR follows the
    line-of-sight power law over the 3D distance to the closest GBS.
    """
    if dt_s <= 0:
        raise ValueError("dt_s must be positive")
    dh2 = (s.uav_altitude_m - s.gbs_height_m) ** 2
    instants = sorted(
        {round(k * dt_s, 12) for k in range(int(math.floor(t.duration_s / dt_s)) + 1)}
        | set(t.times)
    )
    rows = []
    for ti in instants:
        p = t.position(ti)
        idx, d = closest_gbs(p, s)
        snr_db = s.ref_snr_db - 10.0 * math.log10(dh2 + d * d)
        rows.append((ti, snr_db, idx))
    return rows


def write_trajectory_csv(t: Trajectory, s: Scenario, fh, dt_s: float) -> None:
    """CSV export with one row per sample and per breakpoint."""
    radius = s.coverage_radius()
    fh.write("t_s,x_m,y_m,serving_gbs,snr_dB,in_outage\n")
    for ti, snr_db, idx in snr_trace(t, s, dt_s):
        p = t.position(ti)
        _, d = closest_gbs(p, s)
        outage = int(d > radius)
        fh.write(f"{ti!r},{p.x!r},{p.y!r},{idx},{snr_db!r},{outage}\n")
