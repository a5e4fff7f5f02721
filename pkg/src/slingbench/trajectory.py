"""Shot planning: closed-form projectile solutions and obstruction checks.

Flight is drag-free, so the parabola is exact up to integrator error
(about g*dt*t/2 of drift, well under a bird radius for level-scale
flights).  All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Circle
from .world import BIRD_RADIUS, V_MAX, velocity_to_release

G = 9.8

__all__ = ["ArcSolution", "Unreachable", "solve_release", "solve_through_points",
           "first_obstruction", "aim_at_body", "sample_parabola"]


class Unreachable(Exception):
    """No ballistic path reaches the target at the given speed."""


@dataclass
class ArcSolution:
    release: tuple            # drag offset encoding this launch
    arc: str                  # "low" | "high"
    launch_angle: float       # radians
    speed: float
    anchor: tuple
    target: tuple
    predicted_path: list      # polyline of world points, starts at anchor

    @property
    def velocity(self) -> tuple:
        return (self.speed * math.cos(self.launch_angle),
                self.speed * math.sin(self.launch_angle))


def sample_parabola(anchor, velocity, step=BIRD_RADIUS / 2, floor_y=-2.0,
                    max_x_span=220.0):
    """Polyline along the drag-free parabola, spaced <= step in arc length."""
    x0, y0 = anchor
    vx, vy = velocity
    speed = math.hypot(vx, vy)
    if speed < 1e-9:
        return [tuple(anchor)]
    pts = [(x0, y0)]
    t = 0.0
    dt = step / speed
    while True:
        t += dt
        x = x0 + vx * t
        y = y0 + vy * t - 0.5 * G * t * t
        pts.append((x, y))
        if y < floor_y or abs(x - x0) > max_x_span:
            break
        # keep spacing near `step` as the flight speeds up falling
        cur_speed = math.hypot(vx, vy - G * t)
        dt = step / max(cur_speed, 1e-6)
    return pts


def solve_release(anchor, target, speed=V_MAX):
    """Launch angles hitting `target` from `anchor` at `speed`.

    Returns one or two ArcSolutions ordered low then high.  Raises
    Unreachable when the discriminant is negative or the geometry is
    degenerate (target at the anchor, or directly above/below it).
    """
    if speed <= 0.0 or speed > V_MAX + 1e-9:
        raise ValueError(f"speed must be in (0, {V_MAX}], got {speed}")
    dx = target[0] - anchor[0]
    dy = target[1] - anchor[1]
    if math.hypot(dx, dy) < 1e-9:
        raise Unreachable("target coincides with the anchor")
    if abs(dx) < 1e-9:
        raise Unreachable("target directly above/below the anchor")

    v2 = speed * speed
    disc = v2 * v2 - G * (G * dx * dx + 2.0 * dy * v2)
    if disc < 0.0:
        raise Unreachable(f"target {target} outside range at speed {speed:g}")
    root = math.sqrt(disc)

    tangents = [(v2 - root) / (G * dx), (v2 + root) / (G * dx)]
    solutions = []
    for tan_t in tangents:
        cos_t = 1.0 / math.sqrt(1.0 + tan_t * tan_t)
        if dx < 0.0:
            cos_t = -cos_t
        vx = speed * cos_t
        vy = speed * cos_t * tan_t
        angle = math.atan2(vy, vx)
        path = sample_parabola(anchor, (vx, vy))
        solutions.append(ArcSolution(
            release=velocity_to_release((vx, vy)),
            arc="low", launch_angle=angle, speed=speed,
            anchor=tuple(anchor), target=tuple(target),
            predicted_path=path))
    solutions.sort(key=lambda s: abs(s.launch_angle))
    solutions[0].arc = "low"
    if len(solutions) == 2:
        if abs(solutions[0].launch_angle - solutions[1].launch_angle) < 1e-12:
            solutions = solutions[:1]  # apex-of-range: the two arcs merge
        else:
            solutions[1].arc = "high"
    return solutions


def solve_through_points(anchor, p1, p2):
    """The unique parabola from anchor passing through p1 then p2.

    Returns (velocity, speed) or raises Unreachable (flat/rising chord or
    speed beyond the slingshot's maximum).  Used to thread openings: hit
    p1 (e.g. a slit center) and continue into p2.
    """
    x0, y0 = anchor
    x1, y1 = p1[0] - x0, p1[1] - y0
    x2, y2 = p2[0] - x0, p2[1] - y0
    if abs(x1) < 1e-9 or abs(x2) < 1e-9 or abs(x2 - x1) < 1e-9:
        raise Unreachable("degenerate through-points geometry")
    # y = T x - k x^2 with k = g / (2 v^2 cos^2 theta)
    det = x1 * x2 * (x2 - x1)
    if abs(det) < 1e-12:
        raise Unreachable("through-points are collinear with the anchor")
    T = (y1 * x2 * x2 - y2 * x1 * x1) / det
    k = (x1 * T - y1) / (x1 * x1)
    if k <= 1e-12:
        raise Unreachable("no downward-curving parabola through both points")
    v2 = G * (1.0 + T * T) / (2.0 * k)
    speed = math.sqrt(v2)
    if speed > V_MAX + 1e-9:
        raise Unreachable(f"needs speed {speed:.2f} > max {V_MAX}")
    cos_t = 1.0 / math.sqrt(1.0 + T * T)
    if x1 < 0.0:
        cos_t = -cos_t
    return (speed * cos_t, speed * cos_t * T), speed


def _disk_hits_body(body, cx, cy, r) -> bool:
    shape = body.shape
    if isinstance(shape, Circle):
        return math.hypot(body.px - cx, body.py - cy) < r + shape.radius
    # distance from point to convex polygon (0 when inside)
    verts = body.world_verts()
    n = len(verts)
    inside = True
    min_d = math.inf
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        ex, ey = x2 - x1, y2 - y1
        if ex * (cy - y1) - ey * (cx - x1) < 0.0:
            inside = False
        t = ((cx - x1) * ex + (cy - y1) * ey) / (ex * ex + ey * ey)
        t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
        min_d = min(min_d, math.hypot(cx - (x1 + t * ex), cy - (y1 + t * ey)))
    return inside or min_d < r


def first_obstruction(path, world, radius=BIRD_RADIUS, skip_ids=(),
                      skip_initial=1.5):
    """First body id whose shape intersects a bird-radius disk along `path`.

    Points closer than `skip_initial` to the path start are ignored so the
    slingshot's own podium never reads as an obstruction.
    """
    if not path:
        return None
    x0, y0 = path[0]
    for (cx, cy) in path:
        if math.hypot(cx - x0, cy - y0) < skip_initial:
            continue
        for body in world.bodies:
            if body.id in skip_ids:
                continue
            dx = body.px - cx
            dy = body.py - cy
            reach = radius + body.bradius
            if dx * dx + dy * dy > reach * reach:
                continue
            if _disk_hits_body(body, cx, cy, radius):
                return body.id
    return None


def aim_at_body(anchor, body, world=None, speed=V_MAX):
    """Arc solutions toward a body: centroid first, topmost point as the
    fallback when the centroid is out of ballistic range."""
    try:
        return solve_release(anchor, (body.px, body.py), speed)
    except Unreachable:
        top = (body.px, body.py + body.bradius)
        return solve_release(anchor, top, speed)
