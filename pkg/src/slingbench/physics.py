"""Deterministic fixed-timestep 2D rigid-body world.

Design constraints, in order of priority:

* bitwise determinism: bodies stay sorted by id, every loop runs in id
  order, and nothing with randomized ordering is touched in the hot path;
* no energy injection: the solver is velocity-only (no positional
  correction), so potential energy can never be pumped in by push-out.
  Penetration is bounded by translation-capped substeps instead, which
  double as the anti-tunneling guarantee;
* resting stability: accumulated impulses are warm-started from the
  previous substep, otherwise stacked bodies creep through each other on
  the residual of the iterative solver;
* speed: scalar float math, flat solver rows, manifold reuse for pairs
  that have not moved, and convergence early-out.  Worlds here are small
  (tens of bodies), so an O(n^2) broad phase with AABB rejects wins over
  anything clever.
"""

from __future__ import annotations

import hashlib
import math
import struct

from .geometry import Circle, collide
from .materials import Material

__all__ = ["Body", "Contact", "World", "apply_damage", "GRAVITY", "DT",
           "V_EPS", "W_EPS", "SETTLE_TICKS", "SHOT_TIMEOUT"]

GRAVITY = (0.0, -9.8)
DT = 1.0 / 60.0

VELOCITY_ITERATIONS = 20
RESTITUTION_THRESHOLD = 1.0   # approach speed below this collides inelastically
MAX_TRANSLATION_PER_SUBSTEP = 0.25  # units; caps penetration and prevents tunneling
MAX_SUBSTEPS = 8
ANGULAR_DAMPING = 0.002       # per tick; hygiene for free spin, not a brake
ROLLING_RESISTANCE = 0.1      # angular dry friction per unit normal impulse
CONVERGENCE_EPS = 1e-10

V_EPS = 0.05
W_EPS = 0.05
SETTLE_TICKS = 30
SHOT_TIMEOUT = 30.0           # seconds of simulation per shot


class Body:
    __slots__ = (
        "id", "shape", "material", "px", "py", "angle", "vx", "vy", "w",
        "health", "dynamic", "tag", "mass", "inv_mass", "inv_inertia",
        "cos_a", "sin_a", "bradius",
    )

    def __init__(self, body_id, shape, material: Material, position, angle=0.0,
                 velocity=(0.0, 0.0), angular_velocity=0.0, dynamic=True,
                 health=None, tag=""):
        self.id = body_id
        self.shape = shape
        self.material = material
        self.px, self.py = float(position[0]), float(position[1])
        self.angle = float(angle)
        self.vx, self.vy = float(velocity[0]), float(velocity[1])
        self.w = float(angular_velocity)
        self.dynamic = bool(dynamic)
        self.tag = tag
        if self.dynamic:
            area = shape.area()
            self.mass = material.density * area
            self.inv_mass = 1.0 / self.mass
            inertia = self.mass * shape.inertia_per_mass()
            self.inv_inertia = 1.0 / inertia
        else:
            if tuple(velocity) != (0.0, 0.0) or angular_velocity != 0.0:
                raise ValueError("static bodies must have zero velocity")
            self.mass = 0.0
            self.inv_mass = 0.0
            self.inv_inertia = 0.0
        self.health = float(material.base_health if health is None else health)
        self.cos_a = math.cos(self.angle)
        self.sin_a = math.sin(self.angle)
        self.bradius = shape.bounding_radius()

    def refresh_trig(self):
        self.cos_a = math.cos(self.angle)
        self.sin_a = math.sin(self.angle)

    def speed(self) -> float:
        return math.sqrt(self.vx * self.vx + self.vy * self.vy)

    def world_verts(self):
        c, s = self.cos_a, self.sin_a
        px, py = self.px, self.py
        return [(px + c * x - s * y, py + s * x + c * y) for x, y in self.shape.verts]

    def __repr__(self):
        kind = self.shape.__class__.__name__.lower()
        return (f"Body(#{self.id} {self.tag or self.material.kind} {kind} "
                f"at ({self.px:.2f},{self.py:.2f}) hp={self.health:g})")


class Contact:
    """Resolved contact record: endpoint ids, point, normal, total normal impulse."""

    __slots__ = ("body_a", "body_b", "point", "normal", "impulse")

    def __init__(self, body_a, body_b, point, normal, impulse):
        self.body_a = body_a
        self.body_b = body_b
        self.point = point
        self.normal = normal
        self.impulse = impulse

    def __repr__(self):
        return (f"Contact({self.body_a}-{self.body_b} at "
                f"({self.point[0]:.2f},{self.point[1]:.2f}) J={self.impulse:.2f})")


def damage_from_impulse(material: Material, impulse: float) -> float:
    """HP lost by a body of the given material for one contact impulse."""
    excess = impulse - material.damage_threshold
    if excess <= 0.0:
        return 0.0
    return excess * material.damage_scale


def apply_damage(contacts, world: "World") -> None:
    """Apply impulse-threshold damage for externally held contact records.

    ``World.step`` already does this internally; the standalone form exists
    for replaying recorded contacts against a world.  Bodies driven to
    health <= 0 are removed immediately.
    """
    for contact in contacts:
        for body_id in (contact.body_a, contact.body_b):
            body = world.body_by_id(body_id)
            if body is None or not body.dynamic:
                continue
            body.health -= damage_from_impulse(body.material, contact.impulse)
    world._reap()


# solver row layout (plain lists are measurably faster than attribute access
# in the Gauss-Seidel loop)
_A, _B, _NX, _NY, _RAX, _RAY, _RBX, _RBY, _MN, _MT, _BIAS, _FR, _ACC_N, _ACC_T = range(14)


class World:
    """Fixed-timestep world; step() advances exactly one tick."""

    def __init__(self, gravity=GRAVITY, dt=DT, rng_seed=0, kill_bounds=None):
        self.gravity = (float(gravity[0]), float(gravity[1]))
        self.dt = float(dt)
        self.rng_seed = rng_seed
        self.tick = 0
        self.bodies: list[Body] = []
        self.calm_ticks = 0
        # bodies drifting outside this rect count as destroyed (fell out of
        # the level); (min_x, min_y, max_x, max_y)
        self.kill_bounds = kill_bounds
        self._next_id = 1
        self._removed: list[Body] = []
        self._warm: dict = {}       # (aid, bid, feature) -> (accum_n, accum_t)
        self._manifolds: dict = {}  # (aid, bid) -> (fingerprint, raw contact tuples)

    # ------------------------------------------------------------------
    # construction / bookkeeping

    def add_body(self, shape, material, position, **kw) -> Body:
        body = Body(self._next_id, shape, material, position, **kw)
        self._next_id += 1
        self.bodies.append(body)
        return body

    def remove_body(self, body: Body):
        self.bodies.remove(body)
        self._manifolds.clear()

    def body_by_id(self, body_id) -> Body | None:
        for b in self.bodies:
            if b.id == body_id:
                return b
        return None

    def dynamic_bodies(self):
        return [b for b in self.bodies if b.dynamic]

    def state_hash(self) -> str:
        h = hashlib.sha256()
        h.update(struct.pack("<qd", self.tick, self.dt))
        for b in self.bodies:
            h.update(struct.pack("<q8d", b.id, b.px, b.py, b.angle,
                                 b.vx, b.vy, b.w, b.health, 1.0 if b.dynamic else 0.0))
        return h.hexdigest()

    def energy(self) -> float:
        """Kinetic plus gravitational potential energy of all dynamic bodies."""
        gx, gy = self.gravity
        total = 0.0
        for b in self.bodies:
            if not b.dynamic:
                continue
            total += 0.5 * b.mass * (b.vx * b.vx + b.vy * b.vy)
            total += 0.5 * (b.mass * b.shape.inertia_per_mass()) * b.w * b.w
            total -= b.mass * (gx * b.px + gy * b.py)
        return total

    # ------------------------------------------------------------------
    # stepping

    def step(self) -> list[Contact]:
        """Advance one tick; returns contact records with resolved impulses."""
        dt = self.dt
        max_motion = 0.0
        for b in self.bodies:
            if not b.dynamic:
                continue
            motion = math.sqrt(b.vx * b.vx + b.vy * b.vy) + abs(b.w) * b.bradius
            if motion > max_motion:
                max_motion = motion
            b.w *= 1.0 - ANGULAR_DAMPING
        n_sub = int(max_motion * dt / MAX_TRANSLATION_PER_SUBSTEP) + 1
        if n_sub > MAX_SUBSTEPS:
            n_sub = MAX_SUBSTEPS
        h = dt / n_sub

        records: list[Contact] = []
        for _ in range(n_sub):
            self._substep(h, records)
        if self.kill_bounds is not None:
            x0, y0, x1, y1 = self.kill_bounds
            escaped = False
            for b in self.bodies:
                if b.dynamic and not (x0 <= b.px <= x1 and y0 <= b.py <= y1):
                    b.health = 0.0
                    escaped = True
            if escaped:
                self._reap()
        self.tick += 1

        calm = True
        for b in self.bodies:
            if b.dynamic and (b.vx * b.vx + b.vy * b.vy > V_EPS * V_EPS or abs(b.w) > W_EPS):
                calm = False
                break
        self.calm_ticks = self.calm_ticks + 1 if calm else 0
        return records

    def _substep(self, h, records):
        gx, gy = self.gravity
        bodies = self.bodies

        for b in bodies:
            if b.inv_mass != 0.0:
                b.vx += gx * h
                b.vy += gy * h

        rows = self._collect_rows()
        if rows:
            self._solve(rows)
            # rolling resistance: angular dry friction on circles, bounded
            # by the contact's normal impulse so flight is untouched and
            # slopes can still feed a roll
            for _, row in rows:
                acc_n = row[_ACC_N]
                if acc_n <= 0.0:
                    continue
                for body in (row[_A], row[_B]):
                    if body.inv_inertia != 0.0 and isinstance(body.shape, Circle):
                        dw = ROLLING_RESISTANCE * acc_n * body.shape.radius \
                            * body.inv_inertia
                        if body.w > dw:
                            body.w -= dw
                        elif body.w < -dw:
                            body.w += dw
                        else:
                            body.w = 0.0

        for b in bodies:
            if b.inv_mass != 0.0:
                b.px += b.vx * h
                b.py += b.vy * h
                b.angle += b.w * h
                b.refresh_trig()

        if rows:
            warm = {}
            for key, row in rows:
                impulse = row[_ACC_N]
                warm[key] = (impulse, row[_ACC_T])
                if impulse > 0.0:
                    a, b = row[_A], row[_B]
                    self._damage(a, impulse)
                    self._damage(b, impulse)
                    records.append(Contact(a.id, b.id,
                                           (a.px + row[_RAX], a.py + row[_RAY]),
                                           (row[_NX], row[_NY]), impulse))
            self._warm = warm
            self._reap()
        else:
            self._warm = {}

    def _collect_rows(self):
        """Broad + narrow phase; returns [(warm_key, solver_row), ...].

        Pairs whose bodies have not moved since the previous substep reuse
        the cached manifold instead of re-running the narrow phase.
        """
        bodies = self.bodies
        n = len(bodies)
        manifolds = self._manifolds
        new_manifolds = {}
        warm = self._warm
        rows = []
        for i in range(n):
            a = bodies[i]
            ra = a.bradius
            ax, ay = a.px, a.py
            a_static = a.inv_mass == 0.0
            for j in range(i + 1, n):
                b = bodies[j]
                if a_static and b.inv_mass == 0.0:
                    continue
                dx = b.px - ax
                dy = b.py - ay
                rr = ra + b.bradius
                if dx * dx + dy * dy > rr * rr:
                    continue
                pair = (a.id, b.id)
                fp = (ax, ay, a.angle, b.px, b.py, b.angle)
                cached = manifolds.get(pair)
                if cached is not None and cached[0] == fp:
                    raw = cached[1]
                else:
                    raw = [(cp.px, cp.py, cp.nx, cp.ny, cp.feature)
                           for cp in collide(a, b)]
                new_manifolds[pair] = (fp, raw)
                if not raw:
                    continue
                restitution = max(a.material.restitution, b.material.restitution)
                friction = math.sqrt(a.material.friction * b.material.friction)
                for px, py, nx, ny, feature in raw:
                    rax = px - a.px
                    ray = py - a.py
                    rbx = px - b.px
                    rby = py - b.py
                    rn_a = rax * ny - ray * nx
                    rn_b = rbx * ny - rby * nx
                    mass_n = 1.0 / (a.inv_mass + b.inv_mass
                                    + a.inv_inertia * rn_a * rn_a
                                    + b.inv_inertia * rn_b * rn_b)
                    # tangent is the normal rotated +90deg
                    rt_a = rax * nx + ray * ny
                    rt_b = rbx * nx + rby * ny
                    mass_t = 1.0 / (a.inv_mass + b.inv_mass
                                    + a.inv_inertia * rt_a * rt_a
                                    + b.inv_inertia * rt_b * rt_b)
                    dvx = (b.vx - b.w * rby) - (a.vx - a.w * ray)
                    dvy = (b.vy + b.w * rbx) - (a.vy + a.w * rax)
                    vn = dvx * nx + dvy * ny
                    bias = -restitution * vn if vn < -RESTITUTION_THRESHOLD else 0.0
                    key = (a.id, b.id, feature)
                    acc_n, acc_t = warm.get(key, (0.0, 0.0))
                    rows.append((key, [a, b, nx, ny, rax, ray, rbx, rby,
                                       mass_n, mass_t, bias, friction, acc_n, acc_t]))
        self._manifolds = new_manifolds
        # warm starting happens after every bias has been measured from the
        # pristine substep-start velocities, else earlier rows' impulses
        # fabricate restitution targets for later rows
        for _, row in rows:
            acc_n, acc_t = row[_ACC_N], row[_ACC_T]
            if acc_n != 0.0 or acc_t != 0.0:
                a, b = row[_A], row[_B]
                nx, ny = row[_NX], row[_NY]
                rax, ray, rbx, rby = row[_RAX], row[_RAY], row[_RBX], row[_RBY]
                ix = acc_n * nx - acc_t * ny
                iy = acc_n * ny + acc_t * nx
                a.vx -= ix * a.inv_mass
                a.vy -= iy * a.inv_mass
                a.w -= a.inv_inertia * (rax * iy - ray * ix)
                b.vx += ix * b.inv_mass
                b.vy += iy * b.inv_mass
                b.w += b.inv_inertia * (rbx * iy - rby * ix)
        return rows

    def _solve(self, keyed_rows):
        rows = [row for _, row in keyed_rows]
        for _ in range(VELOCITY_ITERATIONS):
            biggest = 0.0
            for row in rows:
                (a, b, nx, ny, rax, ray, rbx, rby,
                 mass_n, mass_t, bias, friction, acc_n, acc_t) = row

                dvx = (b.vx - b.w * rby) - (a.vx - a.w * ray)
                dvy = (b.vy + b.w * rbx) - (a.vy + a.w * rax)
                vn = dvx * nx + dvy * ny
                new_n = acc_n - (vn - bias) * mass_n
                if new_n < 0.0:
                    new_n = 0.0
                dlam = new_n - acc_n
                if dlam != 0.0:
                    row[_ACC_N] = new_n
                    px, py = dlam * nx, dlam * ny
                    a.vx -= px * a.inv_mass
                    a.vy -= py * a.inv_mass
                    a.w -= a.inv_inertia * (rax * py - ray * px)
                    b.vx += px * b.inv_mass
                    b.vy += py * b.inv_mass
                    b.w += b.inv_inertia * (rbx * py - rby * px)
                    if dlam > biggest:
                        biggest = dlam
                    elif -dlam > biggest:
                        biggest = -dlam
                    acc_n = new_n

                tx, ty = -ny, nx
                dvx = (b.vx - b.w * rby) - (a.vx - a.w * ray)
                dvy = (b.vy + b.w * rbx) - (a.vy + a.w * rax)
                vt = dvx * tx + dvy * ty
                new_t = acc_t - vt * mass_t
                max_t = friction * acc_n
                if new_t > max_t:
                    new_t = max_t
                elif new_t < -max_t:
                    new_t = -max_t
                dlam_t = new_t - acc_t
                if dlam_t != 0.0:
                    row[_ACC_T] = new_t
                    px, py = dlam_t * tx, dlam_t * ty
                    a.vx -= px * a.inv_mass
                    a.vy -= py * a.inv_mass
                    a.w -= a.inv_inertia * (rax * py - ray * px)
                    b.vx += px * b.inv_mass
                    b.vy += py * b.inv_mass
                    b.w += b.inv_inertia * (rbx * py - rby * px)
                    if dlam_t > biggest:
                        biggest = dlam_t
                    elif -dlam_t > biggest:
                        biggest = -dlam_t
            if biggest < CONVERGENCE_EPS:
                break

    def _damage(self, body, impulse):
        if not body.dynamic:
            return
        mat = body.material
        excess = impulse - mat.damage_threshold
        if excess > 0.0:
            body.health -= excess * mat.damage_scale

    def _reap(self):
        dead = [b for b in self.bodies if b.dynamic and b.health <= 0.0]
        if dead:
            self._removed.extend(dead)
            self.bodies = [b for b in self.bodies if not (b.dynamic and b.health <= 0.0)]
            self._manifolds.clear()

    def drain_removed(self) -> list[Body]:
        """Bodies destroyed since the last call (world keeps no further history)."""
        out = self._removed
        self._removed = []
        return out

    # ------------------------------------------------------------------
    # settle detection

    def is_settled(self) -> bool:
        """True when every dynamic body has stayed below the motion thresholds
        for SETTLE_TICKS consecutive ticks (vacuously true with no dynamic
        bodies)."""
        if not any(b.dynamic for b in self.bodies):
            return True
        return self.calm_ticks >= SETTLE_TICKS

    def settle(self, max_seconds=SHOT_TIMEOUT) -> bool:
        """Step until settled or the time budget runs out; returns is_settled."""
        max_ticks = int(max_seconds / self.dt)
        for _ in range(max_ticks):
            if self.is_settled():
                return True
            self.step()
        return self.is_settled()
