"""Game semantics on top of the physics core.

A Level is a static description (slingshot anchor, bird queue, bodies);
an Episode owns the live world and enforces the shot lifecycle: convert a
release offset to a launch velocity, fly the bird, activate its power at
the scheduled fraction of the planned arc, and step until the world
settles or the shot times out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import Circle, Polygon
from .materials import Material, material
from .physics import DT, SHOT_TIMEOUT, World

__all__ = [
    "BIRDS", "PIGS", "BLOCKS", "Level", "BodySpec", "Action", "Episode",
    "EpisodeOutcome", "ShotResult", "release_to_velocity", "velocity_to_release",
    "WorldError", "NoBirdsLeft", "EpisodeOver", "PowerAlreadyUsed", "NoPower",
    "ZeroStretch", "V_MAX", "MAX_STRETCH", "LEVEL_W", "LEVEL_H", "BIRD_RADIUS",
]

V_MAX = 30.0          # launch speed at full stretch, units/s
MAX_STRETCH = 2.0     # maximum drag distance, units
LEVEL_W = 84.0
LEVEL_H = 48.0
BIRD_RADIUS = 0.5

ACCEL_FACTOR = 1.8    # yellow: forward speed multiplier on tap
SPLIT_ANGLE = math.radians(12.0)  # blue: fan half-angle
SPLIT_CHILD_RADIUS = 0.4
BLAST_RADIUS = 5.0
BLAST_IMPULSE = 40.0  # momentum at blast center, decays linearly to the rim
BLAST_DAMAGE = 60.0
EGG_SPEED = 15.0
EGG_RADIUS = 0.3


class WorldError(Exception):
    pass


class NoBirdsLeft(WorldError):
    pass


class EpisodeOver(WorldError):
    pass


class PowerAlreadyUsed(WorldError):
    pass


class NoPower(WorldError):
    pass


class ZeroStretch(WorldError):
    pass


@dataclass(frozen=True)
class BirdSpec:
    name: str
    power: str     # none | accelerate | split3 | drop_egg | explode
    radius: float


BIRDS = {
    "red": BirdSpec("red", "none", 0.5),
    "yellow": BirdSpec("yellow", "accelerate", 0.5),
    "blue": BirdSpec("blue", "split3", 0.45),
    "white": BirdSpec("white", "drop_egg", 0.55),
    "black": BirdSpec("black", "explode", 0.55),
}


@dataclass(frozen=True)
class PigSpec:
    name: str
    radius: float
    health_multiplier: float


PIGS = {
    "small": PigSpec("small", 0.6, 1.0),
    "medium": PigSpec("medium", 0.85, 2.0),
    "large": PigSpec("large", 1.2, 4.0),
}

# the block shape catalog (12 variations); triangles are right isoceles
BLOCKS = {
    "square_small": ("box", 0.35, 0.35),
    "square": ("box", 0.6, 0.6),
    "rect_h": ("box", 1.2, 0.3),
    "rect_v": ("box", 0.3, 1.2),
    "plank": ("box", 1.8, 0.18),
    "pillar": ("box", 0.25, 1.5),
    "slab": ("box", 0.9, 0.6),
    "circle_small": ("circle", 0.35),
    "circle": ("circle", 0.55),
    "circle_big": ("circle", 1.0),
    "triangle": ("tri", 1.2),
    "triangle_big": ("tri", 2.0),
}


def block_shape(name: str):
    kind, *dims = BLOCKS[name]
    if kind == "circle":
        return Circle(dims[0])
    if kind == "box":
        return Polygon.box(dims[0], dims[1])
    side = dims[0]
    return Polygon.triangle((0.0, 0.0), (side, 0.0), (0.0, side))


@dataclass
class BodySpec:
    """Serializable body description inside a Level."""
    shape: dict            # {"kind": "circle"|"box"|"triangle", ...dims}
    material: str
    pos: tuple
    angle: float = 0.0
    dynamic: bool = True
    tag: str = ""
    health: float | None = None
    restitution: float | None = None
    friction: float | None = None

    def build_shape(self):
        s = self.shape
        kind = s["kind"]
        if kind == "circle":
            return Circle(s["radius"])
        if kind == "box":
            return Polygon.box(s["half_w"], s["half_h"])
        if kind == "triangle":
            return Polygon.triangle(*[tuple(v) for v in s["verts"]])
        raise ValueError(f"unknown shape kind {kind!r}")

    def build_material(self) -> Material:
        base = material(self.material)
        if self.restitution is None and self.friction is None:
            return base
        return Material(
            base.kind, base.density,
            base.restitution if self.restitution is None else self.restitution,
            base.friction if self.friction is None else self.friction,
            base.base_health, base.damage_threshold, base.damage_scale,
        )


@dataclass
class Level:
    anchor: tuple
    birds: list
    bodies: list            # list[BodySpec]
    bounds: tuple = (LEVEL_W, LEVEL_H)
    meta: dict = field(default_factory=dict)

    def validate(self):
        if not self.birds:
            raise ValueError("level needs at least one bird")
        for name in self.birds:
            if name not in BIRDS:
                raise ValueError(f"unknown bird type {name!r}")
        if not any(spec.tag.startswith("pig") for spec in self.bodies):
            raise ValueError("level needs at least one pig")
        w, h = self.bounds
        for spec in self.bodies:
            x, y = spec.pos
            if not (-1.0 <= x <= w + 1.0 and -1.0 <= y <= h + 1.0):
                raise ValueError(f"body at ({x:.1f},{y:.1f}) outside bounds {self.bounds}")


@dataclass(frozen=True)
class Action:
    """Slingshot action: drag offset relative to the anchor, optional tap.

    The drag is opposite the launch direction; magnitude beyond MAX_STRETCH
    is clamped, not rejected.  tap_fraction schedules power activation at
    that fraction of the planned flight-path length.
    """
    release: tuple
    tap_fraction: float | None = None

    def __post_init__(self):
        if self.tap_fraction is not None and not 0.0 <= self.tap_fraction <= 1.0:
            raise ValueError("tap_fraction must be in [0,1]")


@dataclass
class ShotResult:
    action: Action
    bird: str
    pigs_destroyed: int
    blocks_destroyed: int
    first_hit: int | None     # body id of the bird's first impact
    ticks: int
    settled: bool


@dataclass
class EpisodeOutcome:
    passed: bool
    birds_used: int
    pigs_destroyed: int
    shot_log: list


def release_to_velocity(release) -> tuple:
    """Map a drag offset to a launch velocity: direction opposite the drag,
    speed linear in stretch and clamped at V_MAX."""
    dx, dy = release
    mag = math.sqrt(dx * dx + dy * dy)
    if mag < 1e-9:
        raise ZeroStretch("release offset is zero")
    speed = V_MAX * min(mag / MAX_STRETCH, 1.0)
    return (-dx / mag * speed, -dy / mag * speed)


def velocity_to_release(velocity) -> tuple:
    """Inverse of release_to_velocity for speeds within V_MAX."""
    vx, vy = velocity
    speed = math.sqrt(vx * vx + vy * vy)
    if speed < 1e-9:
        raise ZeroStretch("velocity is zero")
    stretch = MAX_STRETCH * min(speed / V_MAX, 1.0)
    return (-vx / speed * stretch, -vy / speed * stretch)


def planned_flight_length(anchor, velocity, floor_y=0.0, max_span=400.0) -> float:
    """Arc length of the drag-free parabola from anchor until it falls to
    floor_y (or spans out); used to schedule tap fractions."""
    x, y = anchor
    vx, vy = velocity
    g = 9.8
    length = 0.0
    h = DT
    travelled = 0.0
    while travelled < max_span:
        vy -= g * h
        nx_, ny_ = x + vx * h, y + vy * h
        seg = math.sqrt((nx_ - x) ** 2 + (ny_ - y) ** 2)
        length += seg
        travelled += abs(vx * h)
        x, y = nx_, ny_
        if y < floor_y:
            break
    return length


class Episode:
    """Live game episode: a world built from a Level plus the shot queue."""

    def __init__(self, level: Level, rng_seed: int = 0, presettle: bool = True):
        level.validate()
        self.level = level
        w, h = level.bounds
        self.world = World(rng_seed=rng_seed,
                           kill_bounds=(-12.0, -6.0, w + 12.0, 140.0))
        for spec in level.bodies:
            self.world.add_body(
                spec.build_shape(), spec.build_material(), spec.pos,
                angle=spec.angle, dynamic=spec.dynamic, tag=spec.tag,
                health=spec.health)
        self.next_bird = 0
        self.shot_log: list[ShotResult] = []
        self._power_state: dict = {}
        if presettle:
            self.world.settle(5.0)

    # ------------------------------------------------------------------
    # queries

    def birds_remaining(self) -> int:
        return len(self.level.birds) - self.next_bird

    def pigs(self):
        return [b for b in self.world.bodies if b.tag.startswith("pig")]

    def pigs_remaining(self) -> int:
        return len(self.pigs())

    def result(self) -> str:
        """'passed' | 'failed' | 'ongoing' (pass always wins over bird count)."""
        if self.pigs_remaining() == 0:
            return "passed"
        if self.birds_remaining() == 0:
            return "failed"
        return "ongoing"

    def outcome(self) -> EpisodeOutcome:
        return EpisodeOutcome(
            passed=self.result() == "passed",
            birds_used=self.next_bird,
            pigs_destroyed=sum(s.pigs_destroyed for s in self.shot_log),
            shot_log=list(self.shot_log),
        )

    # ------------------------------------------------------------------
    # the shot

    def launch(self, action: Action) -> ShotResult:
        state = self.result()
        if state == "passed" or state == "failed":
            raise EpisodeOver(f"episode already {state}")
        if self.birds_remaining() <= 0:
            raise NoBirdsLeft("bird queue is empty")

        bird_name = self.level.birds[self.next_bird]
        spec = BIRDS[bird_name]
        velocity = release_to_velocity(action.release)
        bird = self.world.add_body(
            Circle(spec.radius), material("bird"), self.level.anchor,
            velocity=velocity, tag=f"bird:{bird_name}")
        self.next_bird += 1
        self._power_state[bird.id] = {
            "type": bird_name, "used": False, "armed": False, "contacted": False,
        }

        tap_target = None
        if action.tap_fraction is not None and spec.power != "none":
            total = planned_flight_length(self.level.anchor, velocity)
            tap_target = action.tap_fraction * total

        pigs_before = self.pigs_remaining()
        blocks_before = self._blocks_remaining()

        flight_ids = {bird.id}      # bird plus anything it spawns
        first_hit = None
        travelled = 0.0
        px, py = bird.px, bird.py
        max_ticks = int(SHOT_TIMEOUT / self.world.dt)
        ticks = 0
        self.world.calm_ticks = 0
        for _ in range(max_ticks):
            contacts = self.world.step()
            ticks += 1

            hit_ids = self._note_contacts(contacts, flight_ids)
            if first_hit is None and hit_ids:
                first_hit = hit_ids[0]

            live_bird = self.world.body_by_id(bird.id)
            if live_bird is not None:
                travelled += math.sqrt((live_bird.px - px) ** 2 + (live_bird.py - py) ** 2)
                px, py = live_bird.px, live_bird.py
                st = self._power_state[bird.id]
                if (tap_target is not None and not st["used"]
                        and not st["contacted"] and travelled >= tap_target):
                    self.activate_power(bird.id, flight_ids)

            self._resolve_fuses(contacts, flight_ids)

            if self.pigs_remaining() == 0:
                break
            if self.world.is_settled():
                break

        # spent birds (and leftovers like eggs) vanish at the end of the shot
        for b in list(self.world.bodies):
            if b.tag.startswith("bird") or b.tag == "egg":
                self.world.remove_body(b)

        shot = ShotResult(
            action=action, bird=bird_name,
            pigs_destroyed=pigs_before - self.pigs_remaining(),
            blocks_destroyed=blocks_before - self._blocks_remaining(),
            first_hit=first_hit, ticks=ticks, settled=self.world.is_settled(),
        )
        self.shot_log.append(shot)
        return shot

    def _blocks_remaining(self) -> int:
        return sum(1 for b in self.world.bodies
                   if b.dynamic and not b.tag.startswith(("pig", "bird")) and b.tag != "egg")

    def _note_contacts(self, contacts, flight_ids):
        """Record first-contact flags; returns non-flight ids hit this tick."""
        hits = []
        for c in contacts:
            for fid, other in ((c.body_a, c.body_b), (c.body_b, c.body_a)):
                if fid in flight_ids:
                    st = self._power_state.get(fid)
                    if st is not None:
                        st["contacted"] = True
                    if other not in flight_ids:
                        hits.append(other)
        return hits

    def _resolve_fuses(self, contacts, flight_ids):
        """Armed bombs and eggs explode on their first contact."""
        exploded = []
        for c in contacts:
            for fid in (c.body_a, c.body_b):
                st = self._power_state.get(fid)
                if st is None or fid in exploded:
                    continue
                if st.get("fused") and not st.get("detonated"):
                    body = self.world.body_by_id(fid)
                    if body is not None:
                        st["detonated"] = True
                        exploded.append(fid)
                        self._explode(body, st["blast_radius"], st["blast_impulse"],
                                      st["blast_damage"])

    # ------------------------------------------------------------------
    # powers

    def activate_power(self, bird_id: int, flight_ids=None) -> None:
        """Trigger the bird's power mid-flight (at most once per bird).

        After the bird's first world contact this is a no-op for the tap
        scheduler, but calling it directly raises like a bad tap would.
        """
        st = self._power_state.get(bird_id)
        bird = self.world.body_by_id(bird_id)
        if st is None or bird is None:
            raise WorldError(f"no live bird with id {bird_id}")
        kind = st["type"]
        power = BIRDS[kind].power
        if power == "none":
            raise NoPower(f"{kind} bird has no power")
        if st["used"]:
            raise PowerAlreadyUsed(f"{kind} bird already used its power")
        st["used"] = True
        if flight_ids is None:
            flight_ids = {bird_id}

        if power == "accelerate":
            speed = bird.speed()
            if speed > 1e-9:
                bird.vx *= ACCEL_FACTOR
                bird.vy *= ACCEL_FACTOR
        elif power == "split3":
            speed = bird.speed()
            if speed < 1e-9:
                return
            heading = math.atan2(bird.vy, bird.vx)
            perp = (-math.sin(heading), math.cos(heading))
            gap = SPLIT_CHILD_RADIUS * 2.2
            self.world.remove_body(bird)
            for k, da in enumerate((-SPLIT_ANGLE, 0.0, SPLIT_ANGLE)):
                off = (k - 1) * gap
                child = self.world.add_body(
                    Circle(SPLIT_CHILD_RADIUS), material("bird"),
                    (bird.px + perp[0] * off, bird.py + perp[1] * off),
                    velocity=(speed * math.cos(heading + da),
                              speed * math.sin(heading + da)),
                    tag="bird:blue")
                flight_ids.add(child.id)
                self._power_state[child.id] = {
                    "type": "blue", "used": True, "armed": False, "contacted": False,
                }
        elif power == "drop_egg":
            egg = self.world.add_body(
                Circle(EGG_RADIUS), material("bird"),
                (bird.px, bird.py - BIRDS[kind].radius - EGG_RADIUS - 0.05),
                velocity=(0.0, -EGG_SPEED), tag="egg")
            flight_ids.add(egg.id)
            self._power_state[egg.id] = {
                "type": "egg", "used": True, "armed": False, "contacted": False,
                "fused": True, "detonated": False,
                "blast_radius": BLAST_RADIUS * 0.8,
                "blast_impulse": BLAST_IMPULSE * 0.8,
                "blast_damage": BLAST_DAMAGE * 0.8,
            }
            # the bird itself pops up and away
            bird.vx *= 0.3
            bird.vy = 12.0
        elif power == "explode":
            st["fused"] = True
            st["detonated"] = False
            st["blast_radius"] = BLAST_RADIUS
            st["blast_impulse"] = BLAST_IMPULSE
            st["blast_damage"] = BLAST_DAMAGE
        else:
            raise WorldError(f"unhandled power {power!r}")

    def _explode(self, body, radius, impulse, damage):
        cx, cy = body.px, body.py
        self.world.remove_body(body)
        for other in list(self.world.bodies):
            if not other.dynamic:
                continue
            dx, dy = other.px - cx, other.py - cy
            dist = math.sqrt(dx * dx + dy * dy)
            if dist >= radius:
                continue
            falloff = 1.0 - dist / radius
            if dist > 1e-9:
                j = impulse * falloff * other.inv_mass
                other.vx += dx / dist * j
                other.vy += dy / dist * j
            else:
                other.vy += impulse * other.inv_mass
            if other.material.destructible:
                other.health -= damage * falloff
                if other.health <= 0.0:
                    self.world._removed.append(other)
                    self.world.remove_body(other)
        self.world.calm_ticks = 0
