"""Building blocks for scenario templates: placement helpers and the
template/`instance` dataclasses.

Conventions shared by every template: the ground surface is at y=2, the
slingshot anchor at (10, 6), and all dynamic bodies are placed exactly
resting so freshly built levels settle within the warm-up budget.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field

from ..materials import material
from ..world import BIRDS, BLOCKS, PIGS, Action, BodySpec, Level, block_shape

GROUND_TOP = 2.0
ANCHOR = (10.0, 6.0)

__all__ = [
    "GROUND_TOP", "ANCHOR", "TaskTemplate", "TaskInstance", "DistractorPolicy",
    "ground", "plat", "ramp", "wall", "block", "pig", "bouncy_pad",
    "derive_rng", "rest_y",
]


def derive_rng(*keys) -> random.Random:
    """Deterministic RNG keyed by arbitrary values (stable across runs)."""
    digest = hashlib.sha256(":".join(str(k) for k in keys).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


# ----------------------------------------------------------------------
# body spec helpers

def ground(width=84.0) -> BodySpec:
    return BodySpec({"kind": "box", "half_w": width / 2, "half_h": GROUND_TOP / 2},
                    "platform", (width / 2, GROUND_TOP / 2), dynamic=False,
                    tag="ground")


def plat(x, y, half_w, half_h, angle=0.0, tag="plat", restitution=None) -> BodySpec:
    return BodySpec({"kind": "box", "half_w": half_w, "half_h": half_h},
                    "platform", (x, y), angle=angle, dynamic=False, tag=tag,
                    restitution=restitution)


def wall(x, y_bottom, y_top, half_w=0.4, tag="wall") -> BodySpec:
    return plat(x, (y_bottom + y_top) / 2, half_w, (y_top - y_bottom) / 2, tag=tag)


def ramp(x_start, y_start, length, angle_deg, half_h=0.3, tag="ramp") -> BodySpec:
    """Inclined platform whose top surface runs from (x_start, y_start)
    along `angle_deg` (positive = ascending to the right)."""
    a = math.radians(angle_deg)
    mx = x_start + 0.5 * length * math.cos(a)
    my = y_start + 0.5 * length * math.sin(a)
    # drop the center below the surface line by the half thickness
    nx, ny = -math.sin(a), math.cos(a)
    return plat(mx - nx * half_h, my - ny * half_h, length / 2, half_h,
                angle=a, tag=tag)


def bouncy_pad(x, y, half_w=1.6, angle_deg=0.0, tag="pad") -> BodySpec:
    return BodySpec({"kind": "box", "half_w": half_w, "half_h": 0.25},
                    "platform", (x, y), angle=math.radians(angle_deg),
                    dynamic=False, tag=tag, restitution=0.9, friction=0.3)


def rest_y(block_name: str, support_top: float) -> float:
    """Center height for a catalog block resting on a flat support."""
    kind, *dims = BLOCKS[block_name]
    if kind == "circle":
        return support_top + dims[0]
    if kind == "box":
        return support_top + dims[1]
    # triangle: centroid sits one third above the base
    return support_top + dims[0] / 3.0


def block(name, x, support_top=None, y=None, mat="wood", angle=0.0, hp=None,
          tag=None) -> BodySpec:
    kind, *dims = BLOCKS[name]
    shape = ({"kind": "circle", "radius": dims[0]} if kind == "circle" else
             {"kind": "box", "half_w": dims[0], "half_h": dims[1]} if kind == "box"
             else {"kind": "triangle",
                   "verts": [(0.0, 0.0), (dims[0], 0.0), (0.0, dims[0])]})
    if y is None:
        y = rest_y(name, GROUND_TOP if support_top is None else support_top)
    return BodySpec(shape, mat, (x, y), angle=angle, health=hp,
                    tag=tag or f"block:{name}")


def pig(x, support_top=None, y=None, size="small", hp=None) -> BodySpec:
    spec = PIGS[size]
    if y is None:
        y = (GROUND_TOP if support_top is None else support_top) + spec.radius
    health = hp if hp is not None else material("pig").base_health * spec.health_multiplier
    return BodySpec({"kind": "circle", "radius": spec.radius}, "pig", (x, y),
                    tag=f"pig:{size}", health=health)


# ----------------------------------------------------------------------
# template plumbing

@dataclass(frozen=True)
class DistractorPolicy:
    """Where extra blocks may be dropped without touching the solution."""
    x_range: tuple                      # allowed ground span
    support_top: float = GROUND_TOP
    max_count: int = 4
    names: tuple = ("square_small", "square", "circle_small")
    materials: tuple = ("wood", "ice", "stone")


@dataclass(frozen=True)
class TaskTemplate:
    """A parameterized layout solvable by one strategic rule.

    `params` maps names to uniform ranges; `build(params)` yields a Level;
    `solve(params, level)` yields the reference action sequence via one
    rule shared by all instances (no per-instance tuning).
    """
    id: str
    scenario: int
    name: str
    params: dict
    build: callable
    solve: callable
    distractors: DistractorPolicy | None = None
    birds_hint: str = "red"

    def draw_params(self, rng: random.Random) -> dict:
        return {k: rng.uniform(lo, hi) for k, (lo, hi) in self.params.items()}


@dataclass
class TaskInstance:
    template_id: str
    seed: int
    index: int
    level: Level
    solution: list  # list[Action]
