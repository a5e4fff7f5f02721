"""Material catalog: mass, surface response, and impact-damage constants.

Damage is impulse-thresholded: a contact hurts a body only by the excess
of its normal impulse over the material threshold, scaled per material.
Thresholds sit above the per-tick impulse of realistic resting stacks so
standing structures do not grind themselves down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["Material", "MATERIALS", "material"]

INFINITE_HEALTH = math.inf


@dataclass(frozen=True)
class Material:
    kind: str
    density: float
    restitution: float
    friction: float
    base_health: float
    damage_threshold: float
    damage_scale: float

    def __post_init__(self):
        if not 0.0 <= self.restitution <= 1.0:
            raise ValueError(f"restitution must be in [0,1], got {self.restitution}")
        if self.friction < 0.0:
            raise ValueError("friction must be >= 0")
        if self.kind != "platform" and self.density <= 0.0:
            raise ValueError("dynamic materials need positive density")

    @property
    def destructible(self) -> bool:
        return math.isfinite(self.base_health)


# Density/restitution/friction orderings: ice is light, slick, and brittle;
# stone is heavy, dull, and grippy; wood sits in between.
MATERIALS = {
    "wood": Material("wood", density=1.0, restitution=0.2, friction=0.5,
                     base_health=25.0, damage_threshold=3.0, damage_scale=0.7),
    "ice": Material("ice", density=0.7, restitution=0.1, friction=0.1,
                    base_health=8.0, damage_threshold=2.0, damage_scale=1.2),
    "stone": Material("stone", density=2.5, restitution=0.1, friction=0.6,
                      base_health=40.0, damage_threshold=5.0, damage_scale=0.35),
    "pig": Material("pig", density=1.0, restitution=0.1, friction=0.4,
                    base_health=8.0, damage_threshold=1.0, damage_scale=1.0),
    "bird": Material("bird", density=2.0, restitution=0.4, friction=0.5,
                     base_health=50.0, damage_threshold=4.0, damage_scale=0.3),
    "platform": Material("platform", density=0.0, restitution=0.0, friction=0.6,
                         base_health=INFINITE_HEALTH, damage_threshold=INFINITE_HEALTH,
                         damage_scale=0.0),
}


def material(kind: str) -> Material:
    try:
        return MATERIALS[kind]
    except KeyError:
        raise KeyError(f"unknown material kind {kind!r}") from None


def bouncy_platform(restitution: float = 0.9) -> Material:
    """Platform variant used for bounce pads; same class, springier surface."""
    base = MATERIALS["platform"]
    return Material("platform", base.density, restitution, 0.3,
                    base.base_health, base.damage_threshold, base.damage_scale)
