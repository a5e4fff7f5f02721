"""Seeded task instantiation with solvability-preserving verification.

Every emitted instance has been replayed end to end: the reference
solution passes on the freshly built level, and again after every
distractor placement (placements that break it are rolled back).
"""

from __future__ import annotations

import math

from ..levelfile import action_to_dict
from ..trajectory import Unreachable, sample_parabola
from ..world import Episode, Level, release_to_velocity
from .authoring import DistractorPolicy, TaskInstance, TaskTemplate, block, derive_rng
from .templates import TEMPLATES

MAX_DRAWS = 100
SETTLE_DRIFT_TOLERANCE = 0.5

__all__ = ["GenerationExhausted", "instantiate", "add_distractors",
           "verify_instance", "catalog", "task_seed", "TEMPLATES"]


class GenerationExhausted(Exception):
    """Template parameter ranges rejected too many draws (authoring bug)."""


def catalog() -> list[TaskTemplate]:
    return [TEMPLATES[k] for k in sorted(TEMPLATES, key=_template_key)]


def _template_key(tid: str):
    s, t = tid.split(".")
    return (int(s), int(t))


def task_seed(template_id: str, index: int) -> int:
    """The shipped catalog's seed for task `index` of a template."""
    return derive_rng("catalog-seed", template_id, index).getrandbits(48)


def verify_instance(level: Level, actions, max_shift=SETTLE_DRIFT_TOLERANCE) -> bool:
    """Replay oracle: settled start, no build collapse, reference passes."""
    try:
        ep = Episode(level)
    except ValueError:
        return False
    if not ep.world.is_settled():
        return False
    # bodies are created in spec order with ids 1..n
    for body, spec in zip(ep.world.bodies, level.bodies):
        if body.dynamic:
            dx = body.px - spec.pos[0]
            dy = body.py - spec.pos[1]
            if dx * dx + dy * dy > max_shift * max_shift:
                return False
    if len(ep.world.bodies) != len(level.bodies):
        return False  # something got destroyed during the warm-up
    for action in actions:
        if ep.result() != "ongoing":
            break
        ep.launch(action)
    return ep.result() == "passed"


def _specs_overlap(a, b, margin=0.25) -> bool:
    ra = _spec_radius(a)
    rb = _spec_radius(b)
    dx = a.pos[0] - b.pos[0]
    dy = a.pos[1] - b.pos[1]
    r = ra + rb + margin
    return dx * dx + dy * dy < r * r


def _spec_radius(spec) -> float:
    s = spec.shape
    if s["kind"] == "circle":
        return s["radius"]
    if s["kind"] == "box":
        return math.hypot(s["half_w"], s["half_h"])
    return max(math.hypot(x, y) for x, y in s["verts"])


def add_distractors(level: Level, actions, policy: DistractorPolicy, rng) -> int:
    """Place up to max_count blocks in the allowed region; each placement
    is replay-verified and rolled back if it alters the solution or the
    initial stability.  Returns the number kept."""
    flight_points = []
    for action in actions:
        flight_points.extend(sample_parabola(
            level.anchor, release_to_velocity(action.release), step=1.0))

    placed = 0
    count = rng.randint(0, policy.max_count)
    for _ in range(count):
        name = rng.choice(policy.names)
        mat = rng.choice(policy.materials)
        x = rng.uniform(*policy.x_range)
        spec = block(name, x, support_top=policy.support_top, mat=mat,
                     tag="distractor")
        if any(_specs_overlap(spec, other) for other in level.bodies
               if other.tag != "ground"):
            continue
        r = _spec_radius(spec)
        if any(math.hypot(px - spec.pos[0], py - spec.pos[1]) < r + 1.5
               for px, py in flight_points):
            continue  # sits on the reference trajectory: pointless replay
        level.bodies.append(spec)
        if verify_instance(level, actions):
            placed += 1
        else:
            level.bodies.pop()
    return placed


def instantiate(template: TaskTemplate, seed: int, index: int = 0,
                distractors: bool = True, max_draws: int = MAX_DRAWS) -> TaskInstance:
    """Deterministically build a verified-solvable task for (template, seed)."""
    rng = derive_rng("task", template.id, seed)
    level = actions = None
    for _ in range(max_draws):
        params = template.draw_params(rng)
        candidate = template.build(params)
        candidate.meta = {"template": template.id, "seed": seed, "index": index}
        try:
            candidate_actions = template.solve(params, candidate)
        except Unreachable:
            continue
        if verify_instance(candidate, candidate_actions):
            level, actions = candidate, candidate_actions
            break
    if level is None:
        raise GenerationExhausted(
            f"template {template.id}: no solvable draw in {max_draws} attempts")
    if distractors and template.distractors is not None:
        add_distractors(level, actions, template.distractors, rng)
    level.meta["solution"] = [action_to_dict(a) for a in actions]
    return TaskInstance(template_id=template.id, seed=seed, index=index,
                        level=level, solution=actions)
