"""The scenario template catalog: two templates per physical scenario.

Templates within a scenario share one strategic rule (that is the point
of the scenario split); they differ in layout and parameter ranges.
Every `solve` is a single parameterized rule: no instance sees special
casing, and the generator replays the produced actions to guarantee
solvability before an instance is emitted.
"""

from __future__ import annotations

import math

from ..trajectory import Unreachable, first_obstruction, sample_parabola, solve_release, solve_through_points
from ..world import Action, Episode, Level, release_to_velocity, velocity_to_release, V_MAX
from .authoring import (
    ANCHOR, GROUND_TOP, DistractorPolicy, TaskTemplate, block, bouncy_pad,
    ground, pig, plat, ramp, rest_y, wall,
)

SCENARIO_NAMES = {
    1: "single force", 2: "multiple forces", 3: "rolling", 4: "falling",
    5: "sliding", 6: "bouncing", 7: "relative weight", 8: "relative height",
    9: "relative width", 10: "shape difference", 11: "non-greedy actions",
    12: "structural analysis", 13: "clearing paths", 14: "adequate timing",
    15: "manoeuvring",
}

TEMPLATES: dict[str, TaskTemplate] = {}


def template(id, scenario, name, params, birds="red", distractors=None):
    def wrap(factory):
        build, solve = factory()
        TEMPLATES[id] = TaskTemplate(
            id=id, scenario=scenario, name=name, params=params,
            build=build, solve=solve, distractors=distractors, birds_hint=birds)
        return factory
    return wrap


def aim(target, arc="low", speed=V_MAX, tap=None) -> Action:
    sols = solve_release(ANCHOR, target, speed)
    sol = sols[0] if arc == "low" or len(sols) == 1 else sols[1]
    return Action(release=sol.release, tap_fraction=tap)


def aim_clear(level: Level, target, speed=V_MAX, tap=None,
              accept_tags=("pig",)) -> Action:
    """First arc whose first obstruction is the target itself (or nothing)."""
    ep = Episode(level, presettle=False)
    for sol in solve_release(ANCHOR, target, speed):
        hit = first_obstruction(sol.predicted_path, ep.world)
        if hit is None:
            return Action(release=sol.release, tap_fraction=tap)
        body = ep.world.body_by_id(hit)
        if body is not None and body.tag.startswith(accept_tags):
            if math.hypot(body.px - target[0], body.py - target[1]) < 3.0:
                return Action(release=sol.release, tap_fraction=tap)
    # no clean arc: fall back to the low arc
    return Action(release=solve_release(ANCHOR, target, speed)[0].release,
                  tap_fraction=tap)


def spec_by_tag(level: Level, tag: str):
    for spec in level.bodies:
        if spec.tag == tag:
            return spec
    raise KeyError(tag)


# ======================================================================
# scenario 1: single force — shoot the pig directly

@template("1.1", 1, "lone pig on open ground",
          params={"pig_x": (38.0, 62.0)},
          distractors=DistractorPolicy(x_range=(18.0, 32.0)))
def _t11():
    def build(p):
        return Level(anchor=ANCHOR, birds=["red"],
                     bodies=[ground(), pig(p["pig_x"])])

    def solve(p, level):
        target = spec_by_tag(level, "pig:small").pos
        return [aim_clear(level, target)]
    return build, solve


@template("1.2", 1, "pig on a pedestal",
          params={"pig_x": (42.0, 60.0), "pedestal_h": (4.0, 10.0)},
          distractors=DistractorPolicy(x_range=(18.0, 34.0)))
def _t12():
    def build(p):
        top = GROUND_TOP + p["pedestal_h"]
        return Level(anchor=ANCHOR, birds=["red"], bodies=[
            ground(),
            wall(p["pig_x"], GROUND_TOP, top, half_w=1.2, tag="pedestal"),
            pig(p["pig_x"], support_top=top),
        ])

    def solve(p, level):
        return [aim_clear(level, spec_by_tag(level, "pig:small").pos)]
    return build, solve


# ======================================================================
# scenario 2: multiple forces — the pig needs more than one hit

def _tough_pig(x, support_top=GROUND_TOP):
    # a full-stretch direct hit delivers ~45-50 damage; two are needed
    return pig(x, support_top=support_top, size="large", hp=60.0)


@template("2.1", 2, "tough pig on open ground",
          params={"pig_x": (38.0, 58.0)},
          distractors=DistractorPolicy(x_range=(18.0, 32.0)))
def _t21():
    def build(p):
        return Level(anchor=ANCHOR, birds=["red", "red"],
                     bodies=[ground(), _tough_pig(p["pig_x"])])

    def solve(p, level):
        target = spec_by_tag(level, "pig:large").pos
        act = aim_clear(level, target)
        return [act, act]
    return build, solve


@template("2.2", 2, "tough pig on a pedestal",
          params={"pig_x": (42.0, 58.0), "pedestal_h": (4.0, 9.0)},
          distractors=DistractorPolicy(x_range=(18.0, 34.0)))
def _t22():
    def build(p):
        top = GROUND_TOP + p["pedestal_h"]
        return Level(anchor=ANCHOR, birds=["red", "red"], bodies=[
            ground(),
            wall(p["pig_x"], GROUND_TOP, top, half_w=1.2, tag="pedestal"),
            _tough_pig(p["pig_x"], support_top=top),
        ])

    def solve(p, level):
        target = spec_by_tag(level, "pig:large").pos
        act = aim_clear(level, target)
        return [act, act]
    return build, solve


# ======================================================================
# scenario 3: rolling — roll a round object (or the bird) along a surface

def _tunnel(entrance_x, depth, clearance, roof_h=0.3):
    """Roof band making a ground tunnel open toward the slingshot."""
    x1 = entrance_x + depth
    y = GROUND_TOP + clearance + roof_h
    return plat((entrance_x + x1) / 2, y, depth / 2, roof_h, tag="roof")


@template("3.1", 3, "roll the bird into a sheltered pig",
          params={"entrance_x": (46.0, 58.0), "pig_depth": (5.0, 8.0),
                  "clearance": (2.3, 2.8)},
          distractors=DistractorPolicy(x_range=(18.0, 30.0)))
def _t31():
    def build(p):
        depth = p["pig_depth"] + 5.0
        return Level(anchor=ANCHOR, birds=["red"], bodies=[
            ground(),
            _tunnel(p["entrance_x"], depth, p["clearance"]),
            pig(p["entrance_x"] + p["pig_depth"]),
        ])

    def solve(p, level):
        # land short of the entrance and roll in along the ground
        touch = (p["entrance_x"] - 7.0, GROUND_TOP + 0.5)
        return [aim(touch, arc="low")]
    return build, solve


@template("3.2", 3, "roll the stone ball down a ramp",
          params={"plateau_h": (10.0, 13.0), "plateau_x": (28.0, 33.0),
                  "run": (1.0, 2.5)},
          distractors=DistractorPolicy(x_range=(14.0, 22.0)))
def _t32():
    RAMP_DEG = 28.0

    def build(p):
        top = GROUND_TOP + p["plateau_h"]
        x0 = p["plateau_x"]
        plateau_x1 = x0 + 5.0
        ramp_len = p["plateau_h"] / math.sin(math.radians(RAMP_DEG))
        ramp_dx = ramp_len * math.cos(math.radians(RAMP_DEG))
        entrance_x = plateau_x1 + ramp_dx + p["run"]
        return Level(anchor=ANCHOR, birds=["red"], bodies=[
            ground(),
            plat((x0 + plateau_x1) / 2, top - 0.3, 2.5, 0.3, tag="plateau"),
            ramp(plateau_x1, top, ramp_len, -RAMP_DEG, tag="ramp"),
            # ball at the plateau's left edge so the ascending low arc
            # reaches it broadside instead of lobbing onto it
            block("circle_big", x0 + 1.2, support_top=top, mat="stone", tag="ball"),
            _tunnel(entrance_x, 8.0, 2.6),
            pig(entrance_x + 4.0),
        ])

    def solve(p, level):
        ball = spec_by_tag(level, "ball").pos
        return [aim_clear(level, ball, accept_tags=("ball",))]
    return build, solve


# ======================================================================
# scenario 4: falling — drop a block through a slit onto the pig

def _slit_roof_level(p, block_name, block_mat, birds=("red",), slit_w=2.6):
    wall_x = p["wall_x"]
    roof_y = GROUND_TOP + p["roof_h"]
    slit_x = wall_x + p["slit_off"]
    roof_end = slit_x + slit_w / 2 + 10.0
    bx = slit_x - p["block_back"]
    return Level(anchor=ANCHOR, birds=list(birds), bodies=[
        ground(),
        wall(wall_x, GROUND_TOP, roof_y + 0.5, tag="leftwall"),
        plat((wall_x + slit_x - slit_w / 2) / 2, roof_y + 0.25,
             (slit_x - slit_w / 2 - wall_x) / 2, 0.25, tag="roof_l"),
        plat((slit_x + slit_w / 2 + roof_end) / 2, roof_y + 0.25,
             (roof_end - slit_x - slit_w / 2) / 2, 0.25, tag="roof_r"),
        block(block_name, bx, support_top=roof_y + 0.5, mat=block_mat, tag="dropper"),
        pig(slit_x),
    ])


@template("4.1", 4, "roll the ball through the roof slit",
          params={"wall_x": (38.0, 44.0), "roof_h": (8.0, 11.0),
                  "slit_off": (6.0, 9.0), "block_back": (2.5, 4.0)},
          distractors=DistractorPolicy(x_range=(16.0, 30.0)))
def _t41():
    def build(p):
        return _slit_roof_level(p, "circle", "stone")

    def solve(p, level):
        dropper = spec_by_tag(level, "dropper").pos
        return [aim_clear(level, dropper, accept_tags=("dropper",))]
    return build, solve


@template("4.2", 4, "slide the block through the roof slit",
          params={"wall_x": (38.0, 44.0), "roof_h": (8.0, 11.0),
                  "slit_off": (6.0, 9.0), "block_back": (1.6, 2.4)},
          distractors=DistractorPolicy(x_range=(16.0, 30.0)))
def _t42():
    def build(p):
        return _slit_roof_level(p, "square", "stone", slit_w=3.2)

    def solve(p, level):
        # a full-stretch knock would skip the square straight across the
        # slit; the softest speed that still reaches the roof lets it
        # stall over the gap and drop in
        dropper = spec_by_tag(level, "dropper").pos
        return [aim_clear(level, dropper, accept_tags=("dropper",), speed=24.0)]
    return build, solve


# ======================================================================
# scenario 5: sliding — slide a flat block into the pig

def _slider(x, support_top=GROUND_TOP):
    """Polished wood slab: slides like ice, survives the launching hit."""
    spec = block("slab", x, support_top=support_top, mat="wood", hp=60.0,
                 tag="slider")
    spec.friction = 0.12
    return spec


@template("5.1", 5, "slide the slab into the tunnel",
          params={"slab_x": (30.0, 36.0), "entrance_gap": (10.0, 15.0)},
          distractors=DistractorPolicy(x_range=(16.0, 26.0)))
def _t51():
    def build(p):
        entrance_x = p["slab_x"] + p["entrance_gap"]
        return Level(anchor=ANCHOR, birds=["red"], bodies=[
            ground(),
            _slider(p["slab_x"]),
            _tunnel(entrance_x, 9.0, 2.2),
            pig(entrance_x + 5.0),
        ])

    def solve(p, level):
        slab = spec_by_tag(level, "slider").pos
        return [aim_clear(level, slab, accept_tags=("slider",))]
    return build, solve


@template("5.2", 5, "slide the block down the ramp",
          params={"plateau_h": (6.0, 9.0), "run": (3.0, 5.0)},
          distractors=DistractorPolicy(x_range=(16.0, 24.0)))
def _t52():
    RAMP_DEG = 18.0

    def build(p):
        top = GROUND_TOP + p["plateau_h"]
        plateau_x1 = 42.0
        ramp_len = p["plateau_h"] / math.sin(math.radians(RAMP_DEG))
        ramp_dx = ramp_len * math.cos(math.radians(RAMP_DEG))
        entrance_x = plateau_x1 + ramp_dx + p["run"]
        return Level(anchor=ANCHOR, birds=["red"], bodies=[
            ground(),
            plat((30.0 + plateau_x1) / 2, top - 0.3, (plateau_x1 - 30.0) / 2, 0.3,
                 tag="plateau"),
            ramp(plateau_x1, top, ramp_len, -RAMP_DEG),
            _slider(31.5, support_top=top),
            _tunnel(entrance_x, 9.0, 2.6),
            pig(entrance_x + 5.0),
        ])

    def solve(p, level):
        slab = spec_by_tag(level, "slider").pos
        return [aim_clear(level, slab, accept_tags=("slider",))]
    return build, solve


# ======================================================================
# scenario 6: bouncing — drop into the well, rebound up to the pig
#
# The pig sits on a perch under a ceiling inside a walled well with a
# springy floor: nothing descending can touch it, only the vertical
# rebound from below.

def _bounce_well(p, pig_size="small"):
    well_x = p["well_x"]
    well_w = p["well_w"]
    perch_y = GROUND_TOP + p["perch_h"]
    rx = well_x + well_w
    lwall_h = p["perch_h"] + 5.0
    return Level(anchor=ANCHOR, birds=["red"], bodies=[
        ground(),
        wall(well_x - 0.4, GROUND_TOP, GROUND_TOP + lwall_h, tag="lwall"),
        wall(rx + 0.4, GROUND_TOP, GROUND_TOP + lwall_h + 2.0, tag="rwall"),
        plat(rx - 1.3, perch_y + 2.5, 1.3, 0.25, tag="ceiling"),
        plat(rx - 0.9, perch_y, 0.9, 0.2, tag="perch"),
        bouncy_pad(well_x + well_w / 2, GROUND_TOP + 0.25,
                   half_w=well_w / 2 - 0.1, tag="pad"),
        pig(rx - 1.8, y=perch_y + 0.2 + PIG_R[pig_size], size=pig_size),
    ])


PIG_R = {"small": 0.6, "medium": 0.85, "large": 1.2}


def _bounce_solve(p, level):
    pig_spec = next(s for s in level.bodies if s.tag.startswith("pig"))
    pad_y = GROUND_TOP + 0.6
    # the rebound preserves forward speed, so the pad aim point sits back
    # from the pig by the drift accrued while rising to perch height
    target_x = pig_spec.pos[0]
    for _ in range(3):
        sol = solve_release(ANCHOR, (target_x, pad_y))[-1]
        t_land = (pig_spec.pos[0] - ANCHOR[0]) / max(sol.velocity[0], 1e-6)
        vy_land = sol.velocity[1] - 9.8 * t_land
        vy_out = 0.9 * abs(vy_land)
        rise = pig_spec.pos[1] - pad_y
        disc = vy_out * vy_out - 2.0 * 9.8 * rise
        if disc <= 0.0:
            break
        t_rise = (vy_out - math.sqrt(disc)) / 9.8
        target_x = pig_spec.pos[0] - sol.velocity[0] * t_rise
    return [Action(release=solve_release(ANCHOR, (target_x, pad_y))[-1].release)]


@template("6.1", 6, "bounce up the well to the perched pig",
          params={"well_x": (44.0, 52.0), "well_w": (5.5, 7.0),
                  "perch_h": (4.5, 6.5)},
          distractors=DistractorPolicy(x_range=(16.0, 30.0)))
def _t61():
    def build(p):
        return _bounce_well(p)
    return build, _bounce_solve


@template("6.2", 6, "bounce up the deeper well to the bigger pig",
          params={"well_x": (52.0, 60.0), "well_w": (6.0, 7.5),
                  "perch_h": (6.0, 8.0)},
          distractors=DistractorPolicy(x_range=(16.0, 32.0)))
def _t62():
    def build(p):
        return _bounce_well(p, pig_size="medium")
    return build, _bounce_solve


# ======================================================================
# scenario 7: relative weight — only the light ball can be sent across

def _weight_gap_level(p, light_first=True):
    edge = p["edge_x"]
    top = GROUND_TOP + p["plateau_h"]
    gap = p["gap"]
    land_top = top - 2.0
    light_x = edge - 2.0 if light_first else edge - 4.5
    heavy_x = edge - 5.0 if light_first else edge - 1.0
    pig_x = edge + gap + p["pig_in"]
    land_w = p["pig_in"] + 4.0
    return Level(anchor=ANCHOR, birds=["red"], bodies=[
        ground(),
        plat((26.0 + edge) / 2, top - 0.4, (edge - 26.0) / 2, 0.4, tag="plateau"),
        plat(edge + gap + land_w / 2, land_top - 0.4, land_w / 2, 0.4, tag="landing"),
        plat(edge + gap + land_w / 2, top + 3.0, land_w / 2 + 1.0, 0.3, tag="roof"),
        wall(edge + gap + land_w + 0.6, land_top, top + 3.0, tag="backstop"),
        block("circle_small", light_x, support_top=top, mat="wood", tag="light"),
        block("circle_big", heavy_x, support_top=top, mat="stone", tag="heavy"),
        pig(pig_x, support_top=land_top),
    ])


def _weight_solve(p, level):
    light = spec_by_tag(level, "light").pos
    return [aim_clear(level, light, accept_tags=("light",))]


@template("7.1", 7, "send the light ball over the gap",
          params={"edge_x": (44.0, 50.0), "plateau_h": (4.0, 6.0),
                  "gap": (4.5, 6.0), "pig_in": (8.0, 12.0)},
          distractors=DistractorPolicy(x_range=(16.0, 26.0)))
def _t71():
    def build(p):
        return _weight_gap_level(p, light_first=True)
    return build, _weight_solve


@template("7.2", 7, "loft the light ball past the heavy one",
          params={"edge_x": (46.0, 52.0), "plateau_h": (4.5, 6.5),
                  "gap": (4.0, 5.5), "pig_in": (7.0, 11.0)},
          distractors=DistractorPolicy(x_range=(16.0, 26.0)))
def _t72():
    def build(p):
        return _weight_gap_level(p, light_first=False)
    return build, _weight_solve


# ======================================================================
# scenario 8: relative height — pick the block at the height that works

@template("8.1", 8, "launch the square from the tall pedestal over the wall",
          params={"ped_x": (30.0, 34.0), "tall_h": (6.0, 7.5),
                  "wall_gap": (7.0, 9.0), "pig_gap": (19.0, 22.0)},
          distractors=DistractorPolicy(x_range=(14.0, 24.0)))
def _t81():
    def build(p):
        tall_top = GROUND_TOP + p["tall_h"]
        short_top = GROUND_TOP + 2.0
        wall_x = p["ped_x"] + p["wall_gap"]
        wall_top = tall_top - 1.2
        pig_x = p["ped_x"] + p["pig_gap"]
        return Level(anchor=ANCHOR, birds=["red"], bodies=[
            ground(),
            wall(p["ped_x"], GROUND_TOP, tall_top, half_w=0.7, tag="tall_ped"),
            wall(p["ped_x"] + 3.5, GROUND_TOP, short_top, half_w=0.7, tag="short_ped"),
            block("square", p["ped_x"], support_top=tall_top, mat="wood", tag="payload"),
            block("square", p["ped_x"] + 3.5, support_top=short_top, mat="wood",
                  tag="decoy"),
            wall(wall_x, GROUND_TOP, wall_top, tag="wall"),
            plat(pig_x + 2.0, 5.4, 4.0, 0.25, tag="roof"),
            pig(pig_x),
        ])

    def solve(p, level):
        payload = spec_by_tag(level, "payload").pos
        return [aim_clear(level, payload, accept_tags=("payload",))]
    return build, solve


@template("8.2", 8, "launch the square from the short pedestal into the tunnel",
          params={"ped_x": (30.0, 34.0), "short_h": (0.8, 1.4),
                  "entrance_gap": (10.0, 13.0)},
          distractors=DistractorPolicy(x_range=(14.0, 24.0)))
def _t82():
    def build(p):
        short_top = GROUND_TOP + p["short_h"]
        tall_top = GROUND_TOP + 5.5
        entrance_x = p["ped_x"] + p["entrance_gap"]
        return Level(anchor=ANCHOR, birds=["red"], bodies=[
            ground(),
            wall(p["ped_x"], GROUND_TOP, short_top, half_w=0.7, tag="short_ped"),
            wall(p["ped_x"] - 3.5, GROUND_TOP, tall_top, half_w=0.7, tag="tall_ped"),
            block("square", p["ped_x"], support_top=short_top, mat="wood",
                  tag="payload"),
            block("square", p["ped_x"] - 3.5, support_top=tall_top, mat="wood",
                  tag="decoy"),
            _tunnel(entrance_x, 9.0, 2.8),
            pig(entrance_x + 5.0),
        ])

    def solve(p, level):
        payload = spec_by_tag(level, "payload").pos
        return [aim_clear(level, payload, accept_tags=("payload",))]
    return build, solve


# ======================================================================
# scenario 9: relative width — only the wide opening lets the bird through

def _slot_wall_level(p, wide_high):
    wall_x = p["wall_x"]
    pig_x = wall_x + p["pig_gap"]
    wide_w, narrow_w = 3.0, 0.8
    if wide_high:
        wide_lo = GROUND_TOP + p["wide_off"] + 4.0
        narrow_lo = GROUND_TOP + 1.5
        narrow_hi = narrow_lo + narrow_w
        wide_hi = wide_lo + wide_w
        segments = [(GROUND_TOP, narrow_lo), (narrow_hi, wide_lo), (wide_hi, 18.0)]
    else:
        wide_lo = GROUND_TOP + 1.2
        wide_hi = wide_lo + wide_w
        narrow_lo = wide_hi + p["wide_off"] + 2.0
        narrow_hi = narrow_lo + narrow_w
        segments = [(GROUND_TOP, wide_lo), (wide_hi, narrow_lo), (narrow_hi, 18.0)]
    bodies = [ground()]
    for lo, hi in segments:
        bodies.append(wall(wall_x, lo, hi, half_w=0.4, tag=f"wall{lo:.0f}"))
    bodies.append(plat(pig_x + 2.0, wide_hi + 3.0 if not wide_high else 15.0,
                       5.0, 0.3, tag="roof"))
    bodies.append(pig(pig_x))
    level = Level(anchor=ANCHOR, birds=["red"], bodies=bodies)
    level.meta["wide_center"] = [wall_x, (wide_lo + wide_hi) / 2]
    return level


def _slot_solve(p, level):
    wide = level.meta["wide_center"]
    pig_spec = spec_by_tag(level, "pig:small")
    target = (pig_spec.pos[0], pig_spec.pos[1] + 0.4)
    velocity, _speed = solve_through_points(ANCHOR, tuple(wide), target)
    return [Action(release=velocity_to_release(velocity))]


@template("9.1", 9, "thread the high wide opening",
          params={"wall_x": (40.0, 48.0), "wide_off": (1.5, 3.5),
                  "pig_gap": (3.0, 5.0)},
          distractors=DistractorPolicy(x_range=(16.0, 30.0)))
def _t91():
    def build(p):
        return _slot_wall_level(p, wide_high=True)
    return build, _slot_solve


@template("9.2", 9, "thread the low wide opening",
          params={"wall_x": (40.0, 48.0), "wide_off": (1.5, 3.0),
                  "pig_gap": (3.0, 5.0)},
          distractors=DistractorPolicy(x_range=(16.0, 30.0)))
def _t92():
    def build(p):
        return _slot_wall_level(p, wide_high=False)
    return build, _slot_solve


# ======================================================================
# scenario 10: shape difference — the round block rolls, the square stalls

@template("10.1", 10, "roll the round block, not the square",
          params={"circle_x": (33.0, 37.0), "entrance_gap": (11.0, 14.0)},
          distractors=DistractorPolicy(x_range=(14.0, 24.0)))
def _t101():
    def build(p):
        entrance_x = p["circle_x"] + p["entrance_gap"]
        return Level(anchor=ANCHOR, birds=["red"], bodies=[
            ground(),
            block("square_small", p["circle_x"] - 4.0, mat="stone", tag="decoy"),
            block("circle", p["circle_x"], mat="stone", tag="roller"),
            _tunnel(entrance_x, 9.0, 2.4),
            pig(entrance_x + 5.0),
        ])

    def solve(p, level):
        roller = spec_by_tag(level, "roller").pos
        return [aim_clear(level, roller, accept_tags=("roller",))]
    return build, solve


@template("10.2", 10, "roll the round block off the step",
          params={"step_x": (36.0, 40.0), "entrance_gap": (9.0, 12.0)},
          distractors=DistractorPolicy(x_range=(14.0, 24.0)))
def _t102():
    def build(p):
        step_top = GROUND_TOP + 2.0
        step_x1 = p["step_x"] + 8.0
        entrance_x = step_x1 + p["entrance_gap"]
        return Level(anchor=ANCHOR, birds=["red"], bodies=[
            ground(),
            plat((p["step_x"] + step_x1) / 2, (GROUND_TOP + step_top) / 2,
                 4.0, 1.0, tag="step"),
            block("square_small", step_x1 - 5.5, support_top=step_top,
                  mat="stone", tag="decoy"),
            block("circle", step_x1 - 1.5, support_top=step_top, mat="stone",
                  tag="roller"),
            _tunnel(entrance_x, 9.0, 2.4),
            pig(entrance_x + 5.0),
        ])

    def solve(p, level):
        roller = spec_by_tag(level, "roller").pos
        return [aim_clear(level, roller, accept_tags=("roller",))]
    return build, solve
