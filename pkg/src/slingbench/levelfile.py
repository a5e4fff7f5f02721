"""Level file schema: versioned JSON with a canonical field order.

The same Level object always serializes to identical bytes, so generated
task files are reproducible from (template, seed) alone.  Numbers are
emitted with repr-roundtrip fidelity; field order is fixed by
construction order below, never by sorting.
"""

from __future__ import annotations

import json

from .world import Action, BodySpec, Level

SCHEMA_ID = "slingbench-level/1"

__all__ = ["SCHEMA_ID", "level_to_dict", "level_from_dict", "dumps", "loads",
           "save", "load", "action_to_dict", "action_from_dict"]


def action_to_dict(action: Action) -> dict:
    return {"release": [action.release[0], action.release[1]],
            "tap": action.tap_fraction}


def action_from_dict(data) -> Action:
    return Action(release=(data["release"][0], data["release"][1]),
                  tap_fraction=data.get("tap"))


def _shape_dict(shape: dict) -> dict:
    kind = shape["kind"]
    if kind == "circle":
        return {"kind": "circle", "radius": shape["radius"]}
    if kind == "box":
        return {"kind": "box", "half_w": shape["half_w"], "half_h": shape["half_h"]}
    if kind == "triangle":
        return {"kind": "triangle", "verts": [list(v) for v in shape["verts"]]}
    raise ValueError(f"unknown shape kind {kind!r}")


def _body_dict(spec: BodySpec) -> dict:
    out = {
        "shape": _shape_dict(spec.shape),
        "material": spec.material,
        "pos": [spec.pos[0], spec.pos[1]],
        "angle": spec.angle,
        "dynamic": spec.dynamic,
        "tag": spec.tag,
        "health": spec.health,
    }
    if spec.restitution is not None:
        out["restitution"] = spec.restitution
    if spec.friction is not None:
        out["friction"] = spec.friction
    return out


def _body_from_dict(data) -> BodySpec:
    return BodySpec(
        shape=data["shape"],
        material=data["material"],
        pos=(data["pos"][0], data["pos"][1]),
        angle=data.get("angle", 0.0),
        dynamic=data.get("dynamic", True),
        tag=data.get("tag", ""),
        health=data.get("health"),
        restitution=data.get("restitution"),
        friction=data.get("friction"),
    )


def level_to_dict(level: Level) -> dict:
    return {
        "schema": SCHEMA_ID,
        "anchor": [level.anchor[0], level.anchor[1]],
        "bounds": [level.bounds[0], level.bounds[1]],
        "birds": list(level.birds),
        "bodies": [_body_dict(spec) for spec in level.bodies],
        "meta": _canonical_meta(level.meta),
    }


def _canonical_meta(meta: dict) -> dict:
    # meta is free-form but serialized in sorted-key order for stability
    out = {}
    for key in sorted(meta):
        out[key] = meta[key]
    return out


def level_from_dict(data) -> Level:
    if data.get("schema") != SCHEMA_ID:
        raise ValueError(f"unsupported level schema {data.get('schema')!r}")
    return Level(
        anchor=(data["anchor"][0], data["anchor"][1]),
        birds=list(data["birds"]),
        bodies=[_body_from_dict(b) for b in data["bodies"]],
        bounds=(data["bounds"][0], data["bounds"][1]),
        meta=dict(data.get("meta", {})),
    )


def dumps(level: Level) -> str:
    return json.dumps(level_to_dict(level), indent=1)


def loads(text: str) -> Level:
    return level_from_dict(json.loads(text))


def save(level: Level, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(level))
        fh.write("\n")


def load(path) -> Level:
    with open(path) as fh:
        return loads(fh.read())
