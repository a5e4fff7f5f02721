"""Observation encodings: screenshot, symbolic frame, occupancy tensor.

The screen mapping is fixed and invertible so external agents can reason
in either coordinate system: 7.5 px per world unit, origin at the
bottom-left of the level bounds, y up in world space and down in screen
space.  Rendering is flat-shaded with one palette color per object class;
color maps in the symbolic frame are computed from actually rendered
pixels quantized to 3-3-2 RGB.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Circle

__all__ = [
    "CLASSES", "PALETTE", "BACKGROUND", "SCREEN_W", "SCREEN_H", "PX_PER_UNIT",
    "TENSOR_H", "TENSOR_W", "SymbolicObject", "SymbolicFrame", "UnknownClass",
    "world_to_screen", "screen_to_world", "class_of_body", "render",
    "symbolize", "encode_tensor", "to_png",
]

SCREEN_W = 640
SCREEN_H = 480
PX_PER_UNIT = 7.5
TENSOR_H = 120
TENSOR_W = 160
_CELL = SCREEN_W // TENSOR_W  # 4 px per tensor cell

CLASSES = [
    "red_bird", "yellow_bird", "blue_bird", "white_bird", "black_bird",
    "pig", "wood", "ice", "stone", "platform", "tnt", "slingshot",
]

PALETTE = {
    "red_bird": (214, 45, 36),
    "yellow_bird": (243, 200, 27),
    "blue_bird": (66, 133, 244),
    "white_bird": (240, 240, 235),
    "black_bird": (44, 44, 48),
    "pig": (109, 190, 69),
    "wood": (191, 128, 55),
    "ice": (162, 215, 250),
    "stone": (128, 128, 136),
    "platform": (94, 63, 35),
    "tnt": (255, 140, 0),
    "slingshot": (150, 88, 42),
}

BACKGROUND = (198, 224, 251)


class UnknownClass(Exception):
    pass


def world_to_screen(x, y):
    return (x * PX_PER_UNIT, SCREEN_H - y * PX_PER_UNIT)


def screen_to_world(sx, sy):
    return (sx / PX_PER_UNIT, (SCREEN_H - sy) / PX_PER_UNIT)


def class_of_body(body) -> str:
    tag = body.tag
    if tag.startswith("bird:"):
        return tag.split(":", 1)[1] + "_bird"
    if tag == "egg":
        return "white_bird"
    if tag.startswith("pig"):
        return "pig"
    if tag == "tnt":
        return "tnt"
    kind = body.material.kind
    if kind in ("wood", "ice", "stone", "platform"):
        return kind
    if kind == "pig":
        return "pig"
    if kind == "bird":
        return "red_bird"
    raise UnknownClass(f"no object class for body {body!r}")


def _circle_screen_polygon(body, segments=16):
    """Circles are emitted as regular 16-gons (chord error < 1 px at game
    scales); vertex order follows the screen's drawing direction."""
    r = body.shape.radius
    pts = []
    for k in range(segments):
        a = body.angle + 2.0 * math.pi * k / segments
        pts.append(world_to_screen(body.px + r * math.cos(a),
                                   body.py + r * math.sin(a)))
    return pts


def _body_screen_polygon(body):
    if isinstance(body.shape, Circle):
        return _circle_screen_polygon(body)
    return [world_to_screen(x, y) for x, y in body.world_verts()]


@dataclass
class SymbolicObject:
    id: int
    object_class: str
    polygon: list           # [(sx, sy), ...] screen coordinates, drawing order
    color_map: list         # [(quantized_color_code, percentage), ...]

    def to_dict(self):
        return {
            "id": self.id,
            "class": self.object_class,
            "polygon": [[p[0], p[1]] for p in self.polygon],
            "color_map": [[int(c), pct] for c, pct in self.color_map],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            id=d["id"], object_class=d["class"],
            polygon=[(p[0], p[1]) for p in d["polygon"]],
            color_map=[(int(c), pct) for c, pct in d["color_map"]],
        )


@dataclass
class SymbolicFrame:
    objects: list = field(default_factory=list)

    def by_class(self, object_class):
        return [o for o in self.objects if o.object_class == object_class]

    def to_dict(self):
        return {"schema": "slingbench-frame/1",
                "objects": [o.to_dict() for o in self.objects]}

    @classmethod
    def from_dict(cls, d):
        if d.get("schema") != "slingbench-frame/1":
            raise ValueError(f"unsupported frame schema {d.get('schema')!r}")
        return cls(objects=[SymbolicObject.from_dict(o) for o in d["objects"]])


def quantize_332(rgb) -> int:
    r, g, b = rgb
    return (int(r) >> 5 << 5) | (int(g) >> 5 << 2) | (int(b) >> 6)


def _slingshot_body(anchor):
    """Pseudo-object so agents can locate the launch point; not a physics
    body."""
    ax, ay = anchor
    return [(ax - 0.25, ay - 4.0), (ax + 0.25, ay - 4.0),
            (ax + 0.25, ay + 0.3), (ax - 0.25, ay + 0.3)]


def _split_scene(scene):
    """Accept either an Episode (world + slingshot anchor) or a bare World."""
    world = getattr(scene, "world", scene)
    level = getattr(scene, "level", None)
    anchor = level.anchor if level is not None else None
    return world, anchor


def _render_masks(scene):
    """Flat-shaded render plus per-body pixel masks (pre-occlusion)."""
    world, anchor = _split_scene(scene)
    img = np.empty((SCREEN_H, SCREEN_W, 3), dtype=np.uint8)
    img[:, :] = BACKGROUND

    ys, xs = np.mgrid[0:SCREEN_H, 0:SCREEN_W]
    wx = (xs + 0.5) / PX_PER_UNIT
    wy = (SCREEN_H - (ys + 0.5)) / PX_PER_UNIT

    entries = []
    for body in world.bodies:
        cls = class_of_body(body)
        color = PALETTE[cls]
        x0 = body.px - body.bradius
        x1 = body.px + body.bradius
        y0 = body.py - body.bradius
        y1 = body.py + body.bradius
        c0 = max(0, int(x0 * PX_PER_UNIT) - 1)
        c1 = min(SCREEN_W, int(x1 * PX_PER_UNIT) + 2)
        r0 = max(0, int(SCREEN_H - y1 * PX_PER_UNIT) - 1)
        r1 = min(SCREEN_H, int(SCREEN_H - y0 * PX_PER_UNIT) + 2)
        if c0 >= c1 or r0 >= r1:
            entries.append((body, cls, None, None))
            continue
        bx = wx[r0:r1, c0:c1]
        by = wy[r0:r1, c0:c1]
        if isinstance(body.shape, Circle):
            mask = (bx - body.px) ** 2 + (by - body.py) ** 2 <= body.shape.radius ** 2
        else:
            verts = body.world_verts()
            mask = np.ones(bx.shape, dtype=bool)
            n = len(verts)
            for i in range(n):
                x1v, y1v = verts[i]
                x2v, y2v = verts[(i + 1) % n]
                mask &= (x2v - x1v) * (by - y1v) - (y2v - y1v) * (bx - x1v) >= 0.0
        entries.append((body, cls, (r0, r1, c0, c1), mask))

    # slingshot pseudo-object underneath everything else
    sling_verts = None
    if anchor is not None:
        sling_verts = _slingshot_body(anchor)
        sling_mask = np.ones(img.shape[:2], dtype=bool)
        for i in range(len(sling_verts)):
            x1v, y1v = sling_verts[i]
            x2v, y2v = sling_verts[(i + 1) % len(sling_verts)]
            sling_mask &= (x2v - x1v) * (wy - y1v) - (y2v - y1v) * (wx - x1v) >= 0.0
        img[sling_mask] = PALETTE["slingshot"]

    for body, cls, box, mask in entries:
        if box is None:
            continue
        r0, r1, c0, c1 = box
        img[r0:r1, c0:c1][mask] = PALETTE[cls]
    return img, entries, sling_verts


def render(scene) -> np.ndarray:
    """480x640 RGB8 screenshot (row-major, top row first)."""
    img, _, _ = _render_masks(scene)
    return img


def symbolize(scene) -> SymbolicFrame:
    """Every world body exactly once, as its screen polygon plus a color
    map of its rendered pixels quantized to 3-3-2 RGB."""
    img, entries, sling_verts = _render_masks(scene)
    objects = []
    for body, cls, box, mask in entries:
        if box is not None and mask.any():
            r0, r1, c0, c1 = box
            pixels = img[r0:r1, c0:c1][mask]
            codes = (pixels[:, 0].astype(np.uint16) >> 5 << 5) \
                | (pixels[:, 1].astype(np.uint16) >> 5 << 2) \
                | (pixels[:, 2].astype(np.uint16) >> 6)
            values, counts = np.unique(codes, return_counts=True)
            total = counts.sum()
            color_map = sorted(
                ((int(v), 100.0 * int(c) / total) for v, c in zip(values, counts)),
                key=lambda it: -it[1])
        else:
            color_map = [(quantize_332(PALETTE[cls]), 100.0)]
        objects.append(SymbolicObject(
            id=body.id, object_class=cls,
            polygon=_body_screen_polygon(body), color_map=color_map))
    if sling_verts is not None:
        objects.append(SymbolicObject(
            id=0, object_class="slingshot",
            polygon=[world_to_screen(x, y) for x, y in sling_verts],
            color_map=[(quantize_332(PALETTE["slingshot"]), 100.0)]))
    return SymbolicFrame(objects=objects)


def encode_tensor(frame: SymbolicFrame) -> np.ndarray:
    """120x160x12 binary occupancy: cell (r,c,k) is set when the cell's
    center lies inside a class-k object's polygon."""
    tensor = np.zeros((TENSOR_H, TENSOR_W, len(CLASSES)), dtype=np.uint8)
    for obj in frame.objects:
        try:
            channel = CLASSES.index(obj.object_class)
        except ValueError:
            raise UnknownClass(f"object class {obj.object_class!r} not in catalog")
        poly = obj.polygon
        if len(poly) < 3:
            continue
        sx = [p[0] for p in poly]
        sy = [p[1] for p in poly]
        c_lo = max(0, int(min(sx) // _CELL) - 1)
        c_hi = min(TENSOR_W - 1, int(max(sx) // _CELL) + 1)
        r_lo = max(0, int(min(sy) // _CELL) - 1)
        r_hi = min(TENSOR_H - 1, int(max(sy) // _CELL) + 1)
        if c_lo > c_hi or r_lo > r_hi:
            continue
        cols = np.arange(c_lo, c_hi + 1)
        rows = np.arange(r_lo, r_hi + 1)
        cx = cols * _CELL + _CELL / 2.0
        cy = rows * _CELL + _CELL / 2.0
        gx, gy = np.meshgrid(cx, cy)
        inside = np.zeros(gx.shape, dtype=bool)
        # even-odd rule, orientation independent
        j = len(poly) - 1
        for i in range(len(poly)):
            xi, yi = poly[i]
            xj, yj = poly[j]
            if abs(yi - yj) > 1e-12:
                crossing = (gy > min(yi, yj)) & (gy <= max(yi, yj))
                if crossing.any():
                    t = (gy - yi) / (yj - yi)
                    inside ^= crossing & (gx < xi + t * (xj - xi))
            j = i
        tensor[r_lo:r_hi + 1, c_lo:c_hi + 1, channel] |= inside.astype(np.uint8)
    return tensor


def to_png(image: np.ndarray) -> bytes:
    from PIL import Image
    buf = io.BytesIO()
    Image.fromarray(image, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()
