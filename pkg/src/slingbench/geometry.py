"""Convex shapes and contact generation for the 2D rigid-body engine.

Shapes are always centered on their body's local origin (the centroid),
so mass properties stay diagonal.  Contact generation produces at most
two points per pair with stable feature ids, which keeps solver
iteration order deterministic.
"""

from __future__ import annotations

import math

__all__ = [
    "Circle",
    "Polygon",
    "ContactPoint",
    "collide",
    "point_in_polygon",
    "polygon_area",
    "polygon_centroid",
]


def polygon_area(verts) -> float:
    """Signed shoelace area (positive for counter-clockwise winding)."""
    a = 0.0
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        a += x1 * y2 - x2 * y1
    return 0.5 * a


def polygon_centroid(verts):
    cx = cy = 0.0
    a = 0.0
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        cross = x1 * y2 - x2 * y1
        a += cross
        cx += (x1 + x2) * cross
        cy += (y1 + y2) * cross
    a *= 0.5
    if abs(a) < 1e-12:
        raise ValueError("degenerate polygon")
    return cx / (6.0 * a), cy / (6.0 * a)


class Circle:
    __slots__ = ("radius",)

    def __init__(self, radius: float):
        if radius <= 0.0:
            raise ValueError(f"circle radius must be positive, got {radius}")
        self.radius = float(radius)

    def area(self) -> float:
        return math.pi * self.radius * self.radius

    def inertia_per_mass(self) -> float:
        return 0.5 * self.radius * self.radius

    def bounding_radius(self) -> float:
        return self.radius

    def __repr__(self):
        return f"Circle(r={self.radius:g})"


class Polygon:
    """Convex polygon with counter-clockwise vertices centered on the centroid."""

    __slots__ = ("verts", "normals", "_bradius")

    def __init__(self, verts):
        if len(verts) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        area = polygon_area(verts)
        if area <= 1e-9:
            raise ValueError(f"polygon must be counter-clockwise with area > 1e-9, got {area}")
        cx, cy = polygon_centroid(verts)
        self.verts = tuple((float(x - cx), float(y - cy)) for x, y in verts)
        normals = []
        n = len(self.verts)
        for i in range(n):
            x1, y1 = self.verts[i]
            x2, y2 = self.verts[(i + 1) % n]
            ex, ey = x2 - x1, y2 - y1
            length = math.sqrt(ex * ex + ey * ey)
            if length < 1e-12:
                raise ValueError("repeated polygon vertex")
            # outward normal for CCW winding
            normals.append((ey / length, -ex / length))
        self.normals = tuple(normals)
        self._bradius = max(math.sqrt(x * x + y * y) for x, y in self.verts)

    @classmethod
    def box(cls, half_w: float, half_h: float) -> "Polygon":
        if half_w <= 0.0 or half_h <= 0.0:
            raise ValueError("box half extents must be positive")
        return cls([(-half_w, -half_h), (half_w, -half_h), (half_w, half_h), (-half_w, half_h)])

    @classmethod
    def triangle(cls, v0, v1, v2) -> "Polygon":
        return cls([v0, v1, v2])

    def area(self) -> float:
        return polygon_area(self.verts)

    def inertia_per_mass(self) -> float:
        # second polar moment of a polygon about its centroid, divided by area
        num = 0.0
        den = 0.0
        vs = self.verts
        n = len(vs)
        for i in range(n):
            x1, y1 = vs[i]
            x2, y2 = vs[(i + 1) % n]
            cross = x1 * y2 - x2 * y1
            num += cross * (x1 * x1 + x1 * x2 + x2 * x2 + y1 * y1 + y1 * y2 + y2 * y2)
            den += cross
        return num / (6.0 * den)

    def bounding_radius(self) -> float:
        return self._bradius

    def __repr__(self):
        return f"Polygon({len(self.verts)} verts)"


class ContactPoint:
    """One contact between two bodies plus solver scratch state."""

    __slots__ = (
        "a", "b", "px", "py", "nx", "ny", "penetration", "feature",
        "rax", "ray", "rbx", "rby", "mass_n", "mass_t", "bias_v",
        "friction", "accum_n", "accum_t",
    )

    def __init__(self, a, b, px, py, nx, ny, penetration, feature):
        self.a = a
        self.b = b
        self.px = px
        self.py = py
        self.nx = nx
        self.ny = ny
        self.penetration = penetration
        self.feature = feature
        self.accum_n = 0.0
        self.accum_t = 0.0


def _world_verts(body):
    c, s = body.cos_a, body.sin_a
    px, py = body.px, body.py
    return [(px + c * x - s * y, py + s * x + c * y) for x, y in body.shape.verts]


def _world_normals(body):
    c, s = body.cos_a, body.sin_a
    return [(c * nx - s * ny, s * nx + c * ny) for nx, ny in body.shape.normals]


def _collide_circles(a, b):
    ra, rb = a.shape.radius, b.shape.radius
    dx, dy = b.px - a.px, b.py - a.py
    dist_sq = dx * dx + dy * dy
    rsum = ra + rb
    if dist_sq >= rsum * rsum:
        return []
    dist = math.sqrt(dist_sq)
    if dist < 1e-12:
        nx, ny = 0.0, 1.0
        dist = 0.0
    else:
        nx, ny = dx / dist, dy / dist
    px = a.px + nx * ra
    py = a.py + ny * ra
    return [ContactPoint(a, b, px, py, nx, ny, rsum - dist, 0)]


def _collide_circle_polygon(circ, poly, flip):
    """Contact between a circle body and a polygon body.

    Returned normal always points from the pair's first body to the second,
    controlled by `flip` (True when the polygon is the first body).
    """
    r = circ.shape.radius
    verts = _world_verts(poly)
    normals = _world_normals(poly)
    n = len(verts)

    # face of maximum separation from the circle center
    best_sep = -1e30
    best_i = 0
    for i in range(n):
        vx, vy = verts[i]
        sep = normals[i][0] * (circ.px - vx) + normals[i][1] * (circ.py - vy)
        if sep > best_sep:
            best_sep = sep
            best_i = i
    if best_sep >= r:
        return []

    v1 = verts[best_i]
    v2 = verts[(best_i + 1) % n]

    if best_sep < 1e-9:
        # center inside the polygon: push out along the reference face normal
        nx, ny = normals[best_i]
        pen = r - best_sep
        px, py = circ.px - nx * best_sep, circ.py - ny * best_sep
    else:
        ex, ey = v2[0] - v1[0], v2[1] - v1[1]
        t = ((circ.px - v1[0]) * ex + (circ.py - v1[1]) * ey) / (ex * ex + ey * ey)
        if t < 0.0:
            cx, cy = v1
        elif t > 1.0:
            cx, cy = v2
        else:
            cx, cy = v1[0] + t * ex, v1[1] + t * ey
        dx, dy = circ.px - cx, circ.py - cy
        dist_sq = dx * dx + dy * dy
        if dist_sq >= r * r:
            return []
        dist = math.sqrt(dist_sq)
        if dist < 1e-12:
            nx, ny = normals[best_i]
        else:
            nx, ny = dx / dist, dy / dist
        pen = r - dist
        px, py = cx, cy

    # nx,ny currently points polygon -> circle
    if flip:
        return [ContactPoint(poly, circ, px, py, nx, ny, pen, best_i)]
    return [ContactPoint(circ, poly, px, py, -nx, -ny, pen, best_i)]


def _max_separation(verts_a, normals_a, verts_b):
    """Max separation of B's hull from A's faces; returns (separation, face index)."""
    best = -1e30
    best_i = 0
    for i, (nx, ny) in enumerate(normals_a):
        vx, vy = verts_a[i]
        # support of B in -n
        low = 1e30
        for bx, by in verts_b:
            d = nx * (bx - vx) + ny * (by - vy)
            if d < low:
                low = d
        if low > best:
            best = low
            best_i = i
    return best, best_i


def _clip_segment(v1, v2, nx, ny, offset):
    """Clip segment [v1,v2] to the half-plane n.x <= offset; keeps feature tags."""
    out = []
    d1 = nx * v1[0] + ny * v1[1] - offset
    d2 = nx * v2[0] + ny * v2[1] - offset
    if d1 <= 0.0:
        out.append(v1)
    if d2 <= 0.0:
        out.append(v2)
    if d1 * d2 < 0.0:
        t = d1 / (d1 - d2)
        out.append((v1[0] + t * (v2[0] - v1[0]), v1[1] + t * (v2[1] - v1[1]), v1[2]))
    return out


def _collide_polygons(a, b):
    verts_a = _world_verts(a)
    verts_b = _world_verts(b)
    normals_a = _world_normals(a)
    normals_b = _world_normals(b)

    sep_a, face_a = _max_separation(verts_a, normals_a, verts_b)
    if sep_a >= 0.0:
        return []
    sep_b, face_b = _max_separation(verts_b, normals_b, verts_a)
    if sep_b >= 0.0:
        return []

    # reference poly owns the separating axis; small bias keeps the choice
    # stable when separations are nearly equal
    if sep_b > sep_a + 1e-10:
        ref_verts, ref_normals, ref_face = verts_b, normals_b, face_b
        inc_verts, inc_normals = verts_a, normals_a
        flip = True
    else:
        ref_verts, ref_normals, ref_face = verts_a, normals_a, face_a
        inc_verts, inc_normals = verts_b, normals_b
        flip = False

    rnx, rny = ref_normals[ref_face]
    # incident face: most anti-parallel face of the other polygon
    inc_face = 0
    low = 1e30
    for i, (inx, iny) in enumerate(inc_normals):
        d = rnx * inx + rny * iny
        if d < low:
            low = d
            inc_face = i
    ni = len(inc_verts)
    i1 = inc_verts[inc_face]
    i2 = inc_verts[(inc_face + 1) % ni]
    points = [(i1[0], i1[1], inc_face), (i2[0], i2[1], (inc_face + 1) % ni)]

    nr = len(ref_verts)
    r1 = ref_verts[ref_face]
    r2 = ref_verts[(ref_face + 1) % nr]
    # clip by the two planes perpendicular to the reference face
    tx, ty = -rny, rnx  # tangent along the face r1->r2? (rotate normal -90)
    # side plane at r1 (facing away from r2) and at r2 (facing away from r1)
    points = _clip_segment(points[0], points[1], -tx, -ty, -(tx * r1[0] + ty * r1[1]))
    if len(points) < 2:
        return []
    points = _clip_segment(points[0], points[1], tx, ty, tx * r2[0] + ty * r2[1])
    if not points:
        return []

    ref_off = rnx * r1[0] + rny * r1[1]
    out = []
    for px, py, feat in points:
        sep = rnx * px + rny * py - ref_off
        if sep <= 0.0:
            feature = (ref_face << 8) | feat | (0x10000 if flip else 0)
            if flip:
                out.append(ContactPoint(a, b, px, py, -rnx, -rny, -sep, feature))
            else:
                out.append(ContactPoint(a, b, px, py, rnx, rny, -sep, feature))
    out.sort(key=lambda cp: cp.feature)
    return out


def collide(a, b):
    """Narrow-phase contact points between bodies a and b (a.id < b.id).

    Normals point from a to b.  Output order is deterministic for a given
    pair of body states.
    """
    a_circle = isinstance(a.shape, Circle)
    b_circle = isinstance(b.shape, Circle)
    if a_circle and b_circle:
        return _collide_circles(a, b)
    if a_circle:
        return _collide_circle_polygon(a, b, flip=False)
    if b_circle:
        return _collide_circle_polygon(b, a, flip=True)
    return _collide_polygons(a, b)


def point_in_polygon(x, y, verts) -> bool:
    """Ray-casting point-in-polygon test; works for any simple polygon."""
    inside = False
    n = len(verts)
    j = n - 1
    for i in range(n):
        xi, yi = verts[i]
        xj, yj = verts[j]
        if (yi > y) != (yj > y):
            t = (y - yi) / (yj - yi)
            if x < xi + t * (xj - xi):
                inside = not inside
        j = i
    return inside
