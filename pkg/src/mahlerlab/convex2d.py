"""Exact formulas for convex polygons in the plane.

A polygon is stored as its counter-clockwise vertex cycle. Area, barycenter
and the (uncentered) inertia matrix come from a signed fan of triangles with
apex at the origin, which is exact up to roundoff whether or not the origin
lies inside the polygon.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateInput, NotCentered, OriginNotInterior, SingularMatrix
from .numkit import SymMatrix


def _cross(a, b) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


def _scale_of(points: np.ndarray) -> float:
    return max(float(np.max(np.abs(points))), 1e-300)


class Polygon:
    """Strictly convex polygon with CCW vertices (at least three)."""

    __slots__ = ("_v",)

    def __init__(self, vertices):
        v = np.array(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise DegenerateInput(f"need at least 3 planar vertices, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DegenerateInput("non-finite vertex coordinates")
        scale = _scale_of(v)
        k = len(v)
        for i in range(k):
            turn = _cross(v[(i + 1) % k] - v[i], v[(i + 2) % k] - v[(i + 1) % k])
            if turn <= 1e-12 * scale * scale:
                raise DegenerateInput("vertices are not strictly convex in CCW order")
        v.setflags(write=False)
        self._v = v

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    @property
    def scale(self) -> float:
        return _scale_of(self._v)

    def __len__(self):
        return len(self._v)

    def edges(self):
        v = self._v
        return zip(v, np.roll(v, -1, axis=0))

    def __neg__(self) -> "Polygon":
        return Polygon(-self._v)

    def __repr__(self):
        return f"Polygon({self._v.tolist()!r})"


@dataclass(frozen=True)
class Moments:
    area: float
    barycenter: np.ndarray
    inertia: SymMatrix


def make_polygon(points) -> Polygon:
    """Convex hull of ``points`` as a CCW polygon.

    Near-duplicate points and collinear hull points are dropped.
    """
    pts = np.array(points, dtype=float).reshape(-1, 2)
    if len(pts) < 3:
        raise DegenerateInput("need at least 3 points")
    scale = _scale_of(pts)
    eps_len = 1e-12 * scale
    eps_area = 1e-12 * scale * scale

    order = np.lexsort((pts[:, 1], pts[:, 0]))
    uniq: list[np.ndarray] = []
    for p in pts[order]:
        if not uniq or np.max(np.abs(p - uniq[-1])) > eps_len:
            uniq.append(p)

    # Andrew's monotone chain with an exact turn test; near-collinear vertices
    # are pruned afterwards on the closed cycle, where the geometric middle
    # vertex is well defined (in sort order it need not be).
    def chain(seq):
        out: list[np.ndarray] = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-1] - out[-2], p - out[-2]) <= 0.0:
                out.pop()
            out.append(p)
        return out

    lower = chain(uniq)
    upper = chain(reversed(uniq))
    cleaned = lower[:-1] + upper[:-1]
    while len(cleaned) >= 3:
        k = len(cleaned)
        turns = [
            _cross(cleaned[i] - cleaned[i - 1], cleaned[(i + 1) % k] - cleaned[i])
            for i in range(k)
        ]
        worst = int(np.argmin(turns))
        gap = min(
            np.max(np.abs(cleaned[worst] - cleaned[worst - 1])),
            np.max(np.abs(cleaned[worst] - cleaned[(worst + 1) % k])),
        )
        if turns[worst] > eps_area and gap > eps_len:
            break
        cleaned.pop(worst)
    if len(cleaned) < 3:
        raise DegenerateInput("convex hull has fewer than 3 vertices")
    hull_arr = np.array(cleaned)
    if signed_area(hull_arr) <= eps_area:
        raise DegenerateInput("convex hull has zero area")
    return Polygon(hull_arr)


def signed_area(vertices) -> float:
    v = np.asarray(vertices, dtype=float)
    w = np.roll(v, -1, axis=0)
    return 0.5 * float(np.sum(v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]))


def contains_origin_interior(p: Polygon) -> bool:
    """True iff the origin is strictly inside, with margin 1e-12 * scale to every edge line."""
    margin = 1e-12 * p.scale
    for a, b in p.edges():
        length = float(np.hypot(*(b - a)))
        # distance from origin to the edge line, positive on the inner side
        if _cross(a, b) / length <= margin:
            return False
    return True


def polar(p: Polygon) -> Polygon:
    """Polar body: one dual vertex per edge, solving <a, v_i> = <a, v_{i+1}> = 1."""
    if not contains_origin_interior(p):
        raise OriginNotInterior("polar requires the origin strictly inside the polygon")
    dual = []
    for a, b in p.edges():
        d = b - a
        dual.append(np.array([d[1], -d[0]]) / _cross(a, b))
    dual_arr = np.array(dual)
    assert signed_area(dual_arr) > 0, "polar vertices must come out counter-clockwise"
    return Polygon(dual_arr)


def translate(p: Polygon, t) -> Polygon:
    return Polygon(p.vertices + np.asarray(t, dtype=float))


def linear_image(p: Polygon, m) -> Polygon:
    m = np.asarray(m, dtype=float)
    d = float(np.linalg.det(m))
    if abs(d) <= 1e-12:
        raise SingularMatrix(f"linear map has |det| = {abs(d):.3g}")
    v = p.vertices @ m.T
    if d < 0:
        v = v[::-1]
    return Polygon(v)


def moments(p: Polygon, apex=None) -> Moments:
    """Area, barycenter and inertia ``int x_i x_j`` by a signed fan of triangles.

    Each fan triangle (apex, v_i, v_{i+1}) contributes ``D/12`` times the
    triangle inertia polynomial, with ``D`` the signed doubled area.
    ``apex`` defaults to the origin; any point gives the same result.
    """
    shift = np.zeros(2) if apex is None else np.asarray(apex, dtype=float)
    v = p.vertices - shift
    w = np.roll(v, -1, axis=0)
    x1, y1, x2, y2 = v[:, 0], v[:, 1], w[:, 0], w[:, 1]
    d = x1 * y2 - x2 * y1
    area = 0.5 * float(np.sum(d))
    first = np.array([np.sum(d * (x1 + x2)), np.sum(d * (y1 + y2))]) / 6.0
    ixx = float(np.sum(d * (x1 * x1 + x1 * x2 + x2 * x2))) / 12.0
    iyy = float(np.sum(d * (y1 * y1 + y1 * y2 + y2 * y2))) / 12.0
    ixy = float(np.sum(d * (x1 * y1 + 0.5 * (x1 * y2 + x2 * y1) + x2 * y2))) / 12.0
    inertia = np.array([[ixx, ixy], [ixy, iyy]])
    if apex is not None:
        # move second moments back to the origin frame
        inertia = inertia + np.outer(first, shift) + np.outer(shift, first) + area * np.outer(shift, shift)
        first = first + area * shift
    return Moments(area=area, barycenter=first / area, inertia=SymMatrix(inertia))


def area(p: Polygon) -> float:
    return signed_area(p.vertices)


def barycenter(p: Polygon) -> np.ndarray:
    return moments(p).barycenter


def covariance(p: Polygon, tol: float = 1e-9) -> SymMatrix:
    """``inertia / area`` for a polygon whose barycenter is at the origin.

    Raises NotCentered if ``|barycenter| > tol * scale``; no silent re-centering.
    """
    mom = moments(p)
    if float(np.linalg.norm(mom.barycenter)) > tol * p.scale:
        raise NotCentered(f"barycenter {mom.barycenter.tolist()} is not at the origin")
    return mom.inertia / mom.area


def volume_product(p: Polygon) -> float:
    return area(p) * area(polar(p))


def vertices_close(p: Polygon, q: Polygon, tol: float) -> bool:
    """Equal vertex cycles up to a cyclic relabelling, entrywise within ``tol``."""
    a, b = p.vertices, q.vertices
    if a.shape != b.shape:
        return False
    for shift in range(len(b)):
        if np.max(np.abs(a - np.roll(b, -shift, axis=0))) <= tol:
            return True
    return False


def contains_polygon(outer: Polygon, inner: Polygon, tol: float = 0.0) -> bool:
    """Every vertex of ``inner`` lies in ``outer`` (closed, up to ``tol``)."""
    for a, b in outer.edges():
        e = b - a
        for v in inner.vertices:
            if _cross(e, v - a) < -tol:
                return False
    return True


# -- JSON surface -----------------------------------------------------------

def polygon_to_json(p: Polygon) -> str:
    pts = ", ".join(f"[{x:.17g}, {y:.17g}]" for x, y in p.vertices)
    return f'{{"vertices": [{pts}]}}'


def polygon_from_json(text: str) -> Polygon:
    try:
        data = json.loads(text)
        pts = data["vertices"]
    except (ValueError, KeyError, TypeError) as exc:
        raise DegenerateInput(f"malformed polygon JSON: {exc}") from exc
    if not isinstance(pts, list) or len(pts) < 3:
        raise DegenerateInput("polygon JSON needs at least 3 vertices")
    return make_polygon(pts)


def read_polygon(path) -> Polygon:
    return polygon_from_json(Path(path).read_text())


def write_polygon(p: Polygon, path) -> None:
    Path(path).write_text(polygon_to_json(p) + "\n")


def regular_polygon(k: int, radius: float = 1.0, phase: float = 0.0) -> Polygon:
    ang = phase + 2 * np.pi * np.arange(k) / k
    return Polygon(radius * np.column_stack([np.cos(ang), np.sin(ang)]))


def square(half_side: float = 1.0) -> Polygon:
    h = half_side
    return Polygon([[h, -h], [h, h], [-h, h], [-h, -h]])
