"""Homographies of RP^n acting on polygons through the chart y -> [1, y].

A homography is kept as a full (n+1)x(n+1) matrix, composed by matrix
product, and read in block form ``[[a, xi^T], [x, M]]``; on the chart it
acts by ``y -> (x + M y) / (a + xi . y)``.
"""

from __future__ import annotations

import numpy as np

from . import convex2d as c2
from .convex2d import Polygon
from .errors import ChartViolation, DegenerateImage, DegenerateInput, SingularMatrix

DET_TOL = 1e-12
CHART_TOL = 1e-12


class Homography:
    """Projective transformation, normalized so the top-left entry is 1 when possible."""

    __slots__ = ("_mat",)

    def __init__(self, mat):
        a = np.array(mat, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 2:
            raise ValueError(f"expected a square matrix of size >= 2, got {a.shape}")
        if abs(a[0, 0]) > 1e-12:
            a = a / a[0, 0]
        if abs(np.linalg.det(a)) <= DET_TOL:
            raise SingularMatrix("homography matrix is singular")
        a.setflags(write=False)
        self._mat = a

    @classmethod
    def identity(cls, n: int = 2) -> "Homography":
        return cls(np.eye(n + 1))

    @property
    def mat(self) -> np.ndarray:
        return self._mat

    @property
    def dim(self) -> int:
        return self._mat.shape[0] - 1

    def blocks(self) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
        """``(a, M, x, xi)`` from ``[[a, xi^T], [x, M]]``."""
        a = self._mat
        return float(a[0, 0]), a[1:, 1:].copy(), a[1:, 0].copy(), a[0, 1:].copy()

    def __matmul__(self, other: "Homography") -> "Homography":
        return Homography(self._mat @ other._mat)

    def inverse(self) -> "Homography":
        return Homography(np.linalg.inv(self._mat))

    def allclose(self, other: "Homography", tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._mat - other._mat)) <= tol)

    def __call__(self, points) -> np.ndarray:
        """Chart action on an (k, n) array of points; raises ChartViolation near H_0."""
        a, m, x, xi = self.blocks()
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        denom = a + pts @ xi
        if np.any(denom <= CHART_TOL):
            raise ChartViolation("a point is sent to (or across) the hyperplane at infinity")
        return (x + pts @ m.T) / denom[:, None]

    def __repr__(self):
        return f"Homography({self._mat.tolist()!r})"


def _check_gl(m: np.ndarray) -> None:
    if abs(np.linalg.det(m)) <= DET_TOL:
        raise SingularMatrix("linear block is singular")


def phi(m, x, xi) -> Homography:
    """Block homography ``[[1, xi^T], [x, M]]``."""
    m = np.asarray(m, dtype=float)
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    _check_gl(m)
    n = m.shape[0]
    out = np.empty((n + 1, n + 1))
    out[0, 0] = 1.0
    out[0, 1:] = xi
    out[1:, 0] = x
    out[1:, 1:] = m
    return Homography(out)


def alpha(n_mat, y, eta):
    n_mat = np.asarray(n_mat, dtype=float)
    y = np.asarray(y, dtype=float)
    eta = np.asarray(eta, dtype=float)
    return n_mat @ (np.eye(len(y)) + np.outer(y, eta)), n_mat @ y, eta.copy()


def alpha_inv(m, x, xi):
    m = np.asarray(m, dtype=float)
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    base = m - np.outer(x, xi)
    _check_gl(base)
    return base, np.linalg.solve(base, x), xi.copy()


def psi(n_mat, y, eta) -> Homography:
    """Product of the linear part, the chart translation by ``y`` and the polar translation by ``eta``."""
    n_mat = np.asarray(n_mat, dtype=float)
    y = np.asarray(y, dtype=float)
    eta = np.asarray(eta, dtype=float)
    _check_gl(n_mat)
    n = len(y)
    eye = np.eye(n)
    zero = np.zeros(n)
    lin = phi(n_mat, zero, zero)
    shift = phi(eye, y, zero)
    dual_shift = phi(eye, zero, eta)
    return lin @ shift @ dual_shift


def apply_to_polygon(h: Homography, p: Polygon) -> Polygon:
    """Image of ``p`` under ``h`` read in the affine chart, re-hulled CCW."""
    if h.dim != 2:
        raise ValueError("polygon action needs a 3x3 homography")
    image = h(p.vertices)
    try:
        return c2.make_polygon(image)
    except DegenerateInput as exc:
        raise DegenerateImage(str(exc)) from exc


def validity_check(m, x, xi, p: Polygon) -> bool:
    """``-xi`` strictly inside ``p°`` and ``-x`` strictly inside ``M p``."""
    xi = np.asarray(xi, dtype=float)
    margin = CHART_TOL * max(1.0, p.scale)
    if np.any(1.0 + p.vertices @ xi <= margin):
        return False
    try:
        moved = c2.translate(c2.linear_image(p, m), x)
    except SingularMatrix:
        return False
    return c2.contains_origin_interior(moved)
