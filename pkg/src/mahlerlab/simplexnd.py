"""Centered simplices in R^n: polarity, closed-form covariance, Monte Carlo moments.

A simplex with vertices v_0..v_n summing to zero has barycenter 0, and its
covariance is ``sum_i v_i v_i^T / ((n+1)(n+2))``. Its polar is again a
centered simplex whose j-th vertex w_j solves ``<v_i, w_j> = 1`` for i != j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, DegenerateInput, SingularSystem
from .numkit import SymMatrix

CHUNK = 1 << 16


class SimplexN:
    __slots__ = ("_v",)

    def __init__(self, vertices):
        v = np.array(vertices, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        n = v.shape[1]
        if v.shape[0] != n + 1 or n < 1:
            raise BadDimension(f"an n-simplex needs n+1 points in R^n, got shape {v.shape}")
        scale = max(float(np.max(np.abs(v))), 1e-300)
        if np.max(np.abs(v.sum(axis=0))) > 1e-12 * max(1.0, scale):
            raise DegenerateInput("simplex vertices must sum to zero")
        edges = v[1:] - v[0]
        if abs(np.linalg.det(edges)) <= 1e-12 * scale**n:
            raise DegenerateInput("simplex vertices do not span R^n")
        v.setflags(write=False)
        self._v = v

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    @property
    def dim(self) -> int:
        return self._v.shape[1]

    def volume(self) -> float:
        return abs(float(np.linalg.det(self._v[1:] - self._v[0]))) / math.factorial(self.dim)

    def linear_image(self, a) -> "SimplexN":
        return SimplexN(self._v @ np.asarray(a, dtype=float).T)

    def __repr__(self):
        return f"SimplexN({self._v.tolist()!r})"


@dataclass(frozen=True)
class MonteCarloMoments:
    volume_ratio: float
    cov_estimate: SymMatrix
    stderr: float
    stderr_entries: np.ndarray


def regular_simplex(n: int) -> SimplexN:
    """Regular simplex with unit vertex norms, built from the standard basis of R^(n+1)."""
    if n < 1:
        raise BadDimension(f"dimension must be >= 1, got {n}")
    pts = np.eye(n + 1) - 1.0 / (n + 1)
    # orthonormal basis of the sum-zero hyperplane
    basis, _ = np.linalg.qr(pts[:, :n])
    v = pts @ basis
    v -= v.mean(axis=0)
    v /= np.linalg.norm(v[0])
    return SimplexN(v)


def simplex_polar(s: SimplexN) -> SimplexN:
    v = s.vertices
    n = s.dim
    out = np.empty_like(v)
    rhs = np.ones(n)
    for j in range(n + 1):
        rows = np.delete(v, j, axis=0)
        try:
            out[j] = np.linalg.solve(rows, rhs)
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(f"facet system {j} is singular") from exc
    return SimplexN(out)


def simplex_covariance(s: SimplexN) -> SymMatrix:
    n = s.dim
    v = s.vertices
    return SymMatrix(v.T @ v / ((n + 1) * (n + 2)))


def theorem1_residual(s: SimplexN) -> float:
    """max-abs entry of (n+2)^2 cov(T°) cov(T) - I."""
    n = s.dim
    prod = (n + 2) ** 2 * (np.asarray(simplex_covariance(simplex_polar(s))) @ np.asarray(simplex_covariance(s)))
    return float(np.max(np.abs(prod - np.eye(n))))


def theorem1_equality_check(n: int) -> float:
    if not 1 <= n <= 6:
        raise BadDimension(f"equality probe supports 1 <= n <= 6, got {n}")
    return theorem1_residual(regular_simplex(n))


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def monte_carlo_moments(s: SimplexN, samples: int = 10**6, seed: int = 0) -> MonteCarloMoments:
    """Sample-based covariance and volume of a simplex.

    Covariance: barycentric weights from normalized exponential spacings
    (uniform on the simplex). Volume: rejection count in the bounding box,
    reported as a ratio to the exact volume. Both streams come from one
    Philox generator consumed in fixed-size chunks, so results depend only
    on ``seed`` and ``samples``.
    """
    if samples < 10**4:
        raise ValueError("need at least 1e4 samples")
    n = s.dim
    v = s.vertices
    rng = _rng(seed)

    sum_xx = np.zeros((n, n))
    sum_sq = np.zeros((n, n))
    done = 0
    while done < samples:
        m = min(CHUNK, samples - done)
        e = rng.exponential(size=(m, n + 1))
        lam = e / e.sum(axis=1, keepdims=True)
        x = lam @ v
        prods = x[:, :, None] * x[:, None, :]
        sum_xx += prods.sum(axis=0)
        sum_sq += (prods**2).sum(axis=0)
        done += m
    mean = sum_xx / samples
    var = sum_sq / samples - mean**2
    se = np.sqrt(np.maximum(var, 0.0) / samples)

    lo, hi = v.min(axis=0), v.max(axis=0)
    box = float(np.prod(hi - lo))
    # barycentric coordinates w.r.t. v_0: solve edges^T lam = x - v_0
    edges_inv = np.linalg.inv((v[1:] - v[0]).T)
    inside = 0
    done = 0
    while done < samples:
        m = min(CHUNK, samples - done)
        x = lo + (hi - lo) * rng.random(size=(m, n))
        lam = (x - v[0]) @ edges_inv.T
        inside += int(np.sum(np.all(lam >= 0, axis=1) & (lam.sum(axis=1) <= 1)))
        done += m
    ratio = box * inside / samples / s.volume()

    return MonteCarloMoments(
        volume_ratio=ratio,
        cov_estimate=SymMatrix(mean),
        stderr=float(np.max(se)),
        stderr_entries=se,
    )
