"""Small dense symmetric linear algebra (dimension <= 8).

Vectors are plain 1-D numpy arrays. Symmetric matrices are wrapped in
:class:`SymMatrix`, which guarantees exact symmetry of the stored entries.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrix

ABS_FLOOR = 1e-14


class Definiteness(str, enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE = "positive_semidefinite"
    INDEFINITE = "indefinite"
    NEGATIVE_SEMIDEFINITE = "negative_semidefinite"
    NEGATIVE_DEFINITE = "negative_definite"

    @property
    def is_nonnegative(self) -> bool:
        return self in (Definiteness.POSITIVE_DEFINITE, Definiteness.POSITIVE_SEMIDEFINITE)


class SymMatrix:
    """Immutable real symmetric matrix.

    The input is symmetrized as ``(a + a.T) / 2`` so that
    ``entries[i, j] == entries[j, i]`` holds bit for bit. Inputs that are
    visibly non-symmetric (beyond 1e-9 of the max-abs entry) are rejected.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
        scale = max(float(np.max(np.abs(a))), ABS_FLOOR)
        if np.max(np.abs(a - a.T)) > 1e-9 * scale:
            raise ValueError("matrix is not symmetric")
        a = 0.5 * (a + a.T)
        a.setflags(write=False)
        self._a = a

    @classmethod
    def identity(cls, dim: int) -> "SymMatrix":
        return cls(np.eye(dim))

    @classmethod
    def diag(cls, values) -> "SymMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def dim(self) -> int:
        return self._a.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._a

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._a)))

    def __array__(self, dtype=None, copy=None):
        return self._a.astype(dtype) if dtype is not None else self._a.copy()

    def __getitem__(self, idx):
        return self._a[idx]

    def __add__(self, other):
        return SymMatrix(self._a + np.asarray(other))

    def __sub__(self, other):
        return SymMatrix(self._a - np.asarray(other))

    def __mul__(self, scalar: float):
        return SymMatrix(self._a * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float):
        return SymMatrix(self._a / float(scalar))

    def __neg__(self):
        return SymMatrix(-self._a)

    def __matmul__(self, other):
        return self._a @ np.asarray(other)

    def __rmatmul__(self, other):
        return np.asarray(other) @ self._a

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash(self._a.tobytes())

    def __repr__(self):
        return f"SymMatrix({self._a.tolist()!r})"


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray


def _as_array(m) -> np.ndarray:
    return m.entries if isinstance(m, SymMatrix) else np.asarray(m, dtype=float)


def _jacobi(a: np.ndarray, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations. Returns (eigenvalues, eigenvector columns), unsorted."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(float(np.max(np.abs(a))), ABS_FLOOR)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= 1e-300 or off <= 1e-17 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                diff = a[q, q] - a[p, p]
                if abs(apq) <= 1e-18 * max(abs(a[p, p]), abs(a[q, q]), 1e-280):
                    a[p, q] = a[q, p] = 0.0
                    continue
                if abs(diff) > 1e150 * abs(apq):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                a[p, q] = a[q, p] = 0.0
                v = v @ rot
    return np.diag(a).copy(), v


def sym_eigen(m) -> list[EigenPair]:
    """Eigen-decomposition of a symmetric matrix, eigenvalues ascending."""
    a = _as_array(SymMatrix(m) if not isinstance(m, SymMatrix) else m)
    values, vectors = _jacobi(a)
    order = np.argsort(values, kind="stable")
    return [EigenPair(float(values[i]), vectors[:, i].copy()) for i in order]


def eigenvalues(m) -> np.ndarray:
    return np.array([pair.value for pair in sym_eigen(m)])


def det(m) -> float:
    """Determinant of a square matrix (symmetric or not).

    Closed forms up to 3x3, LU with partial pivoting above.
    """
    a = np.array(_as_array(m), dtype=float)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    if n == 3:
        return float(
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )
    sign = 1.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if a[piv, k] == 0.0:
            return 0.0
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            sign = -sign
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k:])
    return float(sign * np.prod(np.diag(a)))


def inverse(m) -> SymMatrix:
    """Inverse by Gauss-Jordan elimination with partial pivoting."""
    sm = m if isinstance(m, SymMatrix) else SymMatrix(m)
    n = sm.dim
    norm = max(sm.max_abs(), ABS_FLOOR)
    if abs(det(sm)) <= 1e-14 * norm**n:
        raise SingularMatrix("matrix is numerically singular")
    aug = np.hstack([np.array(sm.entries), np.eye(n)])
    for k in range(n):
        piv = k + int(np.argmax(np.abs(aug[k:, k])))
        if piv != k:
            aug[[k, piv]] = aug[[piv, k]]
        aug[k] /= aug[k, k]
        for i in range(n):
            if i != k:
                aug[i] -= aug[i, k] * aug[k]
    return SymMatrix(aug[:, n:])


def psd_check(m, tol: float = 1e-9) -> Definiteness:
    """Classify definiteness from eigenvalue signs.

    Eigenvalues within ``tol * (1 + max|lambda|)`` of zero count as zero.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    lam = eigenvalues(m)
    thr = tol * (1.0 + float(np.max(np.abs(lam))))
    pos = int(np.sum(lam > thr))
    neg = int(np.sum(lam < -thr))
    n = lam.size
    if pos and neg:
        return Definiteness.INDEFINITE
    if pos == n:
        return Definiteness.POSITIVE_DEFINITE
    if neg == n:
        return Definiteness.NEGATIVE_DEFINITE
    if neg == 0:
        return Definiteness.POSITIVE_SEMIDEFINITE
    return Definiteness.NEGATIVE_SEMIDEFINITE
