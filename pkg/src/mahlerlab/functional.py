"""The deformation functional ``F_K(x, xi) = vp((K° + xi)° + x)`` on polygons.

Analytic first and second derivatives at the origin are paired with
central finite-difference oracles that only ever call :func:`eval_F`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import convex2d as c2
from .convex2d import Polygon
from .errors import NotCritical, OriginNotInterior, OutOfDomain
from .numkit import Definiteness, SymMatrix, det, eigenvalues, inverse, psd_check

DIM = 2
FIRST_ORDER_STEP = 1e-5
SECOND_ORDER_STEP = 1e-4
CRITICAL_TOL = 1e-8
CENTER_TOL = 1e-8


@dataclass(frozen=True)
class JacobianReport:
    body_barycenter: np.ndarray
    polar_barycenter: np.ndarray
    vp: float
    jac: np.ndarray
    is_critical: bool


@dataclass(frozen=True)
class DetFormula:
    corrected: float
    literal: float


@dataclass(frozen=True)
class HessianReport:
    hess: SymMatrix
    eigenvalues: np.ndarray
    det_direct: float
    det_formula: float
    det_literal: float
    classification: Definiteness
    theorem1_holds: bool
    vp: float
    cov_body: SymMatrix
    cov_polar: SymMatrix


def _require_interior(k: Polygon) -> None:
    if not c2.contains_origin_interior(k):
        raise OriginNotInterior("the origin must lie strictly inside the body")


def deformed_body(k: Polygon, x, xi) -> Polygon:
    """``(K° + xi)° + x`` with an origin-interiority check after each translation."""
    _require_interior(k)
    shifted = c2.translate(c2.polar(k), xi)
    if not c2.contains_origin_interior(shifted):
        raise OutOfDomain(f"xi={np.asarray(xi).tolist()} pushes the origin out of K° + xi")
    body = c2.translate(c2.polar(shifted), x)
    if not c2.contains_origin_interior(body):
        raise OutOfDomain(f"x={np.asarray(x).tolist()} pushes the origin out of the deformed body")
    return body


def eval_F(k: Polygon, x, xi) -> float:
    return c2.volume_product(deformed_body(k, x, xi))


def _F_flat(k: Polygon, z: np.ndarray) -> float:
    return eval_F(k, z[:DIM], z[DIM:])


def jacobian_analytic(k: Polygon) -> JacobianReport:
    _require_interior(k)
    kp = c2.polar(k)
    mk, mp = c2.moments(k), c2.moments(kp)
    vp = mk.area * mp.area
    jac = -(DIM + 1) * vp * np.concatenate([mp.barycenter, mk.barycenter])
    crit = float(np.linalg.norm(jac)) <= CRITICAL_TOL * (DIM + 1) * vp
    return JacobianReport(mk.barycenter, mp.barycenter, vp, jac, crit)


def _default_step(k: Polygon, step: float | None, base: float) -> float:
    return base * k.scale if step is None else float(step)


def jacobian_fd(k: Polygon, step: float | None = None, richardson: bool = False) -> np.ndarray:
    """Central differences ``(F(+h) - F(-h)) / 2h`` in each of the 2n coordinates."""
    h = _default_step(k, step, FIRST_ORDER_STEP)

    def central(h):
        g = np.empty(2 * DIM)
        for i in range(2 * DIM):
            e = np.zeros(2 * DIM)
            e[i] = h
            g[i] = (_F_flat(k, e) - _F_flat(k, -e)) / (2 * h)
        return g

    g = central(h)
    if richardson:
        g = (4 * central(h / 2) - g) / 3
    return g


def hessian_fd(k: Polygon, step: float | None = None) -> SymMatrix:
    h = _default_step(k, step, SECOND_ORDER_STEP)
    m = 2 * DIM
    basis = np.eye(m) * h
    out = np.empty((m, m))
    for i in range(m):
        for j in range(i, m):
            ei, ej = basis[i], basis[j]
            val = (
                _F_flat(k, ei + ej)
                - _F_flat(k, ei - ej)
                - _F_flat(k, -ei + ej)
                + _F_flat(k, -ei - ej)
            ) / (4 * h * h)
            out[i, j] = out[j, i] = val
    return SymMatrix(out)


def hessian_det_formula(vp: float, cov_polar, cov_body, n: int = DIM) -> DetFormula:
    """Determinant of the Hessian from the covariance matrices.

    ``corrected`` uses the prefactor ``((n+1) vp)^(2n)`` that the block
    structure forces; ``literal`` keeps ``(n+1)^n vp^n`` for comparison.
    """
    prod = (n + 2) ** 2 * (np.asarray(cov_polar) @ np.asarray(cov_body)) - np.eye(n)
    core = det(prod)
    return DetFormula(
        corrected=((n + 1) * vp) ** (2 * n) * core,
        literal=(n + 1) ** n * vp**n * core,
    )


def theorem1_check(cov_polar, cov_body, n: int = DIM, tol: float = 1e-9) -> bool:
    """``cov(K°) >= (n+2)^-2 cov(K)^-1`` in the Loewner order."""
    gap = SymMatrix(np.asarray(cov_polar) - np.asarray(inverse(cov_body)) / (n + 2) ** 2)
    return psd_check(gap, tol).is_nonnegative


def assemble_hessian(vp: float, cov_polar, cov_body, n: int = DIM) -> SymMatrix:
    eye = np.eye(n)
    block = np.block([
        [(n + 2) * np.asarray(cov_polar), -eye],
        [-eye, (n + 2) * np.asarray(cov_body)],
    ])
    return SymMatrix((n + 1) * vp * block)


def hessian_analytic(k: Polygon, tol: float = 1e-9) -> HessianReport:
    report = jacobian_analytic(k)
    if not report.is_critical:
        raise NotCritical(f"|Jac| = {np.linalg.norm(report.jac):.3g}; barycenters are not at the origin")
    cov_body = c2.covariance(k, tol=CENTER_TOL)
    cov_polar = c2.covariance(c2.polar(k), tol=CENTER_TOL)
    hess = assemble_hessian(report.vp, cov_polar, cov_body)
    formula = hessian_det_formula(report.vp, cov_polar, cov_body)
    cls = psd_check(hess, tol)
    return HessianReport(
        hess=hess,
        eigenvalues=eigenvalues(hess),
        det_direct=det(hess),
        det_formula=formula.corrected,
        det_literal=formula.literal,
        classification=cls,
        theorem1_holds=cls.is_nonnegative,
        vp=report.vp,
        cov_body=cov_body,
        cov_polar=cov_polar,
    )


def santalo_derivative_check(k: Polygon, v, step: float | None = None) -> tuple[float, float]:
    """d/dt |(K - t v)°| at t=0: central difference vs ``(n+1) |K°| <G_K°, v>``."""
    _require_interior(k)
    v = np.asarray(v, dtype=float)
    h = _default_step(k, step, FIRST_ORDER_STEP)

    def polar_area(t):
        body = c2.translate(k, -t * v)
        if not c2.contains_origin_interior(body):
            raise OutOfDomain("stencil leaves the region where the polar is bounded")
        return c2.area(c2.polar(body))

    lhs = (polar_area(h) - polar_area(-h)) / (2 * h)
    mp = c2.moments(c2.polar(k))
    rhs = (DIM + 1) * mp.area * float(mp.barycenter @ v)
    return lhs, rhs
