"""The axially symmetric pentagons P_{q,b} and their critical curve.

P_{q,b} has vertices (-1/b, 0), (q, ±r), (b, ±c) with r = sqrt(1 + q^2) and
c = (1 + b q) / r. Its polar is -P_{q,b}, so it is critical for the volume
product in its projective orbit exactly when its barycenter vanishes, i.e.
when f(q, b) = 1. On [-1/sqrt2, 1/sqrt2] that equation defines a decreasing
function b(q) joining the triangle Delta (q = -1/sqrt2) to -Delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import convex2d as c2
from . import functional
from .convex2d import Polygon
from .errors import BadParams, DegenerateInput, OutOfRange

SQRT2 = math.sqrt(2.0)
Q_MIN, Q_MAX = -1.0 / SQRT2, 1.0 / SQRT2
B_MIN, B_MAX = 1.0 / SQRT2, SQRT2
BISECTION_STEPS = 60
NEWTON_STEPS = 5

SWEEP_HEADER = ("q", "b", "area", "Ixx", "Iyy", "s", "t", "vp", "lambda_min", "lambda_max")


@dataclass(frozen=True)
class PentagonParams:
    q: float
    b: float

    def __post_init__(self):
        if not (self.b > 0):
            raise BadParams(f"b must be positive, got {self.b}")
        lo, hi = -1.0 / self.b, self.b
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        if not (lo - slack <= self.q <= hi + slack):
            raise BadParams(f"q={self.q} outside [-1/b, b] = [{lo}, {hi}]")

    @property
    def r(self) -> float:
        return math.sqrt(1.0 + self.q * self.q)

    @property
    def c(self) -> float:
        return (1.0 + self.b * self.q) / self.r

    @classmethod
    def on_curve(cls, q: float) -> "PentagonParams":
        return cls(q, solve_b(q))


@dataclass(frozen=True)
class SweepRow:
    q: float
    b: float
    area: float
    Ixx: float
    Iyy: float
    s: float
    t: float
    vp: float
    lambda_min: float
    lambda_max: float

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in SWEEP_HEADER)


def build(params: PentagonParams) -> Polygon:
    """CCW polygon; coinciding vertices at the degenerate ends collapse to a triangle."""
    q, b, r, c = params.q, params.b, params.r, max(params.c, 0.0)
    raw = [(-1.0 / b, 0.0), (q, -r), (b, -c), (b, c), (q, r)]
    # At q = -1/b the point (-1/b, 0) sits on the segment (q, ±r) and (b, ±c)
    # merge; the hull drops both and returns the triangle.
    try:
        return c2.make_polygon(raw)
    except DegenerateInput as exc:
        raise BadParams(f"pentagon collapses below a triangle: {exc}") from exc


def f_criticality(q: float, b: float) -> float:
    return q**3 * b - q**2 * b**2 - q**2 + 2 * q * b**5 + q * b + 3 * b**4


def grad_f(q: float, b: float) -> tuple[float, float]:
    df_dq = 3 * b * q**2 - 2 * (b**2 + 1) * q + 2 * b**5 + b
    df_db = q**3 - 2 * b * q**2 + (10 * b**4 + 1) * q + 12 * b**3
    return df_dq, df_db


def solve_b(q: float) -> float:
    """Unique b in [1/sqrt2, sqrt2] with f(q, b) = 1.

    f(q, .) is increasing on the strip, so bisection always brackets the
    root; a few Newton steps then polish it to |f - 1| ~ 1e-15.
    """
    if not (Q_MIN - 1e-15 <= q <= Q_MAX + 1e-15):
        raise OutOfRange(f"q={q} outside [-1/sqrt2, 1/sqrt2]")
    q = min(max(q, Q_MIN), Q_MAX)
    lo, hi = B_MIN, B_MAX
    g_lo = f_criticality(q, lo) - 1.0
    g_hi = f_criticality(q, hi) - 1.0
    if g_lo >= 0:
        return lo
    if g_hi <= 0:
        return hi
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if f_criticality(q, mid) - 1.0 < 0:
            lo = mid
        else:
            hi = mid
    b = 0.5 * (lo + hi)
    for _ in range(NEWTON_STEPS):
        g = f_criticality(q, b) - 1.0
        if g == 0.0:
            break
        nb = b - g / grad_f(q, b)[1]
        if not (B_MIN <= nb <= B_MAX) or nb == b:
            break
        b = nb
    return b


def db_dq(q: float, b: float | None = None) -> float:
    """Slope of the critical curve, -f_q / f_b."""
    if b is None:
        b = solve_b(q)
    fq, fb = grad_f(q, b)
    return -fq / fb


# -- closed-form moments --------------------------------------------------
#
# Six triangles with apex at the origin, paired by the x-axis symmetry:
#   T1 = (0, (q, r), (-1/b, 0)),  T2 = (0, (b, c), (q, r)),  T3 = (0, (b, 0), (b, c)).
# D_i are the doubled areas; each pair contributes D_i to the area and D_i/6
# times the triangle inertia polynomial to Ixx and Iyy.

def _pieces(q: float, b: float):
    r = math.sqrt(1.0 + q * q)
    c = (1.0 + b * q) / r
    d = (r / b, b * r - q * c, b * c)
    wx = (1.0 / b**2 - q / b + q * q, q * q + q * b + b * b, 3.0 * b * b)
    wy = (r * r, r * r + r * c + c * c, c * c)
    return r, c, d, wx, wy


def closed_form_moments(params: PentagonParams) -> tuple[float, float, float]:
    """(|P|, Ixx, Iyy) of P_{q,b}."""
    _, _, d, wx, wy = _pieces(params.q, params.b)
    area = d[0] + d[1] + d[2]
    ixx = sum(di * wi for di, wi in zip(d, wx)) / 6.0
    iyy = sum(di * wi for di, wi in zip(d, wy)) / 6.0
    return area, ixx, iyy


def literal_ixx(params: PentagonParams) -> float:
    """Ixx with the first triangle weight read as (-b^-2 - b^-1 q + q^2).

    Kept only for side-by-side reporting; it disagrees with direct integration.
    """
    q, b = params.q, params.b
    _, _, d, wx, _ = _pieces(q, b)
    w1 = -1.0 / b**2 - q / b + q * q
    return (d[0] * w1 + d[1] * wx[1] + d[2] * wx[2]) / 6.0


def moment_partials(q: float, b: float) -> dict[str, tuple[float, float]]:
    """Analytic (d/dq, d/db) of area, Ixx and Iyy."""
    r, c, d, wx, wy = _pieces(q, b)
    r_q, r_b = q / r, 0.0
    c_q = b / r - (1.0 + b * q) * q / r**3
    c_b = q / r

    d_q = (r_q / b, b * r_q - c - q * c_q, b * c_q)
    d_b = (-r / b**2, r + b * r_b - q * c_b, c + b * c_b)
    wx_q = (-1.0 / b + 2 * q, 2 * q + b, 0.0)
    wx_b = (-2.0 / b**3 + q / b**2, q + 2 * b, 6.0 * b)
    wy_q = (2 * r * r_q, 2 * r * r_q + r_q * c + r * c_q + 2 * c * c_q, 2 * c * c_q)
    wy_b = (0.0, r * c_b + 2 * c * c_b, 2 * c * c_b)

    def prod_rule(w, dd, ww):
        return sum(dd[i] * w[i] + d[i] * ww[i] for i in range(3)) / 6.0

    return {
        "area": (sum(d_q), sum(d_b)),
        "Ixx": (prod_rule(wx, d_q, wx_q), prod_rule(wx, d_b, wx_b)),
        "Iyy": (prod_rule(wy, d_q, wy_q), prod_rule(wy, d_b, wy_b)),
    }


def s_func(params: PentagonParams) -> float:
    """det(|P|^2 I - 16 I(P)^2) with I(P) diagonal by symmetry."""
    area, ixx, iyy = closed_form_moments(params)
    a2 = area * area
    return (a2 - 16 * ixx * ixx) * (a2 - 16 * iyy * iyy)


def t_func(params: PentagonParams) -> float:
    """Half-trace of |P|^2 I - 16 I(P)^2; negative iff tr[cov(P) cov(P°)] > 1/8 on the curve."""
    area, ixx, iyy = closed_form_moments(params)
    return area * area - 8 * (ixx * ixx + iyy * iyy)


def t_partials(q: float, b: float) -> tuple[float, float]:
    area, ixx, iyy = closed_form_moments(PentagonParams(q, b))
    dp = moment_partials(q, b)
    return tuple(
        2 * area * dp["area"][k] - 16 * (ixx * dp["Ixx"][k] + iyy * dp["Iyy"][k])
        for k in (0, 1)
    )


def dt_dq_along_curve(q: float) -> float:
    """Total derivative of q -> t(q, b(q)) via the implicit slope of the curve."""
    if not (Q_MIN - 1e-15 <= q <= Q_MAX + 1e-15):
        raise OutOfRange(f"q={q} outside [-1/sqrt2, 1/sqrt2]")
    b = solve_b(q)
    t_q, t_b = t_partials(q, b)
    return t_q + db_dq(q, b) * t_b


def trace_cov_product(params: PentagonParams) -> float:
    """tr[cov(P) cov(P°)] on the critical curve, where cov(P°) = cov(P) = I(P)/|P|."""
    area, ixx, iyy = closed_form_moments(params)
    return (ixx * ixx + iyy * iyy) / (area * area)


def sweep_row(q: float) -> SweepRow:
    params = PentagonParams.on_curve(q)
    area, ixx, iyy = closed_form_moments(params)
    report = functional.hessian_analytic(build(params))
    return SweepRow(
        q=params.q,
        b=params.b,
        area=area,
        Ixx=ixx,
        Iyy=iyy,
        s=s_func(params),
        t=t_func(params),
        vp=c2.volume_product(build(params)),
        lambda_min=float(report.eigenvalues[0]),
        lambda_max=float(report.eigenvalues[-1]),
    )


def sweep_grid(q_from: float, q_to: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise OutOfRange("sweep needs at least 2 steps")
    for q in (q_from, q_to):
        if not (Q_MIN - 1e-15 <= q <= Q_MAX + 1e-15):
            raise OutOfRange(f"q={q} outside [-1/sqrt2, 1/sqrt2]")
    grid = np.linspace(q_from, q_to, steps)
    # pin the endpoints so the triangles are hit exactly
    grid[0], grid[-1] = q_from, q_to
    return np.sort(grid)


def sweep(q_from: float = Q_MIN, q_to: float = Q_MAX, steps: int = 201, workers: int = 1) -> list[SweepRow]:
    """Rows along the critical curve, ascending in q."""
    grid = sweep_grid(q_from, q_to, steps)
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(sweep_row, grid))
    return [sweep_row(q) for q in grid]
