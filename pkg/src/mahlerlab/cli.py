"""Command-line entry point.

Usage:
    mahlerlab vp --body square.json
    mahlerlab hessian --body square.json --format json
    mahlerlab hessian --q 0                   # the critical pentagon P_0
    mahlerlab fd-check --body body.json --step 1e-5
    mahlerlab pentagon-solve --q 0
    mahlerlab pentagon-report --q 0 --format json
    mahlerlab pentagon-sweep --steps 201 --out sweep.csv
    mahlerlab simplex-check --n 3 --samples 1000000 --seed 0
    mahlerlab project --body square.json --m 1,0.1,0,1 --x 0.1,0 --xi 0,0.2

Exit codes: 0 success, 1 usage error, 2 domain error (e.g. origin not interior).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import convex2d as c2
from . import functional as fn
from . import pentagon as pg
from . import projective as pj
from . import simplexnd as sn
from .errors import DomainError, OriginNotInterior
from .report import csv_text, dumps, text_block

COMMANDS = (
    "vp", "critical", "hessian", "fd-check", "pentagon-solve",
    "pentagon-report", "pentagon-sweep", "simplex-check", "project",
)
THREADS_ENV = "MAHLERLAB_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    body_path: str | None = None
    q: float | None = None
    q_from: float = pg.Q_MIN
    q_to: float = pg.Q_MAX
    steps: int = 201
    step: float | None = None
    out_path: str | None = None
    format: str = "text"
    seed: int = 0
    n: int = 2
    samples: int = 10**6
    m: tuple[float, ...] = (1.0, 0.0, 0.0, 1.0)
    x: tuple[float, ...] = (0.0, 0.0)
    xi: tuple[float, ...] = (0.0, 0.0)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.format!r}")
        body_cmds = ("vp", "critical", "hessian", "fd-check", "project")
        if self.command in body_cmds and self.body_path is None and self.q is None:
            raise UsageError(f"{self.command} needs --body PATH or --q (critical pentagon)")
        if self.command in ("pentagon-solve", "pentagon-report") and self.q is None:
            raise UsageError(f"{self.command} needs --q")
        if self.command == "pentagon-sweep" and self.steps < 2:
            raise UsageError("--steps must be >= 2")
        if self.step is not None and not self.step > 0:
            raise UsageError("--step must be positive")
        if len(self.m) != 4 or len(self.x) != 2 or len(self.xi) != 2:
            raise UsageError("--m needs 4 numbers, --x and --xi need 2")


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mahlerlab", description="Volume product workbench for planar convex bodies.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--body", dest="body_path", help="polygon JSON file {\"vertices\": [[x, y], ...]}")
    parser.add_argument("--q", type=float, help="pentagon parameter; selects P_q when no --body is given")
    parser.add_argument("--q-from", type=float, default=pg.Q_MIN)
    parser.add_argument("--q-to", type=float, default=pg.Q_MAX)
    parser.add_argument("--steps", type=int, default=201)
    parser.add_argument("--step", type=float, help="finite-difference step")
    parser.add_argument("--out", dest="out_path")
    parser.add_argument("--format", choices=("json", "csv", "text"))
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n", type=int, default=2, help="simplex dimension")
    parser.add_argument("--samples", type=int, default=10**6)
    parser.add_argument("--m", type=_floats, default=(1.0, 0.0, 0.0, 1.0), help="2x2 matrix, row-major")
    parser.add_argument("--x", type=_floats, default=(0.0, 0.0))
    parser.add_argument("--xi", type=_floats, default=(0.0, 0.0))
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    fmt = ns.format or ("csv" if ns.command == "pentagon-sweep" else "text")
    cfg = RunConfig(
        command=ns.command, body_path=ns.body_path, q=ns.q, q_from=ns.q_from, q_to=ns.q_to,
        steps=ns.steps, step=ns.step, out_path=ns.out_path, format=fmt, seed=ns.seed,
        n=ns.n, samples=ns.samples, m=ns.m, x=ns.x, xi=ns.xi,
    )
    cfg.validate()
    return cfg


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        val = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if val < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return val


def _body(cfg: RunConfig) -> c2.Polygon:
    if cfg.body_path is not None:
        try:
            return c2.read_polygon(cfg.body_path)
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.body_path}: {exc.strerror}") from None
    return pg.build(pg.PentagonParams.on_curve(cfg.q))


# -- commands: each returns a dict (or, for csv, header + rows) ------------

def cmd_vp(cfg):
    k = _body(cfg)
    if not c2.contains_origin_interior(k):
        raise OriginNotInterior("origin is not strictly inside the body")
    kp = c2.polar(k)
    return {
        "vertices": k.vertices,
        "area": c2.area(k),
        "polar_area": c2.area(kp),
        "vp": c2.area(k) * c2.area(kp),
        "mahler_bound": 27 / 4,
        "santalo_bound": math.pi**2,
    }


def cmd_critical(cfg):
    r = fn.jacobian_analytic(_body(cfg))
    return {
        "body_barycenter": r.body_barycenter,
        "polar_barycenter": r.polar_barycenter,
        "vp": r.vp,
        "jac": r.jac,
        "is_critical": r.is_critical,
    }


def _hessian_dict(r: fn.HessianReport) -> dict:
    return {
        "vp": r.vp,
        "cov_body": r.cov_body,
        "cov_polar": r.cov_polar,
        "hess": r.hess,
        "eigenvalues": r.eigenvalues,
        "det_direct": r.det_direct,
        "det_formula": r.det_formula,
        "det_literal": r.det_literal,
        "classification": r.classification,
        "theorem1_holds": r.theorem1_holds,
    }


def cmd_hessian(cfg):
    return _hessian_dict(fn.hessian_analytic(_body(cfg)))


def cmd_fd_check(cfg):
    k = _body(cfg)
    jr = fn.jacobian_analytic(k)
    jfd = fn.jacobian_fd(k, cfg.step)
    out = {
        "jac_analytic": jr.jac,
        "jac_fd": jfd,
        "jac_max_abs_diff": float(np.max(np.abs(jfd - jr.jac))),
        "is_critical": jr.is_critical,
    }
    if jr.is_critical:
        hr = fn.hessian_analytic(k)
        hfd = fn.hessian_fd(k, None if cfg.step is None else max(cfg.step, 1e-4))
        out.update({
            "hess_analytic": hr.hess,
            "hess_fd": hfd,
            "hess_max_abs_diff": float(np.max(np.abs(hfd.entries - hr.hess.entries))),
        })
    return out


def cmd_pentagon_solve(cfg):
    b = pg.solve_b(cfg.q)
    return {"q": cfg.q, "b": b, "f_minus_1": pg.f_criticality(cfg.q, b) - 1.0}


def cmd_pentagon_report(cfg):
    params = pg.PentagonParams.on_curve(cfg.q)
    poly = pg.build(params)
    area, ixx, iyy = pg.closed_form_moments(params)
    eng = c2.moments(poly)
    hr = fn.hessian_analytic(poly)
    return {
        "q": params.q,
        "b": params.b,
        "r": params.r,
        "c": params.c,
        "vertices": poly.vertices,
        "f": pg.f_criticality(params.q, params.b),
        "area": area,
        "ixx": ixx,
        "iyy": iyy,
        "ixx_literal_reading": pg.literal_ixx(params),
        "engine_area": eng.area,
        "engine_ixx": float(eng.inertia[0, 0]),
        "engine_iyy": float(eng.inertia[1, 1]),
        "engine_ixy": float(eng.inertia[0, 1]),
        "s": pg.s_func(params),
        "t": pg.t_func(params),
        "trace_cov_product": pg.trace_cov_product(params),
        "vp": c2.volume_product(poly),
        "eigenvalues": hr.eigenvalues,
        "det_direct": hr.det_direct,
        "det_formula": hr.det_formula,
        "det_literal": hr.det_literal,
        "det_over_81_area4": hr.det_direct / (81 * area**4),
        "classification": hr.classification,
        "theorem1_holds": hr.theorem1_holds,
    }


def cmd_pentagon_sweep(cfg):
    rows = pg.sweep(cfg.q_from, cfg.q_to, cfg.steps, workers=_threads())
    return pg.SWEEP_HEADER, [row.as_tuple() for row in rows]


def cmd_simplex_check(cfg):
    if not 1 <= cfg.n <= 6:
        raise UsageError("--n must be between 1 and 6")
    s = sn.regular_simplex(cfg.n)
    cov = sn.simplex_covariance(s)
    mc = sn.monte_carlo_moments(s, cfg.samples, cfg.seed)
    dev = np.abs(np.asarray(mc.cov_estimate) - np.asarray(cov)) / mc.stderr_entries
    return {
        "n": cfg.n,
        "residual": sn.theorem1_equality_check(cfg.n),
        "cov_closed_form": cov,
        "cov_monte_carlo": mc.cov_estimate,
        "stderr": mc.stderr,
        "max_deviation_in_stderr": float(np.max(dev)),
        "volume_ratio": mc.volume_ratio,
        "samples": cfg.samples,
        "seed": cfg.seed,
    }


def cmd_project(cfg):
    k = _body(cfg)
    m = np.array(cfg.m).reshape(2, 2)
    h = pj.psi(m, cfg.x, cfg.xi)
    image = pj.apply_to_polygon(h, k)
    return {
        "vertices": image.vertices,
        "vp": c2.volume_product(image),
        "F": fn.eval_F(k, cfg.x, cfg.xi),
        "homography": h.mat,
    }


HANDLERS = {
    "vp": cmd_vp,
    "critical": cmd_critical,
    "hessian": cmd_hessian,
    "fd-check": cmd_fd_check,
    "pentagon-solve": cmd_pentagon_solve,
    "pentagon-report": cmd_pentagon_report,
    "pentagon-sweep": cmd_pentagon_sweep,
    "simplex-check": cmd_simplex_check,
    "project": cmd_project,
}


def render(cfg: RunConfig, result) -> str:
    if cfg.command == "pentagon-sweep":
        header, rows = result
        if cfg.format == "json":
            return dumps([dict(zip((h.lower() for h in header), r)) for r in rows]) + "\n"
        if cfg.format == "text":
            return "".join(" ".join(f"{v:>24.17g}" for v in r) + "\n" for r in rows)
        return csv_text(header, rows)
    if cfg.format == "json":
        return dumps(result) + "\n"
    if cfg.format == "csv":
        scalars = {k: v for k, v in result.items() if isinstance(v, (int, float)) and not isinstance(v, bool)}
        return csv_text(list(scalars), [list(scalars.values())])
    return text_block(result)


def run(cfg: RunConfig) -> int:
    try:
        result = HANDLERS[cfg.command](cfg)
        text = render(cfg, result)
    except UsageError as exc:
        print(f"mahlerlab: usage error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"mahlerlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if cfg.out_path:
        Path(cfg.out_path).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"mahlerlab: usage error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
