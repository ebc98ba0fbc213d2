"""Correlation dynamics under decoherence and the sudden-change diagnostics.

The initial two-site state is built once per parameter point; every later
time p is reached through the closed-form coefficient evolution.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .channels import Channel, check_p, evolve_closed_form
from .errors import DegenerateState, DomainEdge, MultiRoot, NoPeak
from .xstate import (CCoeffs, c_representation, classical_correlations, discord, discord_branches,
                     mutual_information, reduced_density_matrix, x_representation)
from .xy_model import DEFAULT_QUAD, ModelParams, QuadratureConfig

DEFAULT_P_POINTS = 501
PF_SCAN_POINTS = 64
PF_EDGE = 1e-6
PSC_XTOL = 1e-13
DEGENERATE_TOL = 1e-12
DEFAULT_H = 1e-4
QCP_LAMBDA_TOL = 1e-4


class DynamicsType(str, enum.Enum):
    II = "II"
    III = "III"


class PscMethod(str, enum.Enum):
    RATIO_FORMULA = "RATIO_FORMULA"
    BRANCH_ROOT = "BRANCH_ROOT"


@dataclass(frozen=True)
class SuddenChange:
    p_sc: float | None
    method: PscMethod
    dynamics_type: DynamicsType

    @property
    def present(self) -> bool:
        return self.p_sc is not None


class TrajectoryPoint(NamedTuple):
    p: float
    I: float
    C: float
    Q: float
    branch: str


@dataclass
class Trajectory:
    params: ModelParams
    r: int
    channel: Channel
    points: list[TrajectoryPoint] = field(default_factory=list)
    sudden_change: SuddenChange | None = None

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(pt, name) for pt in self.points])


def initial_coefficients(params: ModelParams, r: int = 1,
                         quad_cfg: QuadratureConfig = DEFAULT_QUAD) -> CCoeffs:
    return c_representation(reduced_density_matrix(params, r, quad_cfg))


def correlations_at(c0: CCoeffs, ch: Channel, p: float) -> TrajectoryPoint:
    s = x_representation(evolve_closed_form(c0, ch, p))
    info = mutual_information(s)
    q = discord(s)
    return TrajectoryPoint(p, info, classical_correlations(s), q.value, q.branch)


def default_p_grid(n: int = DEFAULT_P_POINTS) -> np.ndarray:
    return np.linspace(0.0, 1.0, n)


def trajectory(params: ModelParams, r: int, ch: Channel, p_grid: Sequence[float] | None = None,
               quad_cfg: QuadratureConfig = DEFAULT_QUAD) -> Trajectory:
    ch = Channel(ch)
    grid = default_p_grid() if p_grid is None else np.asarray(p_grid, dtype=float)
    if grid.size and (np.any(np.diff(grid) <= 0) or grid[0] < 0 or grid[-1] > 1):
        raise ValueError("p_grid must be strictly increasing within [0, 1]")
    c0 = initial_coefficients(params, r, quad_cfg)
    traj = Trajectory(params, r, ch, [correlations_at(c0, ch, float(p)) for p in grid])
    try:
        traj.sudden_change = sudden_change_from_coefficients(c0, ch)
    except DegenerateState:
        traj.sudden_change = None
    return traj


def _branch_gap(c0: CCoeffs, ch: Channel):
    def gap(p: float) -> float:
        q1, q2 = discord_branches(x_representation(evolve_closed_form(c0, ch, p)))
        return q1 - q2
    return gap


def _pf_root(c0: CCoeffs) -> float | None:
    gap = _branch_gap(c0, Channel.PF)
    ps = np.linspace(PF_EDGE, 1 - PF_EDGE, PF_SCAN_POINTS)
    vals = np.array([gap(p) for p in ps])
    signs = np.sign(vals)
    exact = np.flatnonzero(signs == 0)
    changes = np.flatnonzero(signs[:-1] * signs[1:] < 0)
    n_roots = len(exact) + len(changes)
    if n_roots == 0:
        return None
    if n_roots > 1:
        raise MultiRoot(f"Q1 - Q2 changes sign {n_roots} times on the p scan")
    if len(exact):
        return float(ps[exact[0]])
    i = changes[0]
    return float(brentq(gap, ps[i], ps[i + 1], xtol=PSC_XTOL))


def sudden_change_from_coefficients(c0: CCoeffs, ch: Channel) -> SuddenChange:
    ch = Channel(ch)
    x_mag, y_mag = abs(c0.c1), abs(c0.c2)
    if x_mag < DEGENERATE_TOL and y_mag < DEGENERATE_TOL:
        raise DegenerateState("both |c1(0)| and |c2(0)| vanish; no sudden change is defined")
    if ch is Channel.PF:
        p_sc = _pf_root(c0)
        method = PscMethod.BRANCH_ROOT
    else:
        # BPF damps c1 and leaves c2, BF the reverse: the damped one must start larger
        damped, kept = (x_mag, y_mag) if ch is Channel.BPF else (y_mag, x_mag)
        p_sc = 1.0 - math.sqrt(kept / damped) if damped > kept else None
        method = PscMethod.RATIO_FORMULA
    if p_sc is not None and not 0.0 < p_sc < 1.0:
        p_sc = None
    return SuddenChange(p_sc, method, DynamicsType.II if p_sc is not None else DynamicsType.III)


def sudden_change_point(params: ModelParams, r: int, ch: Channel,
                        quad_cfg: QuadratureConfig = DEFAULT_QUAD) -> SuddenChange:
    return sudden_change_from_coefficients(initial_coefficients(params, r, quad_cfg), ch)


def classify_dynamics(params: ModelParams, r: int, ch: Channel,
                      quad_cfg: QuadratureConfig = DEFAULT_QUAD) -> DynamicsType:
    return sudden_change_point(params, r, ch, quad_cfg).dynamics_type


def _neighbour_psc(params: ModelParams, wrt: str, x: float, r: int, ch: Channel,
                   quad_cfg: QuadratureConfig) -> float:
    key = "lam" if wrt == "lambda" else "gamma"
    try:
        shifted = params.replace(**{key: x})
    except ValueError as exc:
        raise DomainEdge(f"{wrt}={x} leaves the parameter domain") from exc
    if key == "lam" and x <= 0:
        raise DomainEdge(f"lambda={x} leaves the parameter domain")
    try:
        sc = sudden_change_point(shifted, r, ch, quad_cfg)
    except DegenerateState as exc:
        raise DomainEdge(f"no sudden change at {wrt}={x}") from exc
    if sc.p_sc is None:
        raise DomainEdge(f"no sudden change at {wrt}={x}")
    return sc.p_sc


def psc_derivative(params: ModelParams, r: int, ch: Channel, wrt: str = "lambda",
                   h: float = DEFAULT_H, quad_cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Central difference d p_sc / d(wrt), wrt in {"lambda", "gamma"}."""
    if wrt not in ("lambda", "gamma"):
        raise ValueError(f"wrt must be 'lambda' or 'gamma', got {wrt!r}")
    if not h > 0:
        raise ValueError("step h must be positive")
    x = params.lam if wrt == "lambda" else params.gamma
    hi = _neighbour_psc(params, wrt, x + h, r, ch, quad_cfg)
    lo = _neighbour_psc(params, wrt, x - h, r, ch, quad_cfg)
    return (hi - lo) / (2 * h)


@dataclass(frozen=True)
class QCPEstimate:
    lambda_star: float
    peak_value: float
    grid_lambda_star: float
    grid_peak_value: float
    lambdas: np.ndarray = field(repr=False)
    derivatives: np.ndarray = field(repr=False)

    def __iter__(self):
        return iter((self.lambda_star, self.peak_value))


def derivative_scan(ch: Channel, gamma: float, beta: float, r: int, lambdas: Sequence[float],
                    h: float = DEFAULT_H, quad_cfg: QuadratureConfig = DEFAULT_QUAD) -> np.ndarray:
    """d p_sc / d lambda on a lambda grid; NaN where p_sc is missing nearby."""
    out = np.full(len(lambdas), np.nan)
    for i, lam in enumerate(lambdas):
        try:
            out[i] = psc_derivative(ModelParams(float(lam), gamma, beta), r, ch, "lambda", h, quad_cfg)
        except DomainEdge:
            pass
    return out


def qcp_estimate(ch: Channel, gamma: float, beta: float, r: int = 1,
                 lambda_range: tuple[float, float] = (0.6, 1.5), grid_n: int = 64,
                 h: float = DEFAULT_H, quad_cfg: QuadratureConfig = DEFAULT_QUAD) -> QCPEstimate:
    """Finite-temperature critical-point estimate: the argmax of d p_sc / d lambda."""
    if not (beta > 0 and math.isfinite(beta)):
        raise ValueError("qcp_estimate needs a finite temperature (finite beta)")
    if grid_n < 32:
        raise ValueError("grid_n must be >= 32")
    lo, hi = lambda_range
    if not 0 < lo < hi:
        raise ValueError("lambda_range must satisfy 0 < lo < hi")
    lambdas = np.linspace(lo, hi, grid_n)
    derivs = derivative_scan(ch, gamma, beta, r, lambdas, h, quad_cfg)
    if np.all(np.isnan(derivs)):
        raise NoPeak("d p_sc / d lambda is undefined over the whole range")
    i = int(np.nanargmax(derivs))
    if i == 0 or i == grid_n - 1 or np.isnan(derivs[i - 1]) or np.isnan(derivs[i + 1]):
        raise NoPeak(f"d p_sc / d lambda has no interior maximum on [{lo}, {hi}]")

    def neg(lam: float) -> float:
        return -psc_derivative(ModelParams(lam, gamma, beta), r, ch, "lambda", h, quad_cfg)

    bracket = (lambdas[i - 1], lambdas[i], lambdas[i + 1])
    try:
        res = minimize_scalar(neg, bracket=bracket, method="golden",
                              options={"xtol": QCP_LAMBDA_TOL / (2 * lambdas[i])})
        lam_star, peak = float(res.x), float(-res.fun)
    except (ValueError, DomainEdge):
        # flat top: the grid triple is not a strict bracket
        lam_star, peak = float(lambdas[i]), float(derivs[i])
    if not (bracket[0] <= lam_star <= bracket[2]) or peak < derivs[i]:
        lam_star, peak = float(lambdas[i]), float(derivs[i])
    return QCPEstimate(lam_star, peak, float(lambdas[i]), float(derivs[i]), lambdas, derivs)


def discord_decay_profile(params: ModelParams, ch: Channel, p: float, r_max: int = 4,
                          quad_cfg: QuadratureConfig = DEFAULT_QUAD) -> list[tuple[int, float]]:
    """Discord at fixed p for distances r = 1..r_max."""
    if not 1 <= r_max <= 8:
        raise ValueError("r_max must lie in [1, 8]")
    check_p(p)
    out = []
    for r in range(1, r_max + 1):
        pt = correlations_at(initial_coefficients(params, r, quad_cfg), ch, p)
        out.append((r, pt.Q))
    return out
