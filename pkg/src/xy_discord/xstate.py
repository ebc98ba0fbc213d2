"""Two-qubit X states: representations, entropies, mutual information, discord.

Basis ordering throughout is {|11>, |10>, |01>, |00>}; qubit A is the first
tensor factor, qubit B the second. The state is

    [[a, 0, 0, f],
     [0, b, z, 0],
     [0, z, b, 0],
     [f, 0, 0, d]]
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import PositivityViolation
from .xy_model import DEFAULT_QUAD, ModelParams, QuadratureConfig, correlators

EIG_CLAMP = 1e-12
STATE_TOL = 1e-9
TIE_TOL = 1e-12


@dataclass(frozen=True)
class XState:
    a: float
    b: float
    d: float
    z: float
    f: float

    def matrix(self) -> np.ndarray:
        a, b, d, z, f = self.a, self.b, self.d, self.z, self.f
        return np.array([[a, 0.0, 0.0, f],
                         [0.0, b, z, 0.0],
                         [0.0, z, b, 0.0],
                         [f, 0.0, 0.0, d]])

    def to_json(self) -> str:
        """Full 4x4 matrix, row-major, as a JSON array of arrays."""
        return json.dumps(self.matrix().tolist())

    @classmethod
    def from_json(cls, text: str) -> "XState":
        m = np.asarray(json.loads(text), dtype=float)
        return cls(a=m[0, 0], b=0.5 * (m[1, 1] + m[2, 2]), d=m[3, 3], z=m[1, 2], f=m[0, 3])


@dataclass(frozen=True)
class CCoeffs:
    c1: float
    c2: float
    c3: float
    c4: float


class Entropies(NamedTuple):
    s_a: float
    s_ab: float


class Discord(NamedTuple):
    value: float
    branch: str  # "Q1" or "Q2"


def c_representation(s: XState) -> CCoeffs:
    return CCoeffs(c1=2 * s.z + 2 * s.f, c2=2 * s.z - 2 * s.f,
                   c3=s.a + s.d - 2 * s.b, c4=s.a - s.d)


def _from_c(c: CCoeffs) -> XState:
    return XState(a=(1 + c.c3 + 2 * c.c4) / 4, b=(1 - c.c3) / 4, d=(1 + c.c3 - 2 * c.c4) / 4,
                  z=(c.c1 + c.c2) / 4, f=(c.c1 - c.c2) / 4)


def x_representation(c: CCoeffs, tol: float = STATE_TOL) -> XState:
    s = _from_c(c)
    check_state(s, tol)
    return s


def _raw_eigenvalues(c: CCoeffs) -> np.ndarray:
    root = math.sqrt(4 * c.c4**2 + (c.c1 - c.c2) ** 2)
    return np.array([(1 + c.c3 + root) / 4, (1 + c.c3 - root) / 4,
                     (1 - c.c3 + c.c1 + c.c2) / 4, (1 - c.c3 - c.c1 - c.c2) / 4])


def check_state(s: XState, tol: float = STATE_TOL) -> None:
    """Raise PositivityViolation unless s is a density matrix to within ``tol``."""
    if min(s.a, s.b, s.d) < -tol:
        raise PositivityViolation(f"negative diagonal entry in {s}")
    if abs(s.a + 2 * s.b + s.d - 1) > tol:
        raise PositivityViolation(f"trace {s.a + 2 * s.b + s.d} != 1 for {s}")
    ev = _raw_eigenvalues(c_representation(s))
    if ev.min() < -tol:
        raise PositivityViolation(f"eigenvalue {ev.min():.3e} < 0 for {s}")


def eigenvalues(s: XState) -> np.ndarray:
    """The four eigenvalues, sorted descending, clamped to [0, 1]."""
    ev = np.sort(_raw_eigenvalues(c_representation(s)))[::-1]
    if ev.min() < -EIG_CLAMP or ev.max() > 1 + EIG_CLAMP:
        raise PositivityViolation(f"eigenvalues {ev} outside [0, 1] for {s}")
    return np.clip(ev, 0.0, 1.0)


def shannon(probs) -> float:
    """-sum p log2 p with 0 log 0 = 0."""
    p = np.asarray(probs, dtype=float)
    p = p[p > 1e-300]
    return float(-np.sum(p * np.log2(p)))


def _xlog2_ratio(x: float, y: float) -> float:
    # x log2(x / y), 0 when x vanishes
    if x <= 1e-300:
        return 0.0
    return x * math.log2(x / y)


def marginal_entropy(s: XState) -> float:
    c4 = s.a - s.d
    return shannon([(1 + c4) / 2, (1 - c4) / 2])


def entropies(s: XState) -> Entropies:
    return Entropies(marginal_entropy(s), shannon(eigenvalues(s)))


def mutual_information(s: XState) -> float:
    s_a, s_ab = entropies(s)
    return max(2 * s_a - s_ab, 0.0)


def discord_branches(s: XState) -> tuple[float, float]:
    """The two candidate discords (Q1, Q2).

    Q1 corresponds to a sigma_z measurement on B, Q2 to a measurement in
    the equatorial plane.
    """
    s_b, s_ab = entropies(s)
    a, b, d = s.a, s.b, s.d
    cond_z = -(_xlog2_ratio(a, a + b) + _xlog2_ratio(b, a + b)
               + _xlog2_ratio(d, d + b) + _xlog2_ratio(b, d + b))
    q1 = s_b - s_ab + cond_z
    gamma = min(math.sqrt((a - d) ** 2 + 4 * (abs(s.z) + abs(s.f)) ** 2), 1.0)
    q2 = s_b - s_ab + shannon([(1 + gamma) / 2, (1 - gamma) / 2])
    return q1, q2


def discord(s: XState) -> Discord:
    q1, q2 = discord_branches(s)
    if abs(q1 - q2) < TIE_TOL or q2 < q1:
        return Discord(max(q2, 0.0), "Q2")
    return Discord(max(q1, 0.0), "Q1")


def classical_correlations(s: XState) -> float:
    return max(mutual_information(s) - discord(s).value, 0.0)


def classical_correlations_z_measurement(s: XState) -> float:
    """J for a sigma_z measurement on B, written directly in a, b, d.

    Equal to the classical correlations whenever the Q1 branch is active.
    """
    a, b, d = s.a, s.b, s.d
    return (marginal_entropy(s) + _xlog2_ratio(a, a + b) + _xlog2_ratio(b, a + b)
            + _xlog2_ratio(d, d + b) + _xlog2_ratio(b, d + b))


def reduced_density_matrix(params: ModelParams, r: int = 1,
                           quad_cfg: QuadratureConfig = DEFAULT_QUAD) -> XState:
    """Two-site reduced state of spins i and i+r in the thermal/ground state."""
    corr = correlators(params, r, quad_cfg)
    sz, zz, xx, yy = corr["sz"], corr["zz"], corr["xx"], corr["yy"]
    s = XState(a=0.25 + sz / 2 + zz / 4, b=(1 - zz) / 4, d=0.25 - sz / 2 + zz / 4,
               z=(xx + yy) / 4, f=(xx - yy) / 4)
    check_state(s, STATE_TOL)
    return s


# --- brute-force classical correlations over projective measurements on B ---

_I2 = np.eye(2, dtype=complex)
_PAULI = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)


def _measured_information(rho: np.ndarray, theta, phi) -> np.ndarray:
    """J(rho | {Pi_+, Pi_-}) for Bloch directions (theta, phi) on qubit B.

    Post-measurement states rho_k = (I x Pi_k) rho (I x Pi_k) / p_k are
    built explicitly and their entropies taken from a dense eigensolver.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    n = np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)
    n_sigma = np.einsum("...i,ijk->...jk", n, _PAULI)
    cond = np.zeros(theta.shape)
    for sign in (1.0, -1.0):
        proj = 0.5 * (_I2 + sign * n_sigma)
        op = np.einsum("ij,...kl->...ikjl", _I2, proj).reshape(proj.shape[:-2] + (4, 4))
        unnorm = op @ rho @ op
        p_k = np.real(np.trace(unnorm, axis1=-2, axis2=-1))
        safe_p = np.where(p_k > 1e-300, p_k, 1.0)
        ev = np.linalg.eigvalsh(unnorm / safe_p[..., None, None])
        ev = np.clip(ev, 0.0, None)
        logs = np.where(ev > 1e-300, np.log2(np.where(ev > 1e-300, ev, 1.0)), 0.0)
        cond += np.where(p_k > 1e-300, p_k * -(ev * logs).sum(axis=-1), 0.0)
    return _entropy_a(rho) - cond


def _entropy_a(rho: np.ndarray) -> float:
    rho_a = np.array([[rho[0, 0] + rho[1, 1], rho[0, 2] + rho[1, 3]],
                      [rho[2, 0] + rho[3, 1], rho[2, 2] + rho[3, 3]]])
    return shannon(np.clip(np.linalg.eigvalsh(rho_a), 0.0, None))


def discord_oracle(s: XState, coarse_grid: int = 64, refine_iters: int = 80) -> float:
    """Discord from direct maximisation of J over von Neumann measurements on B.

    Coarse (theta, phi) grid search, then a pattern search that halves its
    step whenever no neighbour improves.
    """
    if coarse_grid < 32:
        raise ValueError("coarse_grid must be >= 32")
    rho = s.matrix().astype(complex)
    thetas = np.linspace(0.0, math.pi, coarse_grid)
    phis = np.linspace(0.0, 2 * math.pi, coarse_grid, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    values = _measured_information(rho, tt, pp)
    k = np.unravel_index(np.argmax(values), values.shape)
    theta, phi, best = tt[k], pp[k], values[k]

    step = np.array([thetas[1] - thetas[0], phis[1] - phis[0]])
    moves = np.array([[1, 0], [-1, 0], [0, 1], [0, -1]], dtype=float)
    for _ in range(refine_iters):
        cand = np.array([theta, phi]) + moves * step
        vals = _measured_information(rho, cand[:, 0], cand[:, 1])
        j = int(np.argmax(vals))
        if vals[j] > best:
            best, theta, phi = vals[j], cand[j, 0], cand[j, 1]
        else:
            step = step / 2
    # I from dense eigensolvers (S_A = S_B for these states), independent of the closed forms
    info = 2 * _entropy_a(rho) - shannon(np.clip(np.linalg.eigvalsh(rho), 0.0, None))
    return max(info - float(best), 0.0)
