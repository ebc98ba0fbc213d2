"""Markovian bit-flip, bit-phase-flip and phase-flip channels on both qubits.

Each qubit couples to its own reservoir with the same parametrised time p.
Two routes are provided: explicit Kraus conjugation of the 4x4 matrix, and
closed-form rescaling of the c-coefficients. They must agree.
"""

from __future__ import annotations

import enum
import itertools
import math

import numpy as np

from .errors import FormViolation
from .xstate import CCoeffs, XState

FORM_TOL = 1e-12


class Channel(str, enum.Enum):
    BF = "bf"
    BPF = "bpf"
    PF = "pf"

    @classmethod
    def parse(cls, name: str) -> "Channel":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown channel {name!r}; expected one of bf, bpf, pf") from None


_PAULI = {
    Channel.BF: np.array([[0, 1], [1, 0]], dtype=complex),
    Channel.BPF: np.array([[0, -1j], [1j, 0]], dtype=complex),
    Channel.PF: np.array([[1, 0], [0, -1]], dtype=complex),
}


def check_p(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"parametrised time p must lie in [0, 1], got {p}")
    return float(p)


def p_of_t(theta: float, t: float) -> float:
    """p = 1 - exp(-theta t)."""
    if theta <= 0:
        raise ValueError("decay rate theta must be positive")
    if t < 0:
        raise ValueError("time t must be non-negative")
    return -math.expm1(-theta * t)


def compose_p(p1: float, p2: float) -> float:
    """Single p equivalent to evolving by p1 and then by p2."""
    return p1 + p2 - p1 * p2


def single_qubit_kraus(ch: Channel, p: float) -> list[np.ndarray]:
    check_p(p)
    ch = Channel(ch)
    return [math.sqrt(1 - p / 2) * np.eye(2, dtype=complex), math.sqrt(p / 2) * _PAULI[ch]]


def kraus_operators(ch: Channel, p: float) -> list[np.ndarray]:
    """The four two-qubit operators E_mu x E_nu."""
    single = single_qubit_kraus(ch, p)
    return [np.kron(e_mu, e_nu) for e_mu, e_nu in itertools.product(single, single)]


_X_PATTERN = np.array([[1, 0, 0, 1],
                       [0, 1, 1, 0],
                       [0, 1, 1, 0],
                       [1, 0, 0, 1]], dtype=bool)


def read_xstate(rho: np.ndarray, tol: float = FORM_TOL) -> XState:
    """Read (a, b, d, z, f) back from a 4x4 matrix that must be real X form."""
    off = np.abs(rho[~_X_PATTERN]).max()
    imag = np.abs(rho.imag).max()
    re = rho.real
    asym = max(abs(re[1, 1] - re[2, 2]), abs(re[1, 2] - re[2, 1]), abs(re[0, 3] - re[3, 0]))
    if max(off, imag, asym) > tol:
        raise FormViolation(f"matrix left X form (off-pattern {off:.2e}, imag {imag:.2e}, asym {asym:.2e})")
    return XState(a=re[0, 0], b=0.5 * (re[1, 1] + re[2, 2]), d=re[3, 3],
                  z=0.5 * (re[1, 2] + re[2, 1]), f=0.5 * (re[0, 3] + re[3, 0]))


def evolve_kraus(s: XState, ch: Channel, p: float) -> XState:
    rho = s.matrix().astype(complex)
    out = sum(e @ rho @ e.conj().T for e in kraus_operators(ch, p))
    return read_xstate(out)


def evolve_closed_form(c: CCoeffs, ch: Channel, p: float) -> CCoeffs:
    check_p(p)
    ch = Channel(ch)
    q = 1.0 - p
    if ch is Channel.BPF:
        return CCoeffs(c.c1 * q * q, c.c2, c.c3 * q * q, c.c4 * q)
    if ch is Channel.BF:
        return CCoeffs(c.c1, c.c2 * q * q, c.c3 * q * q, c.c4 * q)
    return CCoeffs(c.c1 * q * q, c.c2 * q * q, c.c3, c.c4)
