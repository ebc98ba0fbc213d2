"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines appear
regardless of output capturing.
"""

import contextlib
import math
import time

import numpy as np

from conftest import random_x_states
from xy_discord.analysis import (discord_decay_profile, initial_coefficients,
                                 psc_derivative, qcp_estimate, sudden_change_point, trajectory)
from xy_discord.channels import Channel, evolve_closed_form, evolve_kraus
from xy_discord.xstate import (c_representation, discord, discord_oracle, mutual_information,
                               reduced_density_matrix, x_representation)
from xy_discord.xy_model import ModelParams, g_coefficient, transverse_magnetization

GS = math.inf


@contextlib.contextmanager
def criterion(capsys, number, title, budget_s=None):
    start = time.perf_counter()
    status, detail = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        detail = f"{elapsed:.2f}s"
        if budget_s is not None and elapsed > budget_s:
            detail += f" exceeds budget {budget_s}s"
            raise AssertionError(f"criterion {number} took {elapsed:.1f}s (budget {budget_s}s)")
        status = "PASS"
    except AssertionError as exc:
        detail = detail or str(exc).splitlines()[0]
        raise
    finally:
        with capsys.disabled():
            print(f"\n{status} criterion {number}: {title} [{detail}]")


def test_c01_bpf_psc_regression(capsys):
    with criterion(capsys, 1, "BPF p_sc = 0.114 +- 0.001", budget_s=1):
        p_sc = sudden_change_point(ModelParams(0.7, 0.7, GS), 1, Channel.BPF).p_sc
        assert abs(p_sc - 0.114) <= 1e-3, p_sc


def test_c02_pf_psc_regression(capsys):
    with criterion(capsys, 2, "PF p_sc = 0.173 +- 0.001", budget_s=1):
        p_sc = sudden_change_point(ModelParams(0.7, 0.7, GS), 1, Channel.PF).p_sc
        assert abs(p_sc - 0.173) <= 1e-3, p_sc


def test_c03_oracle_equivalence(capsys):
    with criterion(capsys, 3, "analytic discord matches measurement optimisation to 1e-6", budget_s=120):
        states = random_x_states(200, seed=2024)
        for lam in np.round(np.arange(0.1, 1.51, 0.1), 10):
            for gamma in np.round(np.arange(-1.0, 1.01, 0.1), 10):
                states.append(reduced_density_matrix(ModelParams(float(lam), float(gamma)), 1))
        assert len(states) >= 200 + 15 * 21
        worst = max(abs(discord(s).value - discord_oracle(s)) for s in states)
        assert worst < 1e-6, worst


def test_c04_kraus_closed_form(capsys):
    with criterion(capsys, 4, "Kraus and closed-form evolution agree to 1e-12", budget_s=10):
        worst = 0.0
        for s in random_x_states(40, seed=7):
            c = c_representation(s)
            for ch in Channel:
                for p in np.round(np.arange(0.1, 0.91, 0.1), 10):
                    k = c_representation(evolve_kraus(s, ch, float(p)))
                    cf = evolve_closed_form(c, ch, float(p))
                    worst = max(worst, *(abs(u - v) for u, v in zip(
                        (k.c1, k.c2, k.c3, k.c4), (cf.c1, cf.c2, cf.c3, cf.c4))))
        assert worst < 1e-12, worst


def test_c05_magnetization(capsys):
    with criterion(capsys, 5, "analytic magnetization limits and <sz> = -G_0"):
        assert abs(transverse_magnetization(ModelParams(0.0, 0.5)) + 1.0) < 1e-10
        assert abs(transverse_magnetization(ModelParams(1.0, 1.0)) + 2 / math.pi) < 1e-9
        worst = 0.0
        for lam in np.linspace(0.15, 1.5, 10):
            for gamma in np.linspace(-1.0, 1.0, 10):
                params = ModelParams(float(lam), float(gamma))
                worst = max(worst, abs(transverse_magnetization(params) + g_coefficient(params, 0)))
        assert worst < 1e-9, worst


def test_c06_divergence(capsys):
    with criterion(capsys, 6, "dp_sc/dlambda grows by > 1.5x per step toward lambda = 1", budget_s=30):
        for ch in (Channel.BPF, Channel.PF):
            d = [psc_derivative(ModelParams(lam, 0.7), 1, ch, "lambda") for lam in (0.9, 0.99, 0.999)]
            assert d[0] > 0 and d[1] > 1.5 * d[0] and d[2] > 1.5 * d[1], (ch, d)


def test_c07_anisotropy(capsys):
    with criterion(capsys, 7, "PF evenness, PF p_sc -> 0 as gamma -> 0, BF/BPF duality"):
        for gamma in (0.2, 0.5, 0.8, 1.0):
            plus = sudden_change_point(ModelParams(0.7, gamma), 1, Channel.PF).p_sc
            minus = sudden_change_point(ModelParams(0.7, -gamma), 1, Channel.PF).p_sc
            assert abs(plus - minus) < 1e-10
        small = [sudden_change_point(ModelParams(0.7, g), 1, Channel.PF).p_sc for g in (0.1, 0.05, 0.01)]
        assert small[0] > small[1] > small[2] > 0, small
        for gamma in (0.2, 0.5, 0.8):
            bpf = sudden_change_point(ModelParams(0.7, gamma), 1, Channel.BPF).p_sc
            bf = sudden_change_point(ModelParams(0.7, -gamma), 1, Channel.BF).p_sc
            assert abs(bf - bpf) < 1e-10


def test_c08_pf_constancy(capsys):
    with criterion(capsys, 8, "PF C(p) frozen at I(p=1) after p_sc; Q > C before"):
        params = ModelParams(0.7, 0.7)
        traj = trajectory(params, 1, Channel.PF)
        p_sc = traj.sudden_change.p_sc
        c0 = initial_coefficients(params, 1)
        i_final = mutual_information(x_representation(evolve_closed_form(c0, Channel.PF, 1.0)))
        after = [pt.C for pt in traj.points if pt.p > p_sc]
        assert after and max(abs(c - i_final) for c in after) < 1e-10
        assert any(pt.Q > pt.C for pt in traj.points if 0 < pt.p < p_sc)


def test_c09_distance_slowdown(capsys):
    with criterion(capsys, 9, "Q(r=4)/Q(r=1) larger at lambda = 1.1 than at 0.7", budget_s=60):
        for ch in (Channel.BPF, Channel.PF):
            ratios = []
            for lam in (0.7, 1.1):
                prof = dict(discord_decay_profile(ModelParams(lam, 0.7), ch, 0.05, 4))
                ratios.append(prof[4] / prof[1])
            assert ratios[1] > ratios[0], (ch, ratios)


def test_c10_finite_temperature_qcp(capsys):
    with criterion(capsys, 10, "kT = 0.1: BPF lambda* < 1 (r = 1..3), PF lambda* > 1 (r = 2, 3)",
                   budget_s=300):
        beta = 1 / 0.1
        for r in (1, 2, 3):
            assert qcp_estimate(Channel.BPF, 1.0, beta, r).lambda_star < 1
        for r in (2, 3):
            assert qcp_estimate(Channel.PF, 1.0, beta, r).lambda_star > 1
