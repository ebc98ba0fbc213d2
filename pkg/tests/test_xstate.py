import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import BELL, MIXED, PRODUCT, random_x_states, x_states
from xy_discord.errors import PositivityViolation
from xy_discord.xstate import (CCoeffs, XState, c_representation, classical_correlations,
                               classical_correlations_z_measurement, discord, discord_branches, discord_oracle,
                               eigenvalues, entropies, mutual_information, reduced_density_matrix,
                               x_representation)
from xy_discord.xy_model import ModelParams

DATA = Path(__file__).parent / "data"


def dense_entropy(m):
    ev = np.clip(np.linalg.eigvalsh(m), 0, None)
    ev = ev[ev > 1e-300]
    return float(-np.sum(ev * np.log2(ev)))


def test_representation_trivial():
    assert c_representation(PRODUCT) == CCoeffs(0.0, 0.0, 1.0, -1.0)
    assert x_representation(CCoeffs(0.0, 0.0, 1.0, -1.0)) == PRODUCT


def test_x_representation_rejects_unphysical():
    with pytest.raises(PositivityViolation):
        x_representation(CCoeffs(1.0, 1.0, 1.0, 0.0))


@given(x_states())
def test_representation_round_trip(s):
    back = x_representation(c_representation(s))
    for name in "abdzf":
        assert getattr(back, name) == pytest.approx(getattr(s, name), abs=1e-14)


def test_eigenvalues_trivial():
    np.testing.assert_allclose(eigenvalues(PRODUCT), [1, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(eigenvalues(MIXED), [0.25] * 4, atol=1e-15)


@given(x_states())
def test_eigenvalues_match_dense_solver(s):
    dense = np.sort(np.linalg.eigvalsh(s.matrix()))[::-1]
    np.testing.assert_allclose(eigenvalues(s), np.clip(dense, 0, 1), atol=1e-10)


def test_eigenvalues_of_chain_state_match_dense_solver():
    s = reduced_density_matrix(ModelParams(0.7, 0.7), 1)
    dense = np.sort(np.linalg.eigvalsh(s.matrix()))[::-1]
    np.testing.assert_allclose(eigenvalues(s), dense, atol=1e-10)


def test_entropies_trivial():
    assert entropies(PRODUCT) == pytest.approx((0.0, 0.0), abs=1e-15)
    assert entropies(MIXED) == pytest.approx((1.0, 2.0), abs=1e-15)
    assert entropies(BELL) == pytest.approx((1.0, 0.0), abs=1e-15)


@given(x_states())
def test_entropies_match_dense(s):
    m = s.matrix()
    rho_a = np.array([[m[0, 0] + m[1, 1], 0], [0, m[2, 2] + m[3, 3]]])
    s_a, s_ab = entropies(s)
    assert s_a == pytest.approx(dense_entropy(rho_a), abs=1e-9)
    assert s_ab == pytest.approx(dense_entropy(m), abs=1e-9)
    assert 0 <= s_a <= 1 + 1e-12 and 0 <= s_ab <= 2 + 1e-12


def test_mutual_information_trivial():
    assert mutual_information(PRODUCT) == pytest.approx(0.0, abs=1e-15)
    assert mutual_information(BELL) == pytest.approx(2.0, abs=1e-15)


def test_mutual_information_of_chain_state():
    # cross-check of the closed forms against dense entropies of the assembled matrix
    s = reduced_density_matrix(ModelParams(0.7, 0.7), 1)
    m = s.matrix()
    rho_a = np.diag([m[0, 0] + m[1, 1], m[2, 2] + m[3, 3]])
    assert mutual_information(s) == pytest.approx(2 * dense_entropy(rho_a) - dense_entropy(m), abs=1e-12)
    assert mutual_information(s) == pytest.approx(0.185465863373, abs=1e-11)


def test_discord_trivial():
    assert discord(PRODUCT).value == pytest.approx(0.0, abs=1e-15)
    q = discord(BELL)
    assert q.value == pytest.approx(1.0, abs=1e-12)
    assert q.branch == "Q2"


def test_classical_correlations_trivial():
    assert classical_correlations(PRODUCT) == pytest.approx(0.0, abs=1e-15)
    assert classical_correlations(BELL) == pytest.approx(1.0, abs=1e-12)


def test_tie_reports_q2():
    # diagonal product-like state: both branches give zero
    assert discord(MIXED).branch == "Q2"


@settings(max_examples=200)
@given(x_states())
def test_decomposition_nonnegative(s):
    info, q, c = mutual_information(s), discord(s).value, classical_correlations(s)
    assert -1e-12 <= q <= info + 1e-12
    assert -1e-12 <= c <= info + 1e-12
    assert info == pytest.approx(c + q, abs=1e-10)


@given(x_states())
def test_q1_branch_closed_form_classical_correlations(s):
    q = discord(s)
    if q.branch == "Q1":
        assert classical_correlations(s) == pytest.approx(classical_correlations_z_measurement(s), abs=1e-10)


@given(x_states())
def test_swapping_c1_c2_leaves_correlations_invariant(s):
    c = c_representation(s)
    t = x_representation(CCoeffs(c.c2, c.c1, c.c3, c.c4))
    np.testing.assert_allclose(eigenvalues(t), eigenvalues(s), atol=1e-14)
    assert entropies(t) == pytest.approx(entropies(s), abs=1e-13)
    assert mutual_information(t) == pytest.approx(mutual_information(s), abs=1e-13)
    assert discord(t).value == pytest.approx(discord(s).value, abs=1e-13)
    assert classical_correlations(t) == pytest.approx(classical_correlations(s), abs=1e-13)


def test_oracle_trivial():
    assert discord_oracle(PRODUCT) == pytest.approx(0.0, abs=1e-8)
    assert discord_oracle(BELL) == pytest.approx(1.0, abs=1e-6)


def test_oracle_rejects_small_grid():
    with pytest.raises(ValueError):
        discord_oracle(BELL, coarse_grid=16)


@pytest.mark.parametrize("s", random_x_states(30, seed=7))
def test_oracle_agrees_with_analytic(s):
    assert discord_oracle(s) == pytest.approx(discord(s).value, abs=1e-6)


@pytest.mark.parametrize("sign", [1.0, -1.0])
def test_oracle_agrees_at_negative_f(sign):
    s = reduced_density_matrix(ModelParams(0.7, 0.7), 1)
    flipped = XState(s.a, s.b, s.d, s.z, sign * s.f)
    assert discord_oracle(flipped) == pytest.approx(discord(flipped).value, abs=1e-6)
    assert discord(flipped).value == pytest.approx(discord(s).value, abs=1e-15)


def test_reduced_density_matrix_trivial():
    s = reduced_density_matrix(ModelParams(0.0, 0.7), 1)
    for name, expected in zip("abdzf", (0.0, 0.0, 1.0, 0.0, 0.0)):
        assert getattr(s, name) == pytest.approx(expected, abs=1e-12)


def test_reduced_density_matrix_ising_critical_golden():
    s = reduced_density_matrix(ModelParams(1.0, 1.0), 1)
    assert s.z == pytest.approx(1 / (3 * math.pi), abs=1e-10)
    assert s.f == pytest.approx(2 / (3 * math.pi), abs=1e-10)
    golden = np.array(json.loads((DATA / "state_lambda1_gamma1_r1.json").read_text()))
    np.testing.assert_allclose(np.array(json.loads(s.to_json())), golden, atol=1e-10)


def test_json_round_trip():
    s = reduced_density_matrix(ModelParams(0.7, 0.7), 1)
    m = json.loads(s.to_json())
    assert len(m) == 4 and all(len(row) == 4 for row in m)
    assert m[0][3] == s.f and m[1][2] == s.z and m[3][3] == s.d
    assert XState.from_json(s.to_json()) == s


def test_positive_gamma_has_larger_x_correlations():
    c = c_representation(reduced_density_matrix(ModelParams(0.7, 0.7), 1))
    assert abs(c.c1) > abs(c.c2)


@pytest.mark.parametrize("lam", [0.0, 0.3, 0.7, 1.0, 1.4])
@pytest.mark.parametrize("gamma", [-1.0, -0.5, 0.0, 0.5, 1.0])
@pytest.mark.parametrize("kt", [0.0, 0.1, 1.0])
@pytest.mark.parametrize("r", [1, 3])
def test_chain_states_are_valid(lam, gamma, kt, r):
    s = reduced_density_matrix(ModelParams.from_kt(lam, gamma, kt), r)
    assert s.a + 2 * s.b + s.d == pytest.approx(1.0, abs=1e-12)
    assert min(s.a, s.b, s.d) >= -1e-12
    assert abs(s.z) <= s.b + 1e-12 and s.f**2 <= s.a * s.d + 1e-12
    assert eigenvalues(s).min() >= 0


def test_branches_are_both_upper_bounds():
    for s in random_x_states(50, seed=3):
        q1, q2 = discord_branches(s)
        assert discord(s).value == pytest.approx(max(min(q1, q2), 0.0), abs=1e-15)
