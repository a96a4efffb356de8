import itertools
from fractions import Fraction as Fr

import numpy as np
import pytest
import sympy

from conftest import tiny_codes
from pairlp import decoder, lp_core
from pairlp.channel import ChannelParams, cost_table, indicator, log_likelihood, transmit
from pairlp.decoder import (
    build_decoding_lp,
    cost_identity_check,
    in_failure_set,
    lp_decode,
    ml_decode,
    relative_received,
    relative_solution,
    stack_point,
)
from pairlp.linear_code import BinaryCode, enumerate_codewords, gallager_ensemble
from pairlp.pair_metric import pairs_from_index, pi
from pairlp.polytope import build, contains, is_vertex


def random_feasible_point(poly, rng):
    """A vertex of the decoding LP under random costs, mixed with another one."""
    pts = []
    for _ in range(2):
        lam = rng.random((poly.n, 4)) * 3
        sol = lp_core.solve(build_decoding_lp(poly, lam))
        pts.append(sol.point)
    t = rng.random()
    z = t * pts[0] + (1 - t) * pts[1]
    return z[:poly.n], z[poly.n:].reshape(poly.n, 4)


def test_lp_layout_counts(hamming7):
    poly = build(hamming7)
    n = hamming7.n
    lp = build_decoding_lp(poly, np.ones((n, 4)))
    assert lp.num_vars == 5 * n
    assert int(lp.is_eq.sum()) == 3 * n
    assert int((~lp.is_eq).sum()) == poly.num_constraints
    assert (lp.lower == 0).all() and (lp.upper == 1).all()
    with pytest.raises(ValueError):
        build_decoding_lp(poly, np.ones((n - 1, 4)))


@pytest.mark.parametrize("name", list(tiny_codes()))
def test_codeword_points_are_feasible_with_loglik_cost(name):
    code = tiny_codes()[name]
    poly = build(code)
    params = ChannelParams(0.2)
    rng = np.random.default_rng(1)
    y = pairs_from_index(rng.integers(0, 4, code.n))
    lp = build_decoding_lp(poly, cost_table(y, params))
    for w in enumerate_codewords(code):
        z = stack_point(w, indicator(w))
        assert lp_core.is_feasible(lp, z)
        assert float(lp.objective @ z) == pytest.approx(-log_likelihood(y, w, params), abs=1e-12)


def test_rep3_clean_and_single_errors(rep3):
    poly = build(rep3)
    params = ChannelParams(0.3)
    zero = np.zeros(3, dtype=np.uint8)
    out = lp_decode(poly, pi(zero), params)
    assert out.kind == decoder.INTEGRAL and out.codeword.tolist() == [0, 0, 0]
    assert out.ml_certificate
    for i, wrong in itertools.product(range(3), (1, 2, 3)):
        y = pi(zero)
        y[i] = pairs_from_index([wrong])[0]
        out = lp_decode(poly, y, params)
        assert out.kind == decoder.INTEGRAL and out.codeword.tolist() == [0, 0, 0]


def test_rep3_two_pair_errors_give_midpoint(rep3):
    # two wrong pairs: the half-half point beats both codewords
    y = np.array([[1, 0], [0, 0], [0, 1]])
    params = ChannelParams(0.3)
    out = lp_decode(build(rep3), y, params)
    assert out.kind == decoder.FRACTIONAL
    assert out.x == pytest.approx([0.5, 0.5, 0.5])
    c, w = params.correct_cost, params.wrong_cost
    assert out.objective == pytest.approx(1.5 * c + 1.5 * w)
    assert out.objective < ml_decode(rep3, y, params).objective
    # the segment Q(H) has only the two codewords as vertices
    assert not is_vertex(build(rep3), out.x)


def test_ml_hand_example(rep3):
    y = np.array([[1, 0], [0, 0], [0, 1]])
    res = ml_decode(rep3, y, ChannelParams(0.3))
    assert res.codeword.tolist() == [0, 0, 0]
    assert res.objective == pytest.approx(-np.log(0.1 * 0.7 * 0.1))
    assert res.num_optimal == 1


@pytest.mark.parametrize("name", list(tiny_codes()))
def test_ml_noiseless(name):
    code = tiny_codes()[name]
    for w in enumerate_codewords(code):
        assert np.array_equal(ml_decode(code, pi(w), ChannelParams(0.01)).codeword, w)


def test_ml_tie_count():
    code = BinaryCode(2, ((0, 1),))
    res = ml_decode(code, np.array([[0, 0], [1, 1]]), ChannelParams(0.2))
    assert res.num_optimal == 2
    assert res.codeword.tolist() == [0, 0]


def test_cycle_code_fractional_outcome(cycle6):
    poly = build(cycle6)
    params = ChannelParams(0.3)
    rng = np.random.default_rng(0)
    for _ in range(2000):
        y = pairs_from_index(rng.integers(0, 4, 6))
        out = lp_decode(poly, y, params)
        if out.kind == decoder.FRACTIONAL:
            break
    else:
        pytest.fail("no fractional LP optimum found")
    assert not out.ml_certificate and out.codeword is None
    assert contains(poly, out.x, 1e-7)
    assert not decoder.is_integral(out.x)
    lp = build_decoding_lp(poly, cost_table(y, params))
    assert lp_core.active_rank(lp, out.solution.point, feas_tol=1e-7) == 5 * 6


def test_lifted_vertex_can_project_inside_a_face(cycle6):
    """A vertex of the decoding LP whose x-part is not a vertex of Q(H).

    In the pair block i = 4 both x_4 and x_5 are fractional but
    x_4 + x_5 = 1, so tau[4] has two zero entries and that block alone
    contributes five independent tight constraints.
    """
    t, tt = Fr(1, 3), Fr(2, 3)
    x = [t, Fr(1), tt, Fr(0), tt, t]
    tau = [[0, tt, 0, t], [0, 0, t, tt], [t, 0, tt, 0],
           [t, tt, 0, 0], [0, t, tt, 0], [tt, 0, 0, t]]
    z = np.array(x + [Fr(v) for row in tau for v in row], dtype=object)
    poly = build(cycle6)
    lp = build_decoding_lp(poly, np.zeros((6, 4)))
    A = lp.A.astype(int)
    tight = []
    for k, row in enumerate(A):
        lhs = sum(int(a) * v for a, v in zip(row, z))
        assert lhs == lp.rhs[k] if lp.is_eq[k] else lhs <= lp.rhs[k]
        if lhs == lp.rhs[k]:
            tight.append(row.tolist())
    for j, v in enumerate(z):
        assert 0 <= v <= 1
        if v in (0, 1):
            tight.append([int(i == j) for i in range(30)])
    assert sympy.Matrix(tight).rank() == 30
    xf = np.array(x, dtype=float)
    assert contains(poly, xf) and not is_vertex(poly, xf)
    # x = (1/3) * 011011 + (2/3) * (1/2, 1, 1/2, 0, 1/2, 0)
    mix = np.array([0, 1, 1, 0, 1, 1]) / 3 + 2 * np.array([0.5, 1, 0.5, 0, 0.5, 0]) / 3
    assert np.allclose(mix, xf)


@pytest.mark.parametrize("seed", range(4))
def test_integral_outcome_is_ml(seed):
    code = gallager_ensemble(12, 3, 4, seed=seed)
    poly = build(code)
    rng = np.random.default_rng(seed)
    params = ChannelParams(0.15)
    for _ in range(40):
        y = transmit(np.zeros(code.n, dtype=np.uint8), params, rng)
        out = lp_decode(poly, y, params)
        ml = ml_decode(code, y, params)
        assert ml.objective <= -log_likelihood(y, np.zeros(code.n), params) + 1e-12
        if out.kind == decoder.INTEGRAL:
            assert out.objective <= ml.objective + 1e-6
            assert -log_likelihood(y, out.codeword, params) == pytest.approx(ml.objective, abs=1e-6)


def test_tableau_and_highs_agree(hamming7):
    poly = build(hamming7)
    params = ChannelParams(0.25)
    rng = np.random.default_rng(3)
    for _ in range(10):
        y = pairs_from_index(rng.integers(0, 4, 7))
        a = lp_decode(poly, y, params)
        b = lp_decode(poly, y, params, method="tableau")
        assert a.objective == pytest.approx(b.objective, abs=1e-8)


def test_lp_decode_length_mismatch(rep3):
    with pytest.raises(ValueError):
        lp_decode(build(rep3), np.zeros((4, 2), dtype=np.uint8), ChannelParams(0.1))


def test_relative_solution_trivial_cases(hamming7):
    poly = build(hamming7)
    rng = np.random.default_rng(4)
    xf, tauf = random_feasible_point(poly, rng)
    zero = np.zeros(7, dtype=np.uint8)
    xr, taur = relative_solution(xf, tauf, zero)
    assert np.array_equal(taur, tauf) and np.allclose(xr, xf)
    for w in enumerate_codewords(hamming7):
        xr, taur = relative_solution(w, indicator(w), w)
        assert np.allclose(xr, 0) and np.array_equal(taur, indicator(zero))


@pytest.mark.parametrize("name", ["hamming7", "cycle6", "g8"])
def test_relative_solution_involution_and_feasibility(name):
    code = tiny_codes()[name]
    poly = build(code)
    rng = np.random.default_rng(5)
    words = enumerate_codewords(code)
    lam = np.ones((code.n, 4))
    lp = build_decoding_lp(poly, lam)
    for _ in range(25):
        xf, tauf = random_feasible_point(poly, rng)
        x = words[rng.integers(len(words))]
        xr, taur = relative_solution(xf, tauf, x)
        assert lp_core.is_feasible(lp, stack_point(xr, taur), 1e-8)
        xb, taub = relative_solution(xr, taur, x)
        assert np.allclose(xb, xf, atol=1e-12) and np.allclose(taub, tauf, atol=1e-12)


def test_relative_solution_rejects_infeasible(rep3):
    tau = indicator([0, 0, 0])
    with pytest.raises(ValueError):
        relative_solution(np.array([1.0, 0, 0]), tau, np.zeros(3))
    with pytest.raises(ValueError):
        relative_solution(np.zeros(3), tau * 2, np.zeros(3))


@pytest.mark.parametrize("name", ["hamming7", "cycle6", "g8"])
def test_cost_identity(name):
    code = tiny_codes()[name]
    poly = build(code)
    rng = np.random.default_rng(6)
    words = enumerate_codewords(code)
    for _ in range(25):
        params = ChannelParams(float(rng.uniform(0.01, 0.7)))
        xf, tauf = random_feasible_point(poly, rng)
        x = words[rng.integers(len(words))]
        y = pairs_from_index(rng.integers(0, 4, code.n))
        lhs, rhs = cost_identity_check(y, x, xf, tauf, params)
        assert abs(lhs - rhs) <= 1e-9
        lhs, rhs = cost_identity_check(y, x, x, indicator(x), params)
        assert lhs == 0 and rhs == 0


def test_relative_received(hamming7):
    w = enumerate_codewords(hamming7)[5]
    y = pi(w)
    assert not relative_received(y, w).any()
    assert np.array_equal(relative_received(relative_received(y, w), w), y)


def test_failure_set_detects_ties():
    code = BinaryCode(2, ((0, 1),))
    poly = build(code)
    params = ChannelParams(0.2)
    zero = np.zeros(2, dtype=np.uint8)
    assert not in_failure_set(poly, pi(zero), zero, params)
    assert in_failure_set(poly, np.array([[0, 0], [1, 1]]), zero, params)
    assert in_failure_set(poly, pi([1, 1]), zero, params)
