import numpy as np
import pytest

from conftest import tiny_codes
from pairlp.distance import (
    distance_report,
    exact_distances,
    facet_sweep,
    format_report_csv,
    fractional_distance_lb,
    fractional_pair_distance_lb,
)
from pairlp.linear_code import BinaryCode, enumerate_codewords, gallager_ensemble
from pairlp.pair_metric import W_fp, pair_weight
from pairlp.polytope import build, enumerate_vertices

# exact (d_p, d_fp) for the tiny codes, by enumeration of codewords and vertices
EXACT = {
    "rep3": (3, 3.0),
    "single": (2, 2.0),
    "rep5": (5, 5.0),
    "tree": (3, 3.0),
    "cycle6": (4, 4.0),
    "hamming7": (4, 8 / 3),
    "g8": (4, 11 / 3),
}


def test_lower_bound_examples(rep3):
    assert fractional_pair_distance_lb(build(rep3)).d_fp_lower == pytest.approx(3.0)
    assert fractional_distance_lb(build(rep3)) == pytest.approx(3.0)
    single = build(BinaryCode(2, ((0, 1),)))
    assert fractional_pair_distance_lb(single).d_fp_lower == pytest.approx(2.0)
    assert fractional_distance_lb(single) == pytest.approx(2.0)


def test_rep3_facet_minimizer(rep3):
    for r in facet_sweep(build(rep3)):
        assert r.source[0] == "upper"
        assert r.minimizer[:3] == pytest.approx([1, 1, 1])


@pytest.mark.parametrize("name", list(EXACT))
def test_exact_distances(name):
    code = tiny_codes()[name]
    d_p, d_fp = exact_distances(code)
    assert d_p == EXACT[name][0]
    assert d_fp == pytest.approx(EXACT[name][1], abs=1e-9)


@pytest.mark.parametrize("name", list(EXACT))
def test_exact_values_by_direct_enumeration(name):
    code = tiny_codes()[name]
    words = enumerate_codewords(code)
    assert min(pair_weight(w) for w in words if w.any()) == EXACT[name][0]
    verts = enumerate_vertices(build(code))
    assert min(W_fp(v) for v in verts if v.any()) == pytest.approx(EXACT[name][1], abs=1e-9)


@pytest.mark.parametrize("name", list(EXACT))
def test_sandwich_and_hamming_bound(name):
    code = tiny_codes()[name]
    poly = build(code)
    rep = distance_report(poly, exact=True)
    assert rep.d_f_lower <= rep.d_fp_lower + 1e-9
    assert rep.d_fp_lower <= rep.d_fp_exact + 1e-9
    assert rep.d_fp_exact <= rep.d_p_exact + 1e-9
    verts = enumerate_vertices(poly)
    d_f_exact = min(v.sum() for v in verts if v.any())
    assert rep.d_f_lower <= d_f_exact + 1e-9
    for r in rep.per_facet:
        assert r.d_f_min <= r.d_fp_min + 1e-9


@pytest.mark.parametrize("seed", range(3))
def test_sweep_on_ensemble_codes(seed):
    code = gallager_ensemble(20, 3, 4, seed=seed)
    rep = fractional_pair_distance_lb(build(code))
    assert 0 < rep.d_f_lower <= rep.d_fp_lower
    # the lower bounds can never beat the weight of an actual codeword
    words = enumerate_codewords(code)
    assert rep.d_fp_lower <= min(pair_weight(w) for w in words if w.any()) + 1e-9
    assert rep.d_f_lower <= min(int(w.sum()) for w in words if w.any()) + 1e-9


def test_unreachable_facet_warns():
    # the weight-1 check pins x_0 = 0, so x_0 <= 1 cannot be tight
    code = BinaryCode(3, ((0,), (1, 2)))
    with pytest.warns(UserWarning, match="cannot be tight"):
        rep = fractional_pair_distance_lb(build(code))
    assert rep.d_f_lower == pytest.approx(2.0)
    assert rep.d_fp_lower == pytest.approx(3.0)


def test_report_csv(rep3):
    rep = distance_report(build(rep3), exact=True)
    text = format_report_csv(rep)
    lines = text.splitlines()
    assert lines[0] == "# pairlp-distance/1"
    assert lines[1] == "facet_id,source,d_f_min,d_fp_min"
    assert lines[2] == "0,upper:0,3,3"
    assert lines[-1] == "# summary d_f_lower=3 d_fp_lower=3 d_fp_exact=3 d_p_exact=3"
    assert format_report_csv(distance_report(build(rep3), exact=True)) == text


def test_exact_requires_nonzero_codeword():
    code = BinaryCode.from_matrix(np.eye(3, dtype=int))
    with pytest.raises(ValueError):
        exact_distances(code)
