"""Tests for shape enumeration, degrees, the combinatorial pairings, and the
graded-rank series, including the cross-checks against the algebraic routes."""

import itertools
import random

import pytest

from iquantum import freealg, iuea, satake, shapes
from iquantum.freealg import FElem, inv_one_minus_qinv2
from iquantum.qring import ASC_Q, PowerSeriesTrunc, RatQ, expand
from iquantum.satake import to_dpword, word_weight
from iquantum.standard import STANDARD


def make(name):
    return STANDARD[name]()


def weight(datum, lam=None, par=None):
    return satake.make_iweight(datum, lam or {}, par)


def weights_for(datum, lo=-2, hi=2):
    two, fixed = satake.orbit_reps(datum)
    out = []

    def rec_par(par_done):
        if len(par_done) == len(fixed):
            return [dict(zip(fixed, par_done))]
        return [d for p in (0, 1) for d in rec_par(par_done + [p])]

    def rec_lam(lam_done):
        if len(lam_done) == len(two):
            return [dict(zip(two, lam_done))]
        return [d for v in range(lo, hi + 1) for d in rec_lam(lam_done + [v])]

    for lam in rec_lam([]):
        for par in rec_par([]):
            out.append(satake.make_iweight(datum, lam, par))
    return out


def words_up_to(datum, n):
    return [w for k in range(n + 1) for w in itertools.product(datum.nodes, repeat=k)]


def belem(datum, word, lw):
    return iuea.b_word(datum, to_dpword(word), lw)


def monomial(word):
    return FElem({tuple(word): RatQ.one()})


# ---------------------------------------------------------------- enumeration


def test_enumerate_single_prop():
    datum = make("split_a1")
    out = shapes.enumerate_shapes(datum, ("1",), ("1",))
    assert len(out) == 1
    sh = out[0]
    assert sh.cups == () and sh.caps == () and sh.props == ((0, 0),)
    lw = weight(datum, {"1": 0}, {"1": 0})
    assert shapes.degree(datum, sh, lw) == 0


def test_enumerate_single_cup():
    datum = make("qs_a2")
    out = shapes.enumerate_shapes(datum, ("2", "1"), ())
    assert len(out) == 1
    assert out[0].cups == ((0, 1),)
    assert shapes.enumerate_shapes(datum, ("2", "1"), (), "cap_free") == out
    assert shapes.enumerate_shapes(datum, ("2", "1"), (), "cup_cap_free") == []
    # the label rule rejects a cup on (1, 1): tau(1) = 2
    assert shapes.enumerate_shapes(datum, ("1", "1"), ()) == []


def test_enumerate_counts_fixed_node():
    datum = make("split_a1")
    word = ("1", "1")
    assert len(shapes.enumerate_shapes(datum, word, word, "all")) == 3
    assert len(shapes.enumerate_shapes(datum, word, word, "cap_free")) == 2
    assert len(shapes.enumerate_shapes(datum, word, word, "cup_cap_free")) == 2


def test_enumerate_odd_or_mismatched():
    datum = make("split_a2")
    assert shapes.enumerate_shapes(datum, ("1",), ()) == []
    assert shapes.enumerate_shapes(datum, ("1",), ("2",)) == []


def test_enumerate_unknown_mode():
    datum = make("split_a1")
    with pytest.raises(ValueError):
        shapes.enumerate_shapes(datum, (), (), "reduced")


# --------------------------------------------------------------------- degree


def test_degree_single_cup():
    # cup over (tau i, i) contributes d_i (1 + vs_i - lam_i), read off the
    # right endpoint label
    datum = make("qs_a2")
    sh = shapes.enumerate_shapes(datum, ("2", "1"), ())[0]
    for lam in range(-3, 4):
        lw = weight(datum, {"1": lam})
        assert shapes.degree(datum, sh, lw) == 1 + datum.varsigma["1"] - lam


def test_degree_crossing():
    datum = make("split_a2")
    out = shapes.enumerate_shapes(datum, ("1", "2"), ("2", "1"))
    assert len(out) == 1
    lw = weight(datum, {}, {"1": 0, "2": 0})
    # crossing of strands labelled 1, 2: -d_1 a_{12} = 1
    assert shapes.degree(datum, out[0], lw) == 1


def test_degree_realizations_agree():
    rng = random.Random(20260823)
    for name in STANDARD:
        datum = make(name)
        pool = weights_for(datum, -2, 2)
        for _ in range(60):
            top = tuple(rng.choice(datum.nodes) for _ in range(rng.randrange(5)))
            bottom = tuple(rng.choice(datum.nodes) for _ in range(rng.randrange(5)))
            lw = rng.choice(pool)
            for sh in shapes.enumerate_shapes(datum, top, bottom):
                assert shapes.degree(datum, sh, lw) == shapes.degree_alt(datum, sh, lw)


# ------------------------------------------------------------------- pairings


def test_pair_b_single_letter():
    for name in STANDARD:
        datum = make(name)
        lw = weights_for(datum, 1, 1)[0]
        for i in datum.nodes:
            assert shapes.pair_b(datum, (i,), (i,), lw) == inv_one_minus_qinv2(datum.qi(i))


def test_pair_b_single_cup_value():
    datum = make("qs_a2")
    for lam in (-2, 0, 3):
        lw = weight(datum, {"1": lam})
        got = shapes.pair_b(datum, ("2", "1"), (), lw)
        want = RatQ.q_power(-(1 + datum.varsigma["1"] - lam)) * inv_one_minus_qinv2(1)
        assert got == want


def test_pair_theta_distinct_letters():
    datum = make("split_a2")
    got = shapes.pair_theta(datum, ("1", "2"), ("1", "2"))
    assert got == inv_one_minus_qinv2(1) * inv_one_minus_qinv2(1)


def test_pair_theta_matches_freealg():
    rng = random.Random(97)
    for name in STANDARD:
        datum = make(name)
        words = words_up_to(datum, 3)
        for _ in range(40):
            wi, wj = rng.choice(words), rng.choice(words)
            got = shapes.pair_theta(datum, wi, wj)
            want = freealg.pair(datum, monomial(wi), monomial(wj))
            assert got == want, (name, wi, wj)


def test_pair_b_matches_ipair():
    # the two routes to the bilinear form share no code: one walks shapes,
    # the other walks the recursive generator action
    for name in STANDARD:
        datum = make(name)
        words = words_up_to(datum, 2)
        for lw in weights_for(datum, -1, 1):
            for wi in words:
                for wj in words:
                    got = shapes.pair_b(datum, wi, wj, lw)
                    want = iuea.ipair(datum, belem(datum, wi, lw), belem(datum, wj, lw))
                    assert got == want, (name, wi, wj, lw)


def test_pair_b_symmetric():
    rng = random.Random(5150)
    for name in STANDARD:
        datum = make(name)
        words = words_up_to(datum, 3)
        pool = weights_for(datum, -2, 2)
        for _ in range(25):
            wi, wj = rng.choice(words), rng.choice(words)
            lw = rng.choice(pool)
            assert shapes.pair_b(datum, wi, wj, lw) == shapes.pair_b(datum, wj, wi, lw)


def test_pair_b_nabla_triangular():
    for name in ("split_a1", "qs_a2", "split_a2"):
        datum = make(name)
        words = words_up_to(datum, 3)
        lw = weights_for(datum, 0, 0)[0]
        for wi in words:
            for wj in words:
                if not shapes.pair_b_nabla(datum, wi, wj, lw).is_zero():
                    assert satake.leq_lambda(
                        datum, word_weight(to_dpword(wj)), word_weight(to_dpword(wi))
                    )


def test_pair_delta_nabla_weight_free():
    # without cups or caps the degree never sees the weight, so the
    # permutation-only pairing collapses to the theta pairing
    datum = make("qs_a3")
    words = words_up_to(datum, 2)
    for lw in weights_for(datum, -1, 1)[:4]:
        for wi in words:
            for wj in words:
                assert shapes.pair_delta_nabla(datum, wi, wj, lw) == shapes.pair_theta(
                    datum, wi, wj
                )


# --------------------------------------------------------------- rank series


def test_hom_rank_single_strand():
    for name in ("split_a1", "qs_a2"):
        datum = make(name)
        lw = weights_for(datum, 0, 0)[0]
        for i in datum.nodes:
            d = datum.qi(i)
            rs = shapes.hom_rank(datum, (i,), (i,), lw, order=12)
            for e in range(-12, 13):
                assert rs.coeff(e) == (1 if e >= 0 and e % (2 * d) == 0 else 0)


def test_hom_rank_empty_words():
    datum = make("split_a1")
    lw = weight(datum, {}, {"1": 0})
    rs = shapes.hom_rank(datum, (), (), lw, order=8)
    assert rs.coeff(0) == 1 and all(rs.coeff(e) == 0 for e in range(1, 9))


def test_hom_rank_incompatible():
    datum = make("split_a2")
    lw = weight(datum, {}, {"1": 0, "2": 0})
    rs = shapes.hom_rank(datum, ("1",), (), lw, order=8)
    assert rs.series.coeffs == {}


def test_hom_rank_three_shape_example():
    # (i, i) at a fixed node with vs_i - lam_i = -1: shapes contribute
    # degrees 0, -2, 0 and the series is (2 + q^-2)/(1 - q^2)^2
    datum = make("split_a1")
    lw = weight(datum, {"1": 0}, {"1": 0})
    assert datum.varsigma["1"] - 0 == -1
    rs = shapes.hom_rank(datum, ("1", "1"), ("1", "1"), lw, order=10)
    assert rs.coeff(-2) == 1
    for m in range(6):
        assert rs.coeff(2 * m) == 3 * m + 4
    assert all(rs.coeff(e) == 0 for e in range(-9, 10, 2))


def test_hom_rank_equals_bar_pair_b():
    rng = random.Random(777)
    for name in STANDARD:
        datum = make(name)
        words = words_up_to(datum, 2)
        pool = weights_for(datum, -1, 1)
        for _ in range(15):
            wi, wj = rng.choice(words), rng.choice(words)
            lw = rng.choice(pool)
            rs = shapes.hom_rank(datum, wi, wj, lw, order=14)
            want = expand(shapes.pair_b(datum, wi, wj, lw).bar(), ASC_Q, 14)
            assert rs.series == want, (name, wi, wj, lw)


def test_rank_series_rejects_negative():
    with pytest.raises(ValueError):
        shapes.RankSeries(PowerSeriesTrunc(ASC_Q, 4, {2: -1}))


def test_end_grdim_split_a1():
    rs = shapes.end_grdim(make("split_a1"), order=10)
    assert {e: rs.coeff(e) for e in range(0, 11, 2)} == {
        0: 1, 2: 1, 4: 1, 6: 2, 8: 2, 10: 3,
    }


def test_end_grdim_partition_series():
    rs = shapes.end_grdim(make("diag_a1a1"), order=10)
    assert [rs.coeff(2 * k) for k in range(6)] == [1, 1, 2, 3, 5, 7]


def test_end_grdim_order_zero():
    for name in STANDARD:
        rs = shapes.end_grdim(make(name), order=0)
        assert rs.coeff(0) == 1 and rs.series.coeffs == {0: 1}
