"""Satake data, iweights, shifts, the cone order, and word bookkeeping."""

import random

import pytest

from iquantum.satake import (
    LamVec,
    apply_word,
    format_dpword,
    leq_lambda,
    make_datum,
    make_iweight,
    orbit_reps,
    parse_dpword,
    shift,
    to_word,
    validate,
    word_weight,
)


def split_a1():
    return make_datum(["1"], [[2]], [1], {"1": "1"}, {"1": -1})


def diag_a1a1():
    return make_datum(
        ["1", "2"], [[2, 0], [0, 2]], [1, 1], {"1": "2", "2": "1"}, {"1": 0, "2": 0}
    )


def qs_a2():
    return make_datum(
        ["1", "2"], [[2, -1], [-1, 2]], [1, 1], {"1": "2", "2": "1"}, {"1": 1, "2": 0}
    )


def qs_a3():
    return make_datum(
        ["1", "2", "3"],
        [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
        [1, 1, 1],
        {"1": "3", "2": "2", "3": "1"},
        {"1": 0, "2": -1, "3": 0},
    )


def split_a2():
    return make_datum(
        ["1", "2"], [[2, -1], [-1, 2]], [1, 1], {"1": "1", "2": "2"}, {"1": -1, "2": -1}
    )


ALL_DATA = [split_a1, diag_a1a1, qs_a2, qs_a3, split_a2]


@pytest.mark.parametrize("make", ALL_DATA)
def test_standard_data_validate(make):
    assert validate(make()) == []


def test_validate_diagnostics():
    bad = make_datum(
        ["1", "2"], [[2, -1], [-1, 2]], [1, 1], {"1": "2", "2": "1"}, {"1": 0, "2": 0}
    )
    msgs = validate(bad)
    assert any("varsigma sum rule" in m for m in msgs)
    bad2 = make_datum(["1"], [[2]], [1], {"1": "1"}, {"1": 0})
    assert any("must be -1" in m for m in validate(bad2))
    bad3 = make_datum(
        ["1", "2"], [[2, 0], [0, 2]], [1, 1], {"1": "2", "2": "1"}, {"1": 1, "2": -1}
    )
    msgs3 = validate(bad3)
    assert any("must be 0 when" in m for m in msgs3)
    # negative varsigma at a non-fixed node
    bad4 = make_datum(
        ["1", "2"], [[2, -1], [-1, 2]], [1, 1], {"1": "2", "2": "1"}, {"1": -2, "2": 3}
    )
    assert any("negative at non-fixed" in m for m in validate(bad4))


def test_validate_parity_warning_only():
    # two tau-fixed nodes with a_{12} = -1, a_{21} = -2: mod-2 mismatch
    datum = make_datum(
        ["1", "2"],
        [[2, -1], [-2, 2]],
        [2, 1],
        {"1": "1", "2": "2"},
        {"1": -1, "2": -1},
    )
    msgs = validate(datum)
    assert msgs and all(m.startswith("warning:") for m in msgs)


def test_iweight_construction():
    datum = qs_a2()
    lw = make_iweight(datum, {"1": 3})
    assert lw.lam_of("1") == 3 and lw.lam_of("2") == -3
    with pytest.raises(ValueError):
        make_iweight(datum, {"1": 3, "2": 3})
    with pytest.raises(ValueError):
        make_iweight(datum, {"1": 1}, {"1": 0})
    a3 = qs_a3()
    with pytest.raises(ValueError):
        make_iweight(a3, {"1": 1})  # parity for node 2 missing
    lw3 = make_iweight(a3, {"1": 2}, {"2": 1})
    assert lw3.lam_of("3") == -2 and lw3.par_of("2") == 1
    with pytest.raises(ValueError):
        make_iweight(a3, {"2": 1}, {"2": 0})  # nonzero lam at fixed node


def test_shift_examples():
    datum = qs_a2()
    lw = make_iweight(datum, {})
    up = shift(datum, lw, "1", 1)
    assert up.lam_of("1") == 3 and up.lam_of("2") == -3
    assert shift(datum, up, "1", -1) == lw
    a1 = split_a1()
    lw1 = make_iweight(a1, {}, {"1": 0})
    assert shift(datum=a1, lw=lw1, j="1", sign=-1).par_of("1") == 0  # a_11 = 2 even


def test_shift_tau_pair_cancels():
    datum = qs_a3()
    lw = make_iweight(datum, {"1": 1}, {"2": 0})
    out = shift(datum, shift(datum, lw, "1", 1), "3", 1)
    for i in datum.nodes:
        assert out.lam_of(i) == lw.lam_of(i)


def test_dontmentionit_identity():
    rng = random.Random(7)
    for make in ALL_DATA:
        datum = make()
        for _ in range(20):
            free = {i: rng.randint(-4, 4) for i in datum.nodes if datum.tau[i] > i}
            par = {i: rng.randint(0, 1) for i in datum.nodes if datum.tau[i] == i}
            lw = make_iweight(datum, free, par)
            for i in datum.nodes:
                ti = datum.tau[i]
                lhs = datum.varsigma[ti] - lw.lam_of(ti)
                rhs = lw.lam_of(i) - datum.varsigma[i] - datum.a[(i, ti)]
                assert lhs == rhs


def test_leq_lambda_examples():
    a1 = split_a1()
    zero = LamVec.from_dict({})
    assert leq_lambda(a1, zero, zero)
    assert leq_lambda(a1, zero, LamVec.from_dict({"1": 2}))
    assert not leq_lambda(a1, zero, LamVec.from_dict({"1": 1}))
    a2 = qs_a2()
    assert leq_lambda(a2, zero, LamVec.from_dict({"1": 1, "2": 1}))
    assert not leq_lambda(a2, zero, LamVec.from_dict({"1": 1}))
    assert not leq_lambda(a2, LamVec.from_dict({"1": 1}), zero)


def test_leq_lambda_partial_order_random():
    rng = random.Random(41)
    datum = qs_a3()
    vecs = [
        LamVec.from_dict({i: rng.randint(0, 3) for i in datum.nodes})
        for _ in range(40)
    ]
    for a in vecs:
        assert leq_lambda(datum, a, a)
    for a in vecs:
        for b in vecs:
            if leq_lambda(datum, a, b) and leq_lambda(datum, b, a):
                assert a == b
    for a in vecs:
        for b in vecs:
            for c in vecs:
                if leq_lambda(datum, a, b) and leq_lambda(datum, b, c):
                    assert leq_lambda(datum, a, c)


def test_words():
    datum = qs_a2()
    w = parse_dpword("1^(2) 2", datum)
    assert w == (("1", 2), ("2", 1))
    assert word_weight(w).as_dict() == {"1": 2, "2": 1}
    assert to_word(w) == ("1", "1", "2")
    assert format_dpword(w) == "1^(2) 2"
    assert parse_dpword("", datum) == ()
    with pytest.raises(ValueError):
        parse_dpword("7", datum)
    with pytest.raises(ValueError):
        parse_dpword("1^(0)", datum)


def test_apply_word_roundtrip():
    datum = qs_a2()
    lw = make_iweight(datum, {"1": 2})
    w = parse_dpword("1 2^(2) 1", datum)
    out = apply_word(datum, lw, w)
    back = out
    for i, n in reversed(w):
        for _ in range(n):
            back = shift(datum, back, i, 1)
    assert back == lw
    # two words of equal weight shift lambda identically
    w2 = parse_dpword("2 1^(2) 2", datum)
    assert word_weight(w2) == word_weight(w)
    assert apply_word(datum, lw, w2) == out


def test_orbit_reps():
    two, fixed = orbit_reps(qs_a3())
    assert two == ["1"] and fixed == ["2"]
    two2, fixed2 = orbit_reps(split_a2())
    assert two2 == [] and fixed2 == ["1", "2"]
