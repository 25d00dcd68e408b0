"""Quiver Hecke layer: relations, normal forms, idempotents, Serre complex."""

import random

import pytest

from iquantum.klr import (
    KLRBasisElem,
    KLRElem,
    crossing,
    divided_idempotent,
    dot,
    e,
    geometric_qtable,
    graded_dim,
    mul,
    serre_complex_check,
    tensor,
    zero,
)
from iquantum.qring import ASC_Q, expand
from iquantum.satake import make_datum
from iquantum.shapes import pair_theta
from iquantum.standard import diag_a1a1, qs_a2, qs_a3, split_a1, split_a2


def aux_a1a1():
    """Two fixed nodes, no edge: the shortest Serre complex (m = 1)."""
    return make_datum(["1", "2"], [[2, 0], [0, 2]], [1, 1], {"1": "1", "2": "2"}, {"1": -1, "2": -1})


def aux_double_edge():
    """Two fixed nodes joined by a double edge: m = 3."""
    return make_datum(
        ["1", "2"], [[2, -2], [-2, 2]], [1, 1], {"1": "1", "2": "2"}, {"1": -1, "2": -1}
    )


def basis(top, bottom, perm, dots, coeff=1):
    return KLRElem(tuple(top), tuple(bottom), {KLRBasisElem(tuple(top), tuple(bottom), perm, dots): coeff})


def random_perm(rng, top, bottom):
    slots = {}
    for t, c in enumerate(top):
        slots.setdefault(c, []).append(t)
    for v in slots.values():
        rng.shuffle(v)
    taken = {c: iter(v) for c, v in slots.items()}
    return tuple(next(taken[c]) for c in bottom)


def random_elem(rng, top, bottom, nterms=2):
    terms = {}
    for _ in range(nterms):
        b = KLRBasisElem(
            tuple(top),
            tuple(bottom),
            random_perm(rng, top, bottom),
            tuple(rng.randrange(3) for _ in bottom),
        )
        terms[b] = terms.get(b, 0) + rng.choice([-2, -1, 1, 2])
    return KLRElem(tuple(top), tuple(bottom), terms)


def shuffled(rng, w):
    out = list(w)
    rng.shuffle(out)
    return tuple(out)


def test_geometric_qtable_split_a2():
    qt = geometric_qtable(split_a2())
    x, y = sorted(qt.poly("1", "2").free_symbols, key=str)
    assert qt.poly("1", "2") == y - x
    assert qt.poly("2", "1") == x - y
    assert qt.poly("1", "1") == 0
    assert qt.t == {("1", "2"): -1, ("2", "1"): 1}


def test_geometric_qtable_no_edge():
    qt = geometric_qtable(diag_a1a1())
    assert qt.poly("1", "2") == 1
    assert qt.t == {("1", "2"): 1, ("2", "1"): 1}
    # the swapped-pair sign flips the constant
    qt = geometric_qtable(diag_a1a1(), sign_convention="intro")
    assert qt.poly("1", "2") == -1


def test_geometric_qtable_sign_conventions_on_a3():
    with pytest.raises(ValueError, match=r"\(1, 2\)|\(2, 1\)"):
        geometric_qtable(qs_a3(), sign_convention="body")
    qt = geometric_qtable(qs_a3(), sign_convention="intro")
    assert qt.poly("1", "3") == -1
    assert qt.poly("3", "1") == -1


def test_geometric_qtable_orientation():
    qt = geometric_qtable(split_a2(), orientation={("2", "1"): 1})
    x, y = sorted(qt.poly("1", "2").free_symbols, key=str)
    assert qt.poly("1", "2") == x - y
    with pytest.raises(ValueError):
        geometric_qtable(split_a2(), orientation={("1", "2"): 2})
    with pytest.raises(ValueError):
        geometric_qtable(split_a1(), sign_convention="nope")


def test_geometric_qtable_needs_unit_d():
    datum = make_datum(["1"], [[2]], [2], {"1": "1"}, {"1": -1})
    with pytest.raises(ValueError):
        geometric_qtable(datum)


def test_idempotents_and_errors():
    qt = geometric_qtable(qs_a2())
    w = ("1", "2")
    assert mul(qt, e(w), e(w)) == e(w)
    with pytest.raises(ValueError):
        dot(w, 3)
    with pytest.raises(ValueError):
        crossing(w, 2)
    with pytest.raises(ValueError):
        mul(qt, e(("1",)), e(("2",)))


def test_dot_slide_equal_colors():
    qt = geometric_qtable(split_a1())
    w = ("1", "1")
    psi = crossing(w, 1)
    assert mul(qt, psi, dot(w, 1)) - mul(qt, dot(w, 2), psi) == e(w)
    assert mul(qt, dot(w, 1), psi) - mul(qt, psi, dot(w, 2)) == e(w)
    # dots on the strand that is not crossed commute through
    w3 = ("1", "1", "1")
    psi3 = crossing(w3, 1)
    assert mul(qt, psi3, dot(w3, 3)) == mul(qt, dot(w3, 3), psi3)


def test_dot_slide_distinct_colors():
    qt = geometric_qtable(qs_a2())
    w = ("1", "2")
    psi = crossing(w, 1)
    assert mul(qt, psi, dot(w, 1)) == mul(qt, dot(("2", "1"), 2), psi)
    assert mul(qt, psi, dot(w, 2)) == mul(qt, dot(("2", "1"), 1), psi)


def test_quadratic():
    qt = geometric_qtable(split_a1())
    w = ("1", "1")
    assert mul(qt, crossing(w, 1), crossing(w, 1)).is_zero()

    # mixed colors: the square is the table polynomial pinned to the strands
    qt = geometric_qtable(qs_a2())
    w = ("1", "2")
    sq = mul(qt, crossing(("2", "1"), 1), crossing(w, 1))
    assert sq == basis(w, w, (0, 1), (1, 0)) - basis(w, w, (0, 1), (0, 1))

    qt = geometric_qtable(split_a2())
    sq = mul(qt, crossing(("2", "1"), 1), crossing(w, 1))
    assert sq == basis(w, w, (0, 1), (0, 1)) - basis(w, w, (0, 1), (1, 0))

    qt = geometric_qtable(diag_a1a1())
    sq = mul(qt, crossing(("2", "1"), 1), crossing(w, 1))
    assert sq == e(w)


def triple_crossing(qt, w, first):
    """psi psi psi with the first crossing at position `first` (1 or 2)."""
    second = 3 - first
    a = crossing(w, first)
    b = crossing(a.top, second)
    c = crossing(b.top, first)
    return mul(qt, c, mul(qt, b, a))


def test_braid_without_correction():
    qt = geometric_qtable(qs_a3(), sign_convention="intro")
    w = ("1", "2", "3")
    assert triple_crossing(qt, w, 1) == triple_crossing(qt, w, 2)


def test_braid_correction_signs():
    # ((x2-x1) - (x2-x3))/(x1-x3) = -1 when the table entry is y - x
    qt = geometric_qtable(split_a2())
    w = ("1", "2", "1")
    assert triple_crossing(qt, w, 1) - triple_crossing(qt, w, 2) == e(w).scale(-1)
    # and +1 when it is x - y
    qt = geometric_qtable(qs_a2())
    assert triple_crossing(qt, w, 1) - triple_crossing(qt, w, 2) == e(w)


def test_distant_crossings_commute():
    qt = geometric_qtable(qs_a3(), sign_convention="intro")
    w = ("1", "2", "3", "2")
    a = crossing(w, 1)
    b = crossing(a.top, 3)
    c = crossing(w, 3)
    d = crossing(c.top, 1)
    assert mul(qt, b, a) == mul(qt, d, c)


def test_mul_associative_random():
    rng = random.Random(20260823)
    tables = [
        geometric_qtable(qs_a2()),
        geometric_qtable(split_a2()),
        geometric_qtable(qs_a3(), sign_convention="intro"),
    ]
    for qt in tables:
        nodes = qt.datum.nodes
        for _ in range(10):
            wd = tuple(rng.choice(nodes) for _ in range(3))
            wc = shuffled(rng, wd)
            wb = shuffled(rng, wd)
            wa = shuffled(rng, wd)
            x = random_elem(rng, wa, wb)
            y = random_elem(rng, wb, wc)
            z = random_elem(rng, wc, wd)
            assert mul(qt, mul(qt, x, y), z) == mul(qt, x, mul(qt, y, z))


def test_mul_degree_additive():
    rng = random.Random(424242)
    qt = geometric_qtable(split_a2())
    nodes = qt.datum.nodes
    for _ in range(20):
        wc = tuple(rng.choice(nodes) for _ in range(3))
        wb = shuffled(rng, wc)
        wa = shuffled(rng, wc)
        x = random_elem(rng, wa, wb, nterms=1)
        y = random_elem(rng, wb, wc, nterms=1)
        dx = next(iter(x.terms)).degree(qt.datum)
        dy = next(iter(y.terms)).degree(qt.datum)
        prod = mul(qt, x, y)
        assert prod.degrees(qt.datum) <= {dx + dy}


def test_graded_dim_single_letter():
    for make in (split_a1, qs_a2, qs_a3):
        datum = make()
        for i in datum.nodes:
            series = graded_dim(datum, (i,), (i,), order=10)
            step = 2 * datum.qi(i)
            for k in range(-4, 11):
                assert series.coeff(k) == (1 if k >= 0 and k % step == 0 else 0)


def test_graded_dim_color_mismatch():
    series = graded_dim(qs_a2(), ("1",), ("2",), order=10)
    assert series.coeff(0) == 0 and series.coeff(2) == 0


def test_graded_dim_equal_pair():
    series = graded_dim(split_a1(), ("1", "1"), ("1", "1"), order=12)
    assert series.coeff(-2) == 1
    assert series.coeff(0) == 3
    assert series.coeff(2) == 5
    assert series.coeff(1) == 0


def test_graded_dim_matches_diagram_pairing():
    rng = random.Random(31337)
    for make in (split_a1, diag_a1a1, qs_a2, qs_a3, split_a2):
        datum = make()
        for _ in range(8):
            n = rng.randrange(4)
            top = tuple(rng.choice(datum.nodes) for _ in range(n))
            bottom = shuffled(rng, top) if rng.random() < 0.7 else tuple(
                rng.choice(datum.nodes) for _ in range(n)
            )
            series = graded_dim(datum, top, bottom, order=12)
            flipped = pair_theta(datum, top, bottom).bar()
            assert series.series.coeffs == expand(flipped, ASC_Q, 12).coeffs


def test_divided_idempotent_normal_form():
    qt = geometric_qtable(split_a1())
    w = ("1", "1")
    got = divided_idempotent(qt, "1", 2)
    assert got == e(w) + basis(w, w, (1, 0), (0, 1))
    assert got.degrees(qt.datum) == {0}


def test_divided_idempotent_is_idempotent():
    qt = geometric_qtable(split_a1())
    for n in range(5):
        d = divided_idempotent(qt, "1", n)
        assert mul(qt, d, d) == d
    qt = geometric_qtable(qs_a2())
    for n in range(4):
        d = divided_idempotent(qt, "1", n)
        assert mul(qt, d, d) == d


def test_divided_idempotent_kills_lower_crossings():
    qt = geometric_qtable(split_a1())
    w = ("1", "1", "1")
    d3 = divided_idempotent(qt, "1", 3)
    for r in (1, 2):
        assert mul(qt, d3, crossing(w, r)).is_zero()


def test_tensor():
    qt = geometric_qtable(split_a2())
    assert tensor(e(("1",)), e(("2",))) == e(("1", "2"))
    a = divided_idempotent(qt, "1", 2)
    b = e(("2",))
    big = tensor(a, b)
    assert mul(qt, big, big) == big
    left = mul(qt, tensor(crossing(("1", "1"), 1), b), tensor(dot(("1", "1"), 1), b))
    right = tensor(mul(qt, crossing(("1", "1"), 1), dot(("1", "1"), 1)), b)
    assert left == right


def test_serre_complex_shortest():
    qt = geometric_qtable(aux_a1a1())
    report = serre_complex_check(qt, "1", "2")
    assert report.m == 1
    assert report.ok


def test_serre_complex_single_edge():
    report = serre_complex_check(geometric_qtable(split_a2()), "1", "2")
    assert report.m == 2
    assert report.dd_zero and report.split_ok
    qt = geometric_qtable(qs_a3(), sign_convention="intro")
    for i, j in (("1", "2"), ("3", "2")):
        report = serre_complex_check(qt, i, j)
        assert report.m == 2
        assert report.ok, report.details


def test_serre_complex_double_edge():
    report = serre_complex_check(geometric_qtable(aux_double_edge()), "1", "2")
    assert report.m == 3
    assert report.ok, report.details


def test_serre_complex_rejects():
    qt = geometric_qtable(split_a2())
    with pytest.raises(ValueError):
        serre_complex_check(qt, "1", "1")
    with pytest.raises(ValueError):
        serre_complex_check(geometric_qtable(qs_a2()), "1", "2")
    triple = make_datum(
        ["1", "2"], [[2, -3], [-3, 2]], [1, 1], {"1": "1", "2": "2"}, {"1": -1, "2": -1}
    )
    with pytest.raises(ValueError):
        serre_complex_check(geometric_qtable(triple), "1", "2")


def test_zero_and_scale():
    w = ("1", "2")
    z = zero(w, w)
    assert z.is_zero()
    assert (e(w) + e(w).scale(-1)).is_zero()
    assert str(z) == "0"
    assert "e" in str(e(w))
