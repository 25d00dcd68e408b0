"""Dotted permutation diagrams colored by nodes, multiplied exactly.

Elements are integer combinations of basis diagrams: a permutation wiring
between a bottom and a top word, with dot exponents on the bottom ends.  A
two-variable polynomial table drives the defining relations: a dot sliding
through a crossing of equal colors leaves a correction term, the square of
a mixed-color crossing is the table polynomial pinned to the strands, and
triple crossings satisfy the deformed braid relation.

Products are computed through a faithful action on polynomial vectors: a
crossing acts as the difference-quotient operator on equal colors and as a
(possibly table-weighted) variable swap otherwise.  Composites live in the
twisted group algebra over rational functions, from which the basis
coefficients are recovered by peeling longest permutations; the transition
is triangular, so the peeling terminates and the recovered coefficients are
the unique integral normal form.  Rational functions are held in sympy's
dense field representation, which keeps the peeling exact and fast.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import sympy
from sympy import QQ
from sympy.polys.fields import field as _frac_field

from .qring import ASC_Q, LaurentPoly, RatQ, expand
from .satake import SatakeDatum, Word
from .shapes import RankSeries

_X, _Y = sympy.symbols("qt_x qt_y")
_qtable_serial = itertools.count()


def _identity(l: int) -> tuple[int, ...]:
    return tuple(range(l))


def _inv_count(p) -> int:
    return sum(1 for s in range(len(p)) for t in range(s + 1, len(p)) if p[s] > p[t])


def _inverse(p):
    out = [0] * len(p)
    for s, t in enumerate(p):
        out[t] = s
    return tuple(out)


def _compose(u, w):
    """(u after w) as maps from bottom positions to top positions."""
    return tuple(u[t] for t in w)


def _swap_values(p, r):
    return tuple(r + 1 if t == r else r if t == r + 1 else t for t in p)


def _lexmin_word(p) -> tuple[int, ...]:
    """Lexicographically smallest reduced word, greedy on left descents."""
    out = []
    cur = list(p)
    while True:
        pos = {t: s for s, t in enumerate(cur)}
        for r in range(len(cur) - 1):
            if pos[r] > pos[r + 1]:
                out.append(r)
                cur = [r + 1 if t == r else r if t == r + 1 else t for t in cur]
                break
        else:
            return tuple(out)


_FIELDS: dict[int, tuple] = {}


def _field(l: int):
    got = _FIELDS.get(l)
    if got is None:
        names = ",".join(f"x{t + 1}" for t in range(l))
        F, *xs = _frac_field(names, QQ)
        got = (F, tuple(xs))
        _FIELDS[l] = got
    return got


def _map_monomials(F, f, remap):
    R = F.ring

    def on_poly(p):
        return R.from_dict({remap(exp): c for exp, c in p.terms()})

    return F.new(on_poly(f.numer), on_poly(f.denom))


def _permute_frac(F, f, p):
    """Substitute x_t by x_{p[t]}; the coefficient twist when a permutation
    moves past a function in the twisted group algebra."""
    if all(p[t] == t for t in range(len(p))):
        return f
    q = _inverse(p)
    return _map_monomials(F, f, lambda exp: tuple(exp[q[s]] for s in range(len(q))))


def _swap_frac(F, f, r):
    return _map_monomials(F, f, lambda exp: exp[:r] + (exp[r + 1], exp[r]) + exp[r + 2 :])


def _acc(d, k, v):
    cur = d.get(k)
    d[k] = v if cur is None else cur + v


class QTable:
    """Crossing polynomials Q_{i,j}(x,y) for ordered node pairs, with the
    involution sign already applied, plus their leading coefficients."""

    def __init__(self, datum: SatakeDatum, polys, t, sign_convention: str):
        self.datum = datum
        self.polys = polys
        self.t = t
        self.sign_convention = sign_convention
        self.serial = next(_qtable_serial)
        self._terms: dict[tuple[str, str], tuple] = {}
        for key, p in polys.items():
            if p == 0:
                self._terms[key] = ()
                continue
            items = []
            for (dx, dy), c in sympy.Poly(p, _X, _Y).terms():
                if not c.is_Integer:
                    raise ValueError("table coefficients must be integers")
                items.append(((int(dx), int(dy)), int(c)))
            self._terms[key] = tuple(items)

    def poly(self, i: str, j: str):
        return self.polys[(i, j)]

    def order(self, i: str) -> int:
        return self.datum.nodes.index(i)


def geometric_qtable(datum: SatakeDatum, orientation=None, sign_convention: str = "body") -> QTable:
    """Build the quiver choice (x-y)^{#(i->j)} (y-x)^{#(j->i)} and apply the
    involution sign.

    sign_convention "body" multiplies row i by -1 when i is tau-fixed;
    "intro" multiplies entry (i,j) by -1 when i = tau(j).  The symmetry
    Q_{i,j}(x,y) = Q_{j,i}(y,x) of the signed table is what makes the
    polynomial action associative, so it is validated here and a violation
    is an error naming the offending pair.
    """
    if sign_convention not in ("body", "intro"):
        raise ValueError(f"unknown sign convention {sign_convention!r}")
    for i in datum.nodes:
        if datum.qi(i) != 1:
            raise ValueError(f"geometric parameters need d_i = 1, got d_{i} = {datum.qi(i)}")
    counts: dict[tuple[str, str], int] = {}
    if orientation is None:
        for i in datum.nodes:
            for j in datum.nodes:
                if datum.nodes.index(i) < datum.nodes.index(j):
                    counts[(i, j)] = -datum.a[(i, j)]
    else:
        for (i, j), n in orientation.items():
            if i not in datum.nodes or j not in datum.nodes:
                raise ValueError(f"orientation names unknown pair ({i}, {j})")
            if n < 0:
                raise ValueError(f"negative edge count for ({i}, {j})")
            counts[(i, j)] = int(n)
    polys = {}
    for i in datum.nodes:
        for j in datum.nodes:
            if i == j:
                polys[(i, j)] = sympy.Integer(0)
                continue
            nij = counts.get((i, j), 0)
            nji = counts.get((j, i), 0)
            if nij + nji != -datum.a[(i, j)]:
                raise ValueError(
                    f"orientation of ({i}, {j}) has {nij}+{nji} edges, expected {-datum.a[(i, j)]}"
                )
            base = (_X - _Y) ** nij * (_Y - _X) ** nji
            if sign_convention == "body":
                sign = -1 if datum.tau[i] == i else 1
            else:
                sign = -1 if datum.tau[j] == i else 1
            polys[(i, j)] = sympy.expand(sign * base)
    for i in datum.nodes:
        for j in datum.nodes:
            if i != j:
                flipped = polys[(j, i)].subs({_X: _Y, _Y: _X}, simultaneous=True)
                if sympy.expand(polys[(i, j)] - flipped) != 0:
                    raise ValueError(
                        f"signed table is not symmetric on ({i}, {j}); "
                        f"convention {sign_convention!r} is unusable for this datum"
                    )
    t = {}
    for (i, j), p in polys.items():
        if i == j:
            continue
        lead = p.coeff(_Y, 0).coeff(_X, -datum.a[(i, j)])
        t[(i, j)] = int(lead)
    return QTable(datum, polys, t, sign_convention)


@dataclass(frozen=True)
class KLRBasisElem:
    """A wiring diagram: perm[s] is the top endpoint of bottom strand s,
    dots[s] the dot exponent at the bottom of strand s.  The crossing part
    is read through the lexicographically smallest reduced word."""

    top: Word
    bottom: Word
    perm: tuple[int, ...]
    dots: tuple[int, ...]

    def degree(self, datum: SatakeDatum) -> int:
        deg = sum(2 * datum.qi(c) * n for c, n in zip(self.bottom, self.dots))
        for s in range(len(self.bottom)):
            for t in range(s + 1, len(self.bottom)):
                if self.perm[s] > self.perm[t]:
                    a, b = self.bottom[s], self.bottom[t]
                    deg -= datum.qi(a) * datum.a[(a, b)]
        return deg


@dataclass
class KLRElem:
    top: Word
    bottom: Word
    terms: dict[KLRBasisElem, int]

    def __post_init__(self):
        self.terms = {b: c for b, c in self.terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "KLRElem"):
        if self.top != other.top or self.bottom != other.bottom:
            raise ValueError("boundary words differ")

    def __add__(self, other: "KLRElem") -> "KLRElem":
        self._check(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, 0) + c
        return KLRElem(self.top, self.bottom, out)

    def __sub__(self, other: "KLRElem") -> "KLRElem":
        return self + other.scale(-1)

    def scale(self, c: int) -> "KLRElem":
        return KLRElem(self.top, self.bottom, {b: c * v for b, v in self.terms.items()})

    def degrees(self, datum: SatakeDatum) -> set[int]:
        return {b.degree(datum) for b in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for b, c in sorted(
            self.terms.items(), key=lambda it: (_inv_count(it[0].perm), it[0].perm, it[0].dots)
        ):
            bits = [f"x{t + 1}^{n}" for t, n in enumerate(b.dots) if n]
            word = _lexmin_word(b.perm)
            if word:
                bits.append("s(" + " ".join(str(r + 1) for r in word) + ")")
            label = " ".join(bits) if bits else "e"
            parts.append(f"({c:+d})*[{label}]")
        return " + ".join(parts)


def zero(top: Word, bottom: Word) -> KLRElem:
    return KLRElem(tuple(top), tuple(bottom), {})


def e(word: Word) -> KLRElem:
    word = tuple(word)
    b = KLRBasisElem(word, word, _identity(len(word)), (0,) * len(word))
    return KLRElem(word, word, {b: 1})


def dot(word: Word, t: int) -> KLRElem:
    """x_t e_word, t counted from 1."""
    word = tuple(word)
    if not 1 <= t <= len(word):
        raise ValueError(f"dot position {t} outside word of length {len(word)}")
    dots = tuple(1 if s == t - 1 else 0 for s in range(len(word)))
    return KLRElem(word, word, {KLRBasisElem(word, word, _identity(len(word)), dots): 1})


def crossing(word: Word, r: int) -> KLRElem:
    """psi_r e_word crossing strands r and r+1, r counted from 1."""
    word = tuple(word)
    if not 1 <= r <= len(word) - 1:
        raise ValueError(f"crossing position {r} outside word of length {len(word)}")
    top = list(word)
    top[r - 1], top[r] = top[r], top[r - 1]
    top = tuple(top)
    perm = _swap_values(_identity(len(word)), r - 1)
    return KLRElem(top, word, {KLRBasisElem(top, word, perm, (0,) * len(word)): 1})


def tensor(a: KLRElem, b: KLRElem) -> KLRElem:
    """Place a to the left of b; disjoint strands never interact, so basis
    diagrams combine to basis diagrams."""
    off = len(a.bottom)
    out: dict[KLRBasisElem, int] = {}
    top = a.top + b.top
    bottom = a.bottom + b.bottom
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            key = KLRBasisElem(
                top,
                bottom,
                ba.perm + tuple(off + t for t in bb.perm),
                ba.dots + bb.dots,
            )
            _acc(out, key, ca * cb)
    return KLRElem(top, bottom, out)


_PSI_CACHE: dict[tuple, tuple[Word, dict]] = {}
_ENTRY_CACHE: dict[tuple, object] = {}
_ELEM_CACHE: dict[tuple, dict] = {}


def _pinned_entry(qt: QTable, i: str, j: str, l: int, r: int):
    """The table polynomial at (i, j) as a rational function in l variables,
    pinned to strands r, r+1 (0-based)."""
    key = (qt.serial, i, j, l, r)
    hit = _ENTRY_CACHE.get(key)
    if hit is None:
        F, _ = _field(l)
        R = F.ring
        d = {}
        for (dx, dy), c in qt._terms[(i, j)]:
            exp = [0] * l
            exp[r] = dx
            exp[r + 1] = dy
            d[tuple(exp)] = QQ(c)
        hit = F.new(R.from_dict(d), R.one)
        _ENTRY_CACHE[key] = hit
    return hit


def _expand_psi(qt: QTable, bottom: Word, perm) -> tuple[Word, dict]:
    """Expand the crossing diagram of perm over the bottom word into the
    twisted group algebra: a map permutation -> rational function.

    The expansion is supported on products of subwords of the reduced word,
    so the only term of maximal length sits at perm itself; that is the
    triangularity the extraction in mul relies on.
    """
    key = (qt.serial, bottom, perm)
    hit = _PSI_CACHE.get(key)
    if hit is not None:
        return hit
    l = len(bottom)
    F, xs = _field(l)
    terms = {_identity(l): F.one}
    cw = list(bottom)
    for r in reversed(_lexmin_word(perm)):
        a, b = cw[r], cw[r + 1]
        new: dict = {}
        if a == b:
            den = xs[r] - xs[r + 1]
            for u, f in terms.items():
                _acc(new, u, f / den)
                _acc(new, _swap_values(u, r), -_swap_frac(F, f, r) / den)
        else:
            if qt.order(a) < qt.order(b):
                mult = F.one
            else:
                mult = _pinned_entry(qt, b, a, l, r)
            for u, f in terms.items():
                _acc(new, _swap_values(u, r), mult * _swap_frac(F, f, r))
            cw[r], cw[r + 1] = cw[r + 1], cw[r]
        terms = {u: f for u, f in new.items() if f}
    result = (tuple(cw), terms)
    _PSI_CACHE[key] = result
    return result


def _expand_elem(qt: QTable, x: KLRElem) -> dict:
    key = (qt.serial, x.top, x.bottom, frozenset(x.terms.items()))
    hit = _ELEM_CACHE.get(key)
    if hit is not None:
        return hit
    l = len(x.bottom)
    F, _ = _field(l)
    R = F.ring
    out: dict = {}
    for bas, c in x.terms.items():
        mono = F.new(R.from_dict({bas.dots: QQ(c)}), R.one)
        _, exp = _expand_psi(qt, x.bottom, bas.perm)
        for u, f in exp.items():
            _acc(out, u, f * _permute_frac(F, mono, u))
    out = {u: f for u, f in out.items() if f}
    _ELEM_CACHE[key] = out
    return out


def _extract(qt: QTable, top: Word, bottom: Word, table: dict) -> KLRElem:
    l = len(bottom)
    F, _ = _field(l)
    R = F.ring
    for u in table:
        for s in range(l):
            if top[u[s]] != bottom[s]:
                raise ValueError("mismatched strand colors in straightening")
    out: dict[KLRBasisElem, int] = {}
    work = {u: f for u, f in table.items() if f}
    while work:
        w = max(work, key=_inv_count)
        _, exp = _expand_psi(qt, bottom, w)
        quot = work[w] / exp[w]
        dotspoly = _permute_frac(F, quot, _inverse(w))
        if dotspoly.denom != R.one:
            raise ValueError("straightening left a non-polynomial dot part")
        for exps, coeff in dotspoly.numer.terms():
            if coeff.denominator != 1:
                raise ValueError(f"non-integer coefficient {coeff} in straightening")
            b = KLRBasisElem(tuple(top), tuple(bottom), w, tuple(int(n) for n in exps))
            _acc(out, b, int(coeff.numerator))
        for u, f in exp.items():
            g = work.get(u, F.zero) - f * _permute_frac(F, dotspoly, u)
            if g:
                work[u] = g
            else:
                work.pop(u, None)
    return KLRElem(tuple(top), tuple(bottom), out)


def mul(qt: QTable, a: KLRElem, b: KLRElem) -> KLRElem:
    if a.bottom != b.top:
        raise ValueError("inner boundary words differ")
    if a.is_zero() or b.is_zero():
        return zero(a.top, b.bottom)
    if not b.bottom:
        ca = sum(a.terms.values())
        cb = sum(b.terms.values())
        return e(()).scale(ca * cb)
    F, _ = _field(len(b.bottom))
    ea = _expand_elem(qt, a)
    eb = _expand_elem(qt, b)
    comp: dict = {}
    for u, f in ea.items():
        for w, g in eb.items():
            _acc(comp, _compose(u, w), f * _permute_frac(F, g, u))
    comp = {u: f for u, f in comp.items() if f}
    return _extract(qt, a.top, b.bottom, comp)


def _matchings(top: Word, bottom: Word):
    """Permutations carrying bottom positions to equal-colored top positions."""
    l = len(bottom)
    out = []

    def rec(s, used, acc):
        if s == l:
            out.append(tuple(acc))
            return
        for t in range(l):
            if t not in used and top[t] == bottom[s]:
                rec(s + 1, used | {t}, acc + [t])

    if len(top) == l:
        rec(0, frozenset(), [])
    return out


def graded_dim(datum: SatakeDatum, top: Word, bottom: Word, order: int = 20) -> RankSeries:
    """Graded dimension of the span of dotted wiring diagrams: one free
    polynomial strand factor per bottom letter, summed over matchings."""
    top = tuple(top)
    bottom = tuple(bottom)
    num = LaurentPoly({})
    for w in _matchings(top, bottom):
        deg = 0
        for s in range(len(bottom)):
            for t in range(s + 1, len(bottom)):
                if w[s] > w[t]:
                    deg -= datum.qi(bottom[s]) * datum.a[(bottom[s], bottom[t])]
        num = num + LaurentPoly.q_power(deg)
    den = LaurentPoly.q_power(0)
    for c in bottom:
        den = den * (LaurentPoly.q_power(0) - LaurentPoly.q_power(2 * datum.qi(c)))
    return RankSeries(expand(RatQ(num, den), ASC_Q, order))


def divided_idempotent(qt: QTable, i: str, n: int) -> KLRElem:
    """Staircase dots over the longest-permutation crossing diagram on n
    equal-colored strands; an idempotent projecting to the thick strand."""
    if n < 0:
        raise ValueError("negative thickness")
    word = (i,) * n
    if n <= 1:
        return e(word)
    w0 = tuple(reversed(range(n)))
    cross = KLRElem(word, word, {KLRBasisElem(word, word, w0, (0,) * n): 1})
    rho = tuple(n - 1 - s for s in range(n))
    dots = KLRElem(word, word, {KLRBasisElem(word, word, _identity(n), rho): 1})
    return mul(qt, dots, cross)


@dataclass(frozen=True)
class SerreComplexReport:
    i: str
    j: str
    m: int
    dd_zero: bool
    split_ok: bool
    details: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.dd_zero and self.split_ok


def serre_complex_check(qt: QTable, i: str, j: str) -> SerreComplexReport:
    """Verify that peeling one strand off the thick bundle gives a split
    exact complex through the alternating-sum words i^(n) j i^(m-n).

    The differential d_n peels the leftmost strand of the left thick bundle
    across its own bundle and j, sandwiched in divided-power idempotents;
    the splitting s_n peels the rightmost strand of the right bundle back,
    scaled by (-1)^n over the leading coefficient of the table entry.
    """
    datum = qt.datum
    if i == j:
        raise ValueError("need two distinct nodes")
    if datum.tau[j] == i:
        raise ValueError("the involution-paired case has no explicit differential here")
    m = 1 - datum.a[(i, j)]
    if m > 3:
        raise ValueError(f"complex length {m} out of the supported range")
    t = qt.t[(i, j)]
    if t * t != 1:
        raise ValueError("leading coefficient must be a sign")
    words = [(i,) * n + (j,) + (i,) * (m - n) for n in range(m + 1)]
    idem = [
        tensor(tensor(divided_idempotent(qt, i, n), e((j,))), divided_idempotent(qt, i, m - n))
        for n in range(m + 1)
    ]

    def lateral(bottom, top, perm):
        # one strand over a block of parallel strands: the permutation
        # avoids the pattern 321, so every reduced word gives this diagram
        b = KLRBasisElem(top, bottom, perm, (0,) * len(bottom))
        return KLRElem(top, bottom, {b: 1})

    d = {}
    for n in range(1, m + 1):
        # leftmost strand of the left bundle crosses its bundle and j
        perm = (n,) + tuple(range(n)) + tuple(range(n + 1, m + 1))
        d[n] = mul(qt, idem[n - 1], mul(qt, lateral(words[n], words[n - 1], perm), idem[n]))
    s = {}
    for n in range(m):
        # rightmost strand of the right bundle crosses its bundle and j
        perm = tuple(range(n)) + (n + 1,) + tuple(range(n + 2, m + 1)) + (n,)
        elem = mul(qt, idem[n + 1], mul(qt, lateral(words[n], words[n + 1], perm), idem[n]))
        s[n] = elem.scale((-1) ** n * t)
    details = []
    dd_zero = True
    for n in range(1, m):
        prod = mul(qt, d[n], d[n + 1])
        ok = prod.is_zero()
        dd_zero = dd_zero and ok
        details.append(f"d_{n} d_{n + 1} = 0: {'ok' if ok else 'FAIL'}")
    split_ok = True
    for n in range(m + 1):
        acc = zero(words[n], words[n])
        if n >= 1:
            acc = acc + mul(qt, s[n - 1], d[n])
        if n < m:
            acc = acc + mul(qt, d[n + 1], s[n])
        ok = (acc - idem[n]).is_zero()
        split_ok = split_ok and ok
        details.append(f"splitting at n={n}: {'ok' if ok else 'FAIL'}")
    return SerreComplexReport(i, j, m, dd_zero, split_ok, tuple(details))
