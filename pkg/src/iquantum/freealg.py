"""The free-type algebra on theta generators over Q(q).

Encodings:

* ``FElem``: finite map from words (tuples of node names) to RatQ
  coefficients, never storing zeros.  The product is the bilinear extension
  of word concatenation; the weight of a word is its letter multiset.
* Twisted derivations: ``iR`` peels from the left, ``Ri`` from the right,
  both sending theta_j to delta_{ij}/(1 - q_i^-2); ``iRtilde`` is the
  psi-conjugate of iR, with value delta_{ij}/(1 - q_i^2) and inverse twist.
  Each is computed by a single scan over letter positions with the exponent
  prefix sums of the Cartan pairing.
* ``pair`` is the bilinear form with (1,1) = 1 and adjunction peeling the
  left argument's leading letter through iR; ``sesq(x,y) = pair(psi(x), y)``.
  Symmetry of ``pair`` is a tested property, not an assumption.
"""

from __future__ import annotations

from .qring import LaurentPoly, RatQ, qfact
from .satake import DPWord, SatakeDatum, Word, to_word, word_weight


def inv_one_minus_qinv2(d: int) -> RatQ:
    """1/(1 - q^{-2d})."""
    return RatQ(LaurentPoly.one(), LaurentPoly({0: 1, -2 * d: -1}))


def inv_one_minus_q2(d: int) -> RatQ:
    """1/(1 - q^{2d})."""
    return RatQ(LaurentPoly.one(), LaurentPoly({0: 1, 2 * d: -1}))


class FElem:
    """Linear combination of words with RatQ coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, RatQ] | None = None):
        self.terms: dict[Word, RatQ] = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[tuple(w)] = c

    @staticmethod
    def zero() -> "FElem":
        return FElem()

    @staticmethod
    def one() -> "FElem":
        return FElem({(): RatQ.one()})

    @staticmethod
    def theta(i: str) -> "FElem":
        return FElem({(i,): RatQ.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: Word) -> RatQ:
        return self.terms.get(tuple(w), RatQ.zero())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FElem):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "FElem") -> "FElem":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, RatQ.zero()) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        r = FElem()
        r.terms = out
        return r

    def __neg__(self) -> "FElem":
        r = FElem()
        r.terms = {w: -c for w, c in self.terms.items()}
        return r

    def __sub__(self, other: "FElem") -> "FElem":
        return self + (-other)

    def scale(self, c: RatQ) -> "FElem":
        if c.is_zero():
            return FElem.zero()
        r = FElem()
        r.terms = {w: v * c for w, v in self.terms.items()}
        return r

    def __mul__(self, other: "FElem") -> "FElem":
        out: dict[Word, RatQ] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, RatQ.zero()) + c1 * c2
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        r = FElem()
        r.terms = out
        return r

    def psi(self) -> "FElem":
        """Bar-conjugate every coefficient; words are fixed."""
        r = FElem()
        r.terms = {w: c.bar() for w, c in self.terms.items()}
        return r

    def weights(self):
        """Set of LamVec weights occurring among the words."""
        return {word_weight(tuple((i, 1) for i in w)) for w in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            label = " ".join(w) if w else "-"
            parts.append(f"({self.terms[w]})*[{label}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FElem({self})"


def _derivation(
    datum: SatakeDatum, i: str, y: FElem, prefix_side: str, twist_sign: int, value: RatQ
) -> FElem:
    """Shared scan for the three twisted derivations.

    prefix_side "left": the twist exponent sums Cartan entries a_{i, letter}
    over letters strictly before the removed position; "right": strictly
    after.  twist_sign multiplies the exponent; value is the image of
    theta_i.
    """
    d = datum.qi(i)
    out = FElem.zero()
    for w, c in y.terms.items():
        pref = 0
        totals = [0] * (len(w) + 1)
        for t, letter in enumerate(w):
            totals[t] = pref
            pref += datum.a[(i, letter)]
        totals[len(w)] = pref
        for s, letter in enumerate(w):
            if letter != i:
                continue
            if prefix_side == "left":
                e = totals[s]
            else:
                e = pref - totals[s] - datum.a[(i, i)]
            coeff = c * RatQ.q_power(d * twist_sign * e) * value
            out = out + FElem({w[:s] + w[s + 1 :]: coeff})
    return out


def iR(datum: SatakeDatum, i: str, y: FElem) -> FElem:
    """Left-peeling twisted derivation with theta_j -> delta_ij/(1-q_i^-2)."""
    return _derivation(datum, i, y, "left", 1, inv_one_minus_qinv2(datum.qi(i)))


def Ri(datum: SatakeDatum, i: str, y: FElem) -> FElem:
    """Right-peeling twisted derivation with theta_j -> delta_ij/(1-q_i^-2)."""
    return _derivation(datum, i, y, "right", 1, inv_one_minus_qinv2(datum.qi(i)))


def iRtilde(datum: SatakeDatum, i: str, y: FElem) -> FElem:
    """psi-conjugate of iR: theta_j -> delta_ij/(1-q_i^2), inverse twist."""
    return _derivation(datum, i, y, "left", -1, inv_one_minus_q2(datum.qi(i)))


def theta_word(datum: SatakeDatum, word: DPWord) -> FElem:
    """Product of divided powers theta_i^(n) = theta_i^n/[n]!."""
    coeff = RatQ.one()
    for i, n in word:
        coeff = coeff / RatQ.from_laurent(qfact(n, datum.qi(i)))
    return FElem({to_word(word): coeff})


def pair(datum: SatakeDatum, x: FElem, y: FElem) -> RatQ:
    """Bilinear form: (1,1) = 1, left letters peel through iR."""
    total = RatQ.zero()
    for wx, cx in x.terms.items():
        for wy, cy in y.terms.items():
            p = _word_pair(datum, wx, wy)
            if not p.is_zero():
                total = total + cx * cy * p
    return total


_WORD_PAIR_CACHE: dict[tuple, RatQ] = {}


def _word_pair(datum: SatakeDatum, wx: Word, wy: Word) -> RatQ:
    """Pairing of two bare words, memoized across calls.

    Peeling removes one matching letter per step, so words with different
    letter multisets pair to zero; that case is filtered before recursing.
    """
    if len(wx) != len(wy) or sorted(wx) != sorted(wy):
        return RatQ.zero()
    if not wx:
        return RatQ.one()
    key = (datum.key(), wx, wy)
    hit = _WORD_PAIR_CACHE.get(key)
    if hit is not None:
        return hit
    i = wx[0]
    rest = wx[1:]
    d = datum.qi(i)
    value = inv_one_minus_qinv2(d)
    total = RatQ.zero()
    pref = 0
    for s, letter in enumerate(wy):
        if letter == i:
            sub = _word_pair(datum, rest, wy[:s] + wy[s + 1 :])
            if not sub.is_zero():
                total = total + RatQ.q_power(d * pref) * value * sub
        pref += datum.a[(i, letter)]
    _WORD_PAIR_CACHE[key] = total
    return total


def sesq(datum: SatakeDatum, x: FElem, y: FElem) -> RatQ:
    """Sesquilinear form: bar-twist the left argument, then pair."""
    return pair(datum, x.psi(), y)
