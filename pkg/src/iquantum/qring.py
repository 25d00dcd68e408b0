"""Exact arithmetic in Z[q, q^-1], its fraction field, and truncated series.

Encodings:

* ``LaurentPoly`` is a sparse map exponent -> integer coefficient with no zero
  entries.  All arithmetic is exact; coefficients are Python ints so quantum
  factorials never overflow.
* ``RatQ`` is a normalized quotient num/den of Laurent polynomials.  The
  normal form (gcd over Q[q] removed, denominator with lowest exponent 0 and
  positive leading coefficient, joint integer content 1) is unique, so
  structural equality of the two dictionaries is mathematical equality.  That
  structural equality is the tolerance used by every cross-check in this
  package: there is none.
* ``PowerSeriesTrunc`` is a truncated expansion in either direction,
  ascending in q (dir ``"q"``) or ascending in q^-1 (dir ``"q^-1"``), with
  integer coefficients and all stored exponents of magnitude <= order.

Quantum combinatorics (balanced quantum integers, factorials and binomials
in q_i = q^d) live here too, since everything downstream consumes them.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

ASC_Q = "q"
ASC_QINV = "q^-1"


class LaurentPoly:
    """Sparse Laurent polynomial over the integers."""

    __slots__ = ("c",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        self.c: dict[int, int] = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    self.c[int(e)] = int(v)

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def from_int(n: int) -> "LaurentPoly":
        return LaurentPoly({0: n})

    @staticmethod
    def q_power(e: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({e: coeff})

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(frozenset(self.c.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        r = LaurentPoly()
        r.c = out
        return r

    def __neg__(self) -> "LaurentPoly":
        r = LaurentPoly()
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            r = LaurentPoly()
            if other:
                r.c = {e: v * other for e, v in self.c.items()}
            return r
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = out.get(e, 0) + v1 * v2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        r = LaurentPoly()
        r.c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        r = LaurentPoly.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def bar(self) -> "LaurentPoly":
        """Substitute q -> q^-1."""
        r = LaurentPoly()
        r.c = {-e: v for e, v in self.c.items()}
        return r

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        r = LaurentPoly()
        r.c = {e + k: v for e, v in self.c.items()}
        return r

    def lowest_exp(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no lowest exponent")
        return min(self.c)

    def highest_exp(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no highest exponent")
        return max(self.c)

    def leading_coeff(self) -> int:
        return self.c[self.highest_exp()]

    def content(self) -> int:
        g = 0
        for v in self.c.values():
            g = gcd(g, v)
        return g

    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            sign = "+" if v > 0 else "-"
            parts.append(f"{sign}{abs(v)}*q^{e}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.c!r})"


def _dense(p: LaurentPoly) -> tuple[int, list[Fraction]]:
    """(lowest exponent, ascending dense Fraction coefficient list)."""
    if p.is_zero():
        return 0, []
    lo, hi = p.lowest_exp(), p.highest_exp()
    out = [Fraction(0)] * (hi - lo + 1)
    for e, v in p.c.items():
        out[e - lo] = Fraction(v)
    return lo, out


def _trim(v: list[Fraction]) -> list[Fraction]:
    while v and v[-1] == 0:
        v.pop()
    return v


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    """Ordinary polynomial division of ascending dense lists over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / b[-1]
        if c:
            q[k] = c
            for j, bv in enumerate(b):
                a[k + j] -= c * bv
    return _trim(q), _trim(a)


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [v / lead for v in a]
    return a


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Divide a by b, requiring an exact integer Laurent result."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero()
    la, da = _dense(a)
    lb, db = _dense(b)
    quot, rem = _poly_divmod(da, db)
    if rem:
        raise ValueError("inexact Laurent division")
    out: dict[int, int] = {}
    for k, v in enumerate(quot):
        if v:
            if v.denominator != 1:
                raise ValueError("non-integer coefficient in Laurent division")
            out[k + la - lb] = v.numerator
    return LaurentPoly(out)


class RatQ:
    """Normalized quotient of Laurent polynomials: the field Q(q) element."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one()
        if den.is_zero():
            raise ZeroDivisionError("RatQ with zero denominator")
        if num.is_zero():
            self.num = LaurentPoly.zero()
            self.den = LaurentPoly.one()
            return
        ln, dn = _dense(num)
        ld, dd = _dense(den)
        g = _poly_gcd(list(dn), list(dd))
        if len(g) > 1:
            dn, _ = _poly_divmod(dn, g)
            dd, _ = _poly_divmod(dd, g)
        # den lowest nonzero coefficient sits at q^0 after this shift
        shift_d = next(k for k, v in enumerate(dd) if v)
        shift_n = next(k for k, v in enumerate(dn) if v)
        num_lo = ln + shift_n - (ld + shift_d)
        dn = dn[shift_n:]
        dd = dd[shift_d:]
        # clear rational content jointly, fix the sign on den's top term
        mult = 1
        for v in dn + dd:
            mult = mult * v.denominator // gcd(mult, v.denominator)
        ni = [int(v * mult) for v in dn]
        di = [int(v * mult) for v in dd]
        g2 = 0
        for v in ni + di:
            g2 = gcd(g2, v)
        if di[-1] < 0:
            g2 = -g2
        ni = [v // g2 for v in ni]
        di = [v // g2 for v in di]
        self.num = LaurentPoly({num_lo + k: v for k, v in enumerate(ni) if v})
        self.den = LaurentPoly({k: v for k, v in enumerate(di) if v})

    @staticmethod
    def zero() -> "RatQ":
        return RatQ(LaurentPoly.zero())

    @staticmethod
    def one() -> "RatQ":
        return RatQ(LaurentPoly.one())

    @staticmethod
    def from_int(n: int) -> "RatQ":
        return RatQ(LaurentPoly.from_int(n))

    @staticmethod
    def q_power(e: int, coeff: int = 1) -> "RatQ":
        return RatQ(LaurentPoly.q_power(e, coeff))

    @staticmethod
    def from_laurent(p: LaurentPoly) -> "RatQ":
        return RatQ(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RatQ.from_int(other)
        if not isinstance(other, RatQ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "RatQ") -> "RatQ":
        if isinstance(other, int):
            other = RatQ.from_int(other)
        if not isinstance(other, RatQ):
            return NotImplemented
        return RatQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatQ":
        if self.is_zero():
            return self
        r = RatQ.zero()
        r.num = -self.num
        r.den = self.den
        # sign convention keeps den's leading coefficient positive, so simply
        # negating the numerator preserves the normal form
        return r

    def __sub__(self, other: "RatQ") -> "RatQ":
        return self + (-other)

    def __rsub__(self, other) -> "RatQ":
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = RatQ.from_int(other)
        if not isinstance(other, RatQ):
            return NotImplemented
        return RatQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RatQ") -> "RatQ":
        if isinstance(other, int):
            other = RatQ.from_int(other)
        if not isinstance(other, RatQ):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("RatQ division by zero")
        return RatQ(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RatQ":
        if n < 0:
            return RatQ.one() / (self ** (-n))
        r = RatQ.one()
        for _ in range(n):
            r = r * self
        return r

    def bar(self) -> "RatQ":
        """The involution q -> q^-1."""
        return RatQ(self.num.bar(), self.den.bar())

    def __str__(self) -> str:
        if self.den == LaurentPoly.one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatQ({self})"


def qint(n: int, d: int = 1) -> LaurentPoly:
    """Balanced quantum integer [n] in q_i = q^d; [-n] = -[n]."""
    if n < 0:
        return -qint(-n, d)
    return LaurentPoly({d * (n - 1 - 2 * k): 1 for k in range(n)})


def qfact(n: int, d: int = 1) -> LaurentPoly:
    """Quantum factorial [n]!."""
    if n < 0:
        raise ValueError("quantum factorial of a negative integer")
    r = LaurentPoly.one()
    for k in range(1, n + 1):
        r = r * qint(k, d)
    return r


def qbinom(m: int, n: int, d: int = 1) -> LaurentPoly:
    """Balanced quantum binomial [m; n]; zero for n < 0.

    Computed by the product formula prod_{k=1..n} [m-n+k]/[k], which stays
    integral at every step and works for negative m.
    """
    if n < 0:
        return LaurentPoly.zero()
    r = LaurentPoly.one()
    for k in range(1, n + 1):
        r = exact_div(r * qint(m - n + k, d), qint(k, d))
    return r


class PowerSeriesTrunc:
    """Truncated integer series, ascending in q or in q^-1."""

    __slots__ = ("dir", "order", "coeffs")

    def __init__(self, dir: str, order: int, coeffs: dict[int, int] | None = None):
        if dir not in (ASC_Q, ASC_QINV):
            raise ValueError(f"unknown direction {dir!r}")
        self.dir = dir
        self.order = order
        self.coeffs: dict[int, int] = {}
        if coeffs:
            for e, v in coeffs.items():
                if v and abs(e) <= order:
                    self.coeffs[int(e)] = int(v)

    @staticmethod
    def one(dir: str, order: int) -> "PowerSeriesTrunc":
        return PowerSeriesTrunc(dir, order, {0: 1})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeriesTrunc):
            return NotImplemented
        return (
            self.dir == other.dir
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.dir, self.order, frozenset(self.coeffs.items())))

    def _check(self, other: "PowerSeriesTrunc"):
        if self.dir != other.dir or self.order != other.order:
            raise ValueError("mismatched series direction or order")

    def __add__(self, other: "PowerSeriesTrunc") -> "PowerSeriesTrunc":
        self._check(other)
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        return PowerSeriesTrunc(self.dir, self.order, out)

    def __mul__(self, other: "PowerSeriesTrunc") -> "PowerSeriesTrunc":
        self._check(other)
        out: dict[int, int] = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                e = e1 + e2
                if abs(e) > self.order:
                    continue
                w = out.get(e, 0) + v1 * v2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        return PowerSeriesTrunc(self.dir, self.order, out)

    def coeff(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        exps = sorted(self.coeffs, reverse=(self.dir == ASC_QINV))
        parts = []
        for e in exps:
            v = self.coeffs[e]
            sign = "+" if v > 0 else "-"
            parts.append(f"{sign}{abs(v)}*q^{e}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"PowerSeriesTrunc({self.dir!r}, {self.order}, {self.coeffs!r})"


def expand(a: RatQ, dir: str, order: int) -> PowerSeriesTrunc:
    """Expand a rational function as a truncated integer series.

    Long division oriented by ``dir``.  A non-integer coefficient in the
    result means some upstream quantity was not the integer series it claims
    to be, so it raises rather than rounding.
    """
    if dir == ASC_QINV:
        mirrored = expand(a.bar(), ASC_Q, order)
        return PowerSeriesTrunc(
            ASC_QINV, order, {-e: v for e, v in mirrored.coeffs.items()}
        )
    if dir != ASC_Q:
        raise ValueError(f"unknown direction {dir!r}")
    if a.is_zero():
        return PowerSeriesTrunc(ASC_Q, order, {})
    ln, nd = _dense(a.num)
    ld, dd = _dense(a.den)
    # strip the denominator's lowest term to q^0 and divide term by term
    sh = next(k for k, v in enumerate(dd) if v)
    dd = dd[sh:]
    val = ln - (ld + sh)  # valuation of the expansion
    out: dict[int, int] = {}
    coeffs: list[Fraction] = []
    for k in range(order - val + 1):
        c = nd[k] if k < len(nd) else Fraction(0)
        for j in range(1, min(k, len(dd) - 1) + 1):
            c -= dd[j] * coeffs[k - j]
        c /= dd[0]
        coeffs.append(c)
        e = val + k
        if c and abs(e) <= order:
            if c.denominator != 1:
                raise ValueError(
                    f"non-integer coefficient {c} at q^{e} in series expansion"
                )
            out[e] = c.numerator
    for k, c in enumerate(coeffs):
        if c and c.denominator != 1:
            raise ValueError(
                f"non-integer coefficient {c} at q^{val + k} in series expansion"
            )
    return PowerSeriesTrunc(ASC_Q, order, out)
