"""Exact arithmetic in ZZ[u, u^-1] with u = q^(1/n), its fraction field,
and quantum combinatorics ([s], [t]!, quantum binomials/trinomials).

Exponents are stored as integers in units of 1/N, where N (``root_order``)
is fixed per value; q itself has exponent N.  Arithmetic is only defined
between values with equal root_order.
"""

from fractions import Fraction
from math import gcd

from ._poly import add_terms, sub_terms, mul_terms, scale_shift_terms


class LaurentPoly:
    """Laurent polynomial over ZZ in u = q^(1/N)."""

    __slots__ = ("N", "terms")

    def __init__(self, N, terms, _clean=True):
        if N < 1:
            raise ValueError("root_order must be a positive integer")
        self.N = N
        if _clean:
            terms = {e: c for e, c in terms.items() if c}
        self.terms = terms

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, N=1):
        return cls(N, {}, _clean=False)

    @classmethod
    def const(cls, c, N=1):
        return cls(N, {0: c} if c else {}, _clean=False)

    @classmethod
    def one(cls, N=1):
        return cls(N, {0: 1}, _clean=False)

    @classmethod
    def u_power(cls, e, N=1, coeff=1):
        """coeff * u^e with e in units of 1/N."""
        return cls(N, {e: coeff} if coeff else {}, _clean=False)

    @classmethod
    def q_power(cls, k, N=1, coeff=1):
        """coeff * q^k (k integer)."""
        return cls(N, {k * N: coeff} if coeff else {}, _clean=False)

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {0: 1}

    def min_exp(self):
        return min(self.terms)

    def max_exp(self):
        return max(self.terms)

    def _chk(self, other):
        if self.N != other.N:
            raise ValueError(f"root_order mismatch: {self.N} != {other.N}")

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        self._chk(other)
        return LaurentPoly(self.N, add_terms(self.terms, other.terms), _clean=False)

    def __sub__(self, other):
        self._chk(other)
        return LaurentPoly(self.N, sub_terms(self.terms, other.terms), _clean=False)

    def __neg__(self):
        return LaurentPoly(self.N, {e: -c for e, c in self.terms.items()}, _clean=False)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly.zero(self.N)
            return LaurentPoly(
                self.N, scale_shift_terms(self.terms, other, 0), _clean=False
            )
        self._chk(other)
        return LaurentPoly(self.N, mul_terms(self.terms, other.terms), _clean=False)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power on a polynomial; use LaurentFraction")
        r = LaurentPoly.one(self.N)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def shift(self, e):
        """Multiply by u^e."""
        if not self.terms:
            return self
        return LaurentPoly(self.N, scale_shift_terms(self.terms, 1, e), _clean=False)

    def bar(self):
        """The bar involution q -> q^{-1} (u -> u^{-1})."""
        return LaurentPoly(self.N, {-e: c for e, c in self.terms.items()}, _clean=False)

    def content(self):
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    def __hash__(self):
        return hash((self.N, frozenset(self.terms.items())))

    # -- division -----------------------------------------------------

    def divmod_exact(self, other):
        """Division in ZZ[u, u^-1]; returns (quotient, remainder).

        The quotient is exact Laurent division by the u-shifted ordinary
        polynomial; a nonzero remainder or a non-integer coefficient is
        reported via the remainder slot (remainder None means "does not
        divide over ZZ").
        """
        self._chk(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return LaurentPoly.zero(self.N), LaurentPoly.zero(self.N)
        a_lo, b_lo = self.min_exp(), other.min_exp()
        a = _dense(self.terms, a_lo, self.max_exp())
        b = _dense(other.terms, b_lo, other.max_exp())
        q, r = _dense_divmod(a, b)
        if q is None:
            return None, None
        quot = LaurentPoly(
            self.N, {i + a_lo - b_lo: c for i, c in enumerate(q) if c}, _clean=False
        )
        rem = LaurentPoly(self.N, {i + a_lo: c for i, c in enumerate(r) if c}, _clean=False)
        return quot, rem

    def divexact(self, other):
        q, r = self.divmod_exact(other)
        assert q is not None and r is not None and r.is_zero(), (
            "exact division failed: remainder is nonzero"
        )
        return q

    # -- evaluation and display ----------------------------------------

    def specialize(self, u0):
        """Exact evaluation at u = u0 (a Fraction or int)."""
        u0 = Fraction(u0)
        if u0 == 0:
            raise ValueError("u0 must be nonzero")
        val = Fraction(0)
        for e, c in self.terms.items():
            val += c * u0**e
        return val

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            parts.append(_term_str(c, e, self.N, first=not parts))
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly(N={self.N}, {self})"


def _dense(terms, lo, hi):
    a = [0] * (hi - lo + 1)
    for e, c in terms.items():
        a[e - lo] = c
    return a


def _dense_divmod(a, b):
    """Long division of int lists (index = degree, low first), returning
    integer lists; (None, None) if the division leaves ZZ at any step."""
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        if not r[i]:
            continue
        f, rem = divmod(r[i], lead)
        if rem:
            return None, None
        q[i - db] = f
        for j in range(db + 1):
            r[i - db + j] -= f * b[j]
    while r and not r[-1]:
        r.pop()
    return q, r


def _poly_gcd_dense(a, b):
    """gcd of two int lists (primitive PRS), returned primitive with
    positive leading coefficient."""

    def prim(p):
        while p and not p[-1]:
            p.pop()
        if not p:
            return p
        g = 0
        for c in p:
            g = gcd(g, c)
        if p[-1] < 0:
            g = -g
        return [c // g for c in p]

    a, b = prim(list(a)), prim(list(b))
    if not a:
        return b
    if not b:
        return a
    while b:
        # pseudo-remainder of a by b
        da, db = len(a) - 1, len(b) - 1
        if da < db:
            a, b = b, a
            continue
        lead = b[-1]
        r = [c * lead ** (da - db + 1) for c in a]
        for i in range(da, db - 1, -1):
            if not r[i]:
                continue
            f, rem = divmod(r[i], b[-1])
            assert not rem
            for j in range(db + 1):
                r[i - db + j] -= f * b[j]
        a, b = b, prim(r)
    return a


def _term_str(c, e, N, first):
    if first:
        sign = "-" if c < 0 else ""
    else:
        sign = " - " if c < 0 else " + "
    c = abs(c)
    if e == 0:
        return f"{sign}{c}"
    g = gcd(e, N)
    num, den = e // g, N // g
    name = f"q^{num}" if den == 1 else f"q^({num}/{den})"
    if num == 1 and den == 1:
        name = "q"
    return f"{sign}{name}" if c == 1 else f"{sign}{c}*{name}"


class LaurentFraction:
    """Element of the fraction field of ZZ[u, u^-1], kept canonical:
    numerator and denominator reduced by content and polynomial gcd,
    denominator's lowest exponent 0 with positive coefficient there."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _canonical=False):
        if den is None:
            den = LaurentPoly.one(num.N)
        if num.N != den.N:
            raise ValueError("root_order mismatch in fraction")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _canonical:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p):
        return cls(p, LaurentPoly.one(p.N), _canonical=True)

    @classmethod
    def zero(cls, N=1):
        return cls.from_poly(LaurentPoly.zero(N))

    @classmethod
    def one(cls, N=1):
        return cls.from_poly(LaurentPoly.one(N))

    @property
    def N(self):
        return self.num.N

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_integral(self):
        return self.den.is_one()

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            other = LaurentFraction.from_poly(other)
        if self.den.is_one() and other.den.is_one():
            return LaurentFraction.from_poly(self.num + other.num)
        return LaurentFraction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentFraction(-self.num, self.den, _canonical=True)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            other = LaurentFraction.from_poly(other)
        if self.den.is_one() and other.den.is_one():
            return LaurentFraction.from_poly(self.num * other.num)
        return LaurentFraction(self.num * other.num, self.den * other.den)

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverting zero")
        return LaurentFraction(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def bar(self):
        return LaurentFraction(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            other = LaurentFraction.from_poly(other)
        if not isinstance(other, LaurentFraction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def specialize(self, u0):
        d = self.den.specialize(u0)
        if d == 0:
            raise UnluckySpecialization(f"denominator vanishes at u0={u0}")
        return self.num.specialize(u0) / d

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"LaurentFraction(N={self.N}, {self})"


class UnluckySpecialization(ValueError):
    """Denominator vanished at the chosen point; retry with another u0."""


def _reduce(num, den):
    N = num.N
    if num.is_zero():
        return num, LaurentPoly.one(N)
    a_lo, b_lo = num.min_exp(), den.min_exp()
    a = _dense(num.terms, a_lo, num.max_exp())
    b = _dense(den.terms, b_lo, den.max_exp())
    g = _poly_gcd_dense(a, b)
    if len(g) > 1:
        qa, ra = _dense_divmod(a, g)
        qb, rb = _dense_divmod(b, g)
        assert not ra and not rb, "gcd does not divide"
        a, b = qa, qb
    ca = 0
    for c in a:
        ca = gcd(ca, c)
    cb = 0
    for c in b:
        cb = gcd(cb, c)
    c = gcd(ca, cb)
    # sign: lowest-exponent denominator coefficient positive
    lead = next(x for x in b if x)
    if lead < 0:
        c = -c
    a = [x // c for x in a]
    b = [x // c for x in b]
    # renormalize the denominator's lowest exponent to 0
    lo_b = next(i for i, x in enumerate(b) if x)
    num = LaurentPoly(N, {i + a_lo - b_lo - lo_b: x for i, x in enumerate(a) if x}, _clean=False)
    den = LaurentPoly(N, {i - lo_b: x for i, x in enumerate(b) if x}, _clean=False)
    return num, den


# -- quantum combinatorics ---------------------------------------------


def qint(s, N=1):
    """Quantum integer [s] = (q^s - q^-s)/(q - q^-1)."""
    if s == 0:
        return LaurentPoly.zero(N)
    sign = 1
    if s < 0:
        s, sign = -s, -1
    terms = {(s - 1 - 2 * i) * N: sign for i in range(s)}
    return LaurentPoly(N, terms, _clean=False)


def qfact(t, N=1):
    """Quantum factorial [t]! = [t][t-1]...[1]."""
    if t < 0:
        raise ValueError("qfact of a negative integer")
    r = LaurentPoly.one(N)
    for s in range(2, t + 1):
        r = r * qint(s, N)
    return r


def qbinom(s, t, N=1):
    """Quantum binomial [s; t] = [s][s-1]...[s-t+1] / [t]!."""
    if t < 0:
        raise ValueError("qbinom with negative lower index")
    num = LaurentPoly.one(N)
    for i in range(t):
        num = num * qint(s - i, N)
    return num.divexact(qfact(t, N))


def qtrinom(a, b, c, N=1):
    """Quantum trinomial [a; b, c] = [a][a-1]...[a-b-c+1] / ([b]! [c]!)."""
    if b < 0 or c < 0:
        raise ValueError("qtrinom with negative lower index")
    num = LaurentPoly.one(N)
    for i in range(b + c):
        num = num * qint(a - i, N)
    return num.divexact(qfact(b, N) * qfact(c, N))
