"""Exact coefficient arithmetic in Z[q, q^-1] and Q(q).

Two representations:

  * LaurentPoly -- finitely supported map {exponent: rational}, the fast
    path.  Everything stays here while denominators are powers of q.
  * RatFunc -- num/den with integer-coefficient polynomials in q, reduced
    so that gcd(num, den) = 1 in Z[q] (contents included) and the leading
    coefficient of den is positive.  This canonical form makes == and
    hash structural.

No floats anywhere; rational coefficients use fractions.Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _intgcd


# ---------------------------------------------------------------------------
# raw dict helpers (hot path: coefficients are ints or Fractions, no zeros)

def _dict_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _dict_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _dict_scale(a, c, shift=0):
    if not c:
        return {}
    return {e + shift: ca * c for e, ca in a.items()}


def _norm_coeff(c):
    # keep ints as ints so the common all-integer case stays cheap
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LaurentPoly:
    """Laurent polynomial in q with rational coefficients."""

    __slots__ = ("_c", "_hash", "_rf")

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for e, c in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                c = _norm_coeff(c)
                if c:
                    d[int(e)] = d.get(int(e), 0) + c
        self._c = {e: c for e, c in d.items() if c}
        self._hash = None
        self._rf = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero():
        return LaurentPoly()

    @staticmethod
    def one():
        return LaurentPoly({0: 1})

    @staticmethod
    def q_power(k, coeff=1):
        return LaurentPoly({k: coeff})

    @staticmethod
    def const(c):
        return LaurentPoly({0: c})

    # -- inspection ----------------------------------------------------------

    def items(self):
        return self._c.items()

    def coeff(self, e):
        return self._c.get(e, 0)

    def is_zero(self):
        return not self._c

    def is_one(self):
        return self._c == {0: 1}

    def degree(self):
        """Largest exponent; raises on 0."""
        if not self._c:
            raise ValueError("degree of zero Laurent polynomial")
        return max(self._c)

    def valuation(self):
        if not self._c:
            raise ValueError("valuation of zero Laurent polynomial")
        return min(self._c)

    def is_monomial(self):
        return len(self._c) == 1

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce_laurent(other)
        if other is None:
            return NotImplemented
        if isinstance(other, RatFunc):
            return RatFunc.from_laurent(self) + other
        return LaurentPoly._raw(_dict_add(self._c, other._c))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        other = _coerce_laurent(other)
        if other is None:
            return NotImplemented
        if isinstance(other, RatFunc):
            return RatFunc.from_laurent(self) - other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_laurent(other)
        if other is None:
            return NotImplemented
        if isinstance(other, RatFunc):
            return RatFunc.from_laurent(self) * other
        return LaurentPoly._raw(_dict_mul(self._c, other._c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly) and other.is_monomial():
            ((e, c),) = other._c.items()
            inv = Fraction(1, 1) / c
            return LaurentPoly._raw(
                {ee - e: _norm_coeff(ce * inv) for ee, ce in self._c.items()})
        q = RatFunc.from_laurent(self) / other
        lp = q.as_laurent()
        return lp if lp is not None else q

    def __rtruediv__(self, other):
        return _as_ratfunc(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RatFunc.from_laurent(self) ** n
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        """q -> q^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._c.items()})

    # -- structure -----------------------------------------------------------

    @staticmethod
    def _raw(d):
        p = LaurentPoly.__new__(LaurentPoly)
        p._c = d
        p._hash = None
        p._rf = None
        return p

    def __eq__(self, other):
        other = _coerce_laurent(other)
        if other is None:
            return NotImplemented
        if isinstance(other, RatFunc):
            return RatFunc.from_laurent(self) == other
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(
                (e, Fraction(c)) for e, c in self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({self!s})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            c = self._c[e]
            mono = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if c == 1 and e != 0:
                term = mono
            elif c == -1 and e != 0:
                term = "-" + mono
            elif e == 0:
                term = str(c)
            else:
                cs = str(c) if (not isinstance(c, Fraction) or c.denominator == 1) else f"({c})"
                term = f"{cs}*{mono}"
            if parts and not term.startswith("-"):
                parts.append("+ " + term)
            elif parts:
                parts.append("- " + term[1:])
            else:
                parts.append(term)
        return " ".join(parts)

    # -- wire format: sorted [exponent, numerator, denominator] triples ------

    def to_json(self):
        out = []
        for e in sorted(self._c):
            f = Fraction(self._c[e])
            out.append([e, f.numerator, f.denominator])
        return out

    @staticmethod
    def from_json(data):
        return LaurentPoly({int(e): Fraction(int(n), int(d)) for e, n, d in data})


# ---------------------------------------------------------------------------
# integer polynomials as coefficient tuples (index = degree, no trailing 0s)

def _pstrip(t):
    i = len(t)
    while i and t[i - 1] == 0:
        i -= 1
    return tuple(t[:i])


def _padd(a, b):
    n = max(len(a), len(b))
    return _pstrip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                    for i in range(n)])


def _pmul(a, b):
    la, lb = len(a), len(b)
    if not la or not lb:
        return ()
    if la == 1:
        ca = a[0]
        return b if ca == 1 else tuple(ca * cb for cb in b)
    if lb == 1:
        cb = b[0]
        return a if cb == 1 else tuple(ca * cb for ca in a)
    if la * lb <= 24:
        out = [0] * (la + lb - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return tuple(out)
    # Kronecker substitution: pack coefficients into one big integer per
    # operand so the convolution runs on C-level bigint multiplication.
    # B bounds the bit size of any product coefficient, so signed digits
    # stay below half the base and unpack uniquely.
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    B = ma.bit_length() + mb.bit_length() + min(la, lb).bit_length() + 1
    va = 0
    for c in reversed(a):
        va = (va << B) + c
    vb = 0
    for c in reversed(b):
        vb = (vb << B) + c
    v = va * vb
    base = 1 << B
    half = base >> 1
    mask = base - 1
    out = []
    for _ in range(la + lb - 1):
        d = v & mask
        if d >= half:
            d -= base
            v += base
        out.append(d)
        v >>= B
    return tuple(out)


def _pcontent(a):
    g = 0
    for c in a:
        g = _intgcd(g, abs(c))
    return g


def _pprim(a):
    g = _pcontent(a)
    if g in (0, 1):
        return a
    return tuple(c // g for c in a)


def _pdiv_exact(a, b):
    """Quotient a/b in Z[q], assuming divisibility (checked).

    When b | a in Z[q] the top-down synthetic division stays integral at
    every step, so this never needs rational arithmetic.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db, lb = len(b) - 1, b[-1]
    out = [0] * max(1, len(a) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        ri = rem[i]
        if ri:
            f, m = divmod(ri, lb)
            if m:
                raise ArithmeticError("inexact polynomial division")
            out[i - db] = f
            for j, cb in enumerate(b):
                rem[i - db + j] -= f * cb
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _pstrip(out)


def _pval(a):
    for i, c in enumerate(a):
        if c:
            return i
    return 0


def _pgcd(a, b):
    """gcd in Z[q] including integer content; result has positive lead."""
    if not a or not b:
        g = a or b
        if not g:
            return ()
        return tuple(-c for c in g) if g[-1] < 0 else g
    # split off the q-power and integer content common factors first:
    # gcd(q^va a', q^vb b') = q^min(va,vb) gcd(a', b')
    va, vb = _pval(a), _pval(b)
    shift = min(va, vb)
    if va:
        a = a[va:]
    if vb:
        b = b[vb:]
    ca, cb = _pcontent(a), _pcontent(b)
    cg = _intgcd(ca, cb)
    if len(a) == 1 or len(b) == 1:
        # a constant divides only through the content
        return (0,) * shift + (cg,)
    a, b = _pprim(a), _pprim(b)
    pre = (0,) * shift
    # primitive PRS; degrees here stay small
    while b:
        # pseudo-remainder of a by b
        da, db = len(a) - 1, len(b) - 1
        if da < db:
            a, b = b, a
            continue
        lb = b[-1]
        r = list(a)
        for i in range(da, db - 1, -1):
            if r[i]:
                f = r[i]
                for k in range(len(r)):
                    r[k] *= lb
                for j, cb2 in enumerate(b):
                    r[i - db + j] -= f * cb2
                # note: multiplying the whole remainder keeps everything in Z
        a, b = b, _pprim(_pstrip(r))
    g = a
    if g[-1] < 0:
        g = tuple(-c for c in g)
    if cg > 1:
        g = tuple(c * cg for c in g)
    return pre + g if pre else g


# reduced forms of (num, den) pairs; identical coefficient patterns recur
# constantly in structure constants, so this short-circuits most gcd work
_NORM_CACHE = {}
_NORM_CACHE_CAP = 1 << 21


class RatFunc:
    """Element of Q(q) in lowest terms over Z[q]."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num, den=(1,)):
        num = _pstrip(tuple(int(c) for c in num))
        den = _pstrip(tuple(int(c) for c in den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self._num, self._den = (), (1,)
        elif den == (1,):
            self._num, self._den = num, den
        else:
            hit = _NORM_CACHE.get((num, den))
            if hit is None:
                key = (num, den)
                g = _pgcd(num, den)
                if g != (1,):
                    num = _pdiv_exact(num, g)
                    den = _pdiv_exact(den, g)
                if den[-1] < 0:
                    num = tuple(-c for c in num)
                    den = tuple(-c for c in den)
                hit = (num, den)
                if len(_NORM_CACHE) >= _NORM_CACHE_CAP:
                    _NORM_CACHE.clear()
                _NORM_CACHE[key] = hit
            self._num, self._den = hit
        self._hash = None

    @staticmethod
    def _poly(num):
        """Internal: wrap an already-stripped integer tuple over den 1."""
        r = RatFunc.__new__(RatFunc)
        r._num, r._den, r._hash = num, (1,), None
        return r

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero():
        return RatFunc(())

    @staticmethod
    def one():
        return RatFunc((1,))

    @staticmethod
    def from_laurent(p):
        if isinstance(p, int):
            return RatFunc((p,))
        if isinstance(p, Fraction):
            return RatFunc((p.numerator,), (p.denominator,))
        if isinstance(p, RatFunc):
            return p
        if p._rf is not None:
            return p._rf
        if p.is_zero():
            return RatFunc(())
        val = min(0, p.valuation())
        deg = p.degree() - val
        denoms = [Fraction(c).denominator for c in p._c.values()]
        lcm = 1
        for d in denoms:
            lcm = lcm // _intgcd(lcm, d) * d
        num = [0] * (deg + 1)
        for e, c in p._c.items():
            f = Fraction(c) * lcm
            num[e - val] = int(f)
        den = [0] * (1 - val)
        den[-val] = lcm
        out = RatFunc(num, den)
        p._rf = out
        return out

    # -- inspection ----------------------------------------------------------

    @property
    def num(self):
        return self._num

    @property
    def den(self):
        return self._den

    def is_zero(self):
        return not self._num

    def is_one(self):
        return self._num == (1,) and self._den == (1,)

    def as_laurent(self):
        """LaurentPoly value when den is c*q^k, else None."""
        nz = [(i, c) for i, c in enumerate(self._den) if c]
        if len(nz) != 1:
            return None
        k, c = nz[0]
        return LaurentPoly(
            {i - k: _norm_coeff(Fraction(ci, c)) for i, ci in enumerate(self._num) if ci})

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        if self._den == other._den:
            if self._den == (1,):
                return RatFunc._poly(_padd(self._num, other._num))
            return RatFunc(_padd(self._num, other._num), self._den)
        return RatFunc(
            _padd(_pmul(self._num, other._den), _pmul(other._num, self._den)),
            _pmul(self._den, other._den))

    __radd__ = __add__

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r._num = tuple(-c for c in self._num)
        r._den = self._den
        r._hash = None
        return r

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        if self._den == (1,) and other._den == (1,):
            return RatFunc._poly(_pmul(self._num, other._num))
        return RatFunc(_pmul(self._num, other._num), _pmul(self._den, other._den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return RatFunc(_pmul(self._num, other._den), _pmul(self._den, other._num))

    def __rtruediv__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return other / self

    def inv(self):
        return RatFunc.one() / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        out = RatFunc.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        """q -> q^-1, renormalized."""
        dn = len(self._num) - 1 if self._num else 0
        dd = len(self._den) - 1
        num = tuple(reversed(self._num))
        den = tuple(reversed(self._den))
        if dd >= dn:
            num = _pmul(num, (0,) * (dd - dn) + (1,)) if dd > dn else num
        else:
            den = _pmul(den, (0,) * (dn - dd) + (1,))
        return RatFunc(num, den)

    # -- structure -----------------------------------------------------------

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __bool__(self):
        return bool(self._num)

    def __repr__(self):
        return f"RatFunc({self!s})"

    def __str__(self):
        def fmt(p):
            if not p:
                return "0"
            lp = LaurentPoly({i: c for i, c in enumerate(p) if c})
            return str(lp)
        if self._den == (1,):
            return fmt(self._num)
        return f"({fmt(self._num)})/({fmt(self._den)})"

    # -- wire format ----------------------------------------------------------

    def to_json(self):
        return {
            "num": [[i, c] for i, c in enumerate(self._num) if c],
            "den": [[i, c] for i, c in enumerate(self._den) if c],
        }

    @staticmethod
    def from_json(data):
        def unpack(pairs):
            if not pairs:
                return ()
            deg = max(i for i, _ in pairs)
            out = [0] * (deg + 1)
            for i, c in pairs:
                out[int(i)] = int(c)
            return tuple(out)
        return RatFunc(unpack(data["num"]), unpack(data["den"]))


def _coerce_laurent(x):
    if isinstance(x, (LaurentPoly, RatFunc)):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return None


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (LaurentPoly, int, Fraction)):
        return RatFunc.from_laurent(x)
    return None


# ---------------------------------------------------------------------------
# generic scalar helpers (Scalar = LaurentPoly | RatFunc)

def as_ratfunc(x):
    r = _as_ratfunc(x)
    if r is None:
        raise TypeError(f"not a scalar: {x!r}")
    return r


def simplify_scalar(x):
    """Prefer the LaurentPoly representation when exact."""
    if isinstance(x, RatFunc):
        lp = x.as_laurent()
        return lp if lp is not None else x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return x


def scalar_is_zero(x):
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


def bar_scalar(x):
    if isinstance(x, (int, Fraction)):
        return x
    return x.bar()


def scalar_to_json(x):
    """Uniform RatFunc wire encoding for any scalar."""
    return as_ratfunc(x).to_json()


# ---------------------------------------------------------------------------
# q-integers

def qint(n, d=1):
    """[n]_{q^d} = (q^{dn} - q^{-dn})/(q^d - q^{-d}); odd under n -> -n."""
    if n < 0:
        return -qint(-n, d)
    return LaurentPoly({d * (n - 1 - 2 * k): 1 for k in range(n)})


def qfactorial(n, d=1):
    if n < 0:
        raise ValueError("q-factorial of negative integer")
    out = LaurentPoly.one()
    for k in range(2, n + 1):
        out = out * qint(k, d)
    return out


def qbinom(m, n, d=1):
    """Gaussian binomial [m choose n]_{q^d}; zero when n < 0 or n > m >= 0."""
    if n < 0 or (m >= 0 and n > m):
        return LaurentPoly.zero()
    if m < 0:
        # [m, n] with m < 0 expands via [m] = -[-m]; not needed downstream
        raise ValueError("negative upper argument")
    num = RatFunc.one()
    for k in range(n):
        num = num * RatFunc.from_laurent(qint(m - k, d))
    num = num / RatFunc.from_laurent(qfactorial(n, d))
    lp = num.as_laurent()
    if lp is None:
        raise ArithmeticError("Gaussian binomial did not reduce to Laurent form")
    return lp
