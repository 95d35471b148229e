"""
Exact arithmetic in cyclotomic fields Q(zeta_n).

An element of Q(zeta_n) is stored as its coordinate vector in the power basis
1, x, ..., x^(phi(n)-1) of Q[x]/Phi_n(x), where x stands for
zeta_n = exp(2 pi i / n).  Complex conjugation is the Galois automorphism
x -> x^(n-1).  Elements of different orders are combined in Q(zeta_lcm).
"""

import os
import re
from functools import lru_cache
from math import gcd

from gmpy2 import mpq
from mpmath import iv

from .errors import NotReal, ParseError, PrecisionExhausted

__all__ = [
    "Scalar",
    "cyclotomic_polynomial",
    "scalar_conj",
    "scalar_sign",
    "as_scalar",
    "parse_scalar",
    "scalar_text",
    "ZERO",
    "ONE",
    "DEFAULT_SIGN_CAP",
]

DEFAULT_SIGN_CAP = 64

_ZQ = mpq(0)
_ONEQ = mpq(1)


def _lcm(a, b):
    return a * b // gcd(a, b)


def _poly_divmod(num, den):
    """Exact division of integer/rational polynomials (lowest degree first)."""
    num = list(num)
    out = [_ZQ] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        q = num[k + len(den) - 1] / lead
        out[k] = q
        if q:
            for j, d in enumerate(den):
                num[k + j] -= q * d
    return out, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of Phi_n, lowest degree first, as a tuple of mpq."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [mpq(-1)] + [_ZQ] * (n - 1) + [_ONEQ]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem), (n, d)
    return tuple(poly)


class _Field:
    """Precomputed tables for Q(zeta_n)."""

    def __init__(self, n):
        self.n = n
        phi = cyclotomic_polynomial(n)
        self.degree = deg = len(phi) - 1
        # x^k mod Phi_n for 0 <= k < max(2*deg - 1, n)
        top = max(2 * deg - 1, n)
        red = []
        cur = [_ONEQ] + [_ZQ] * (deg - 1)
        for _ in range(top):
            red.append(tuple(cur))
            # multiply by x
            carry = cur[-1]
            nxt = [_ZQ] + cur[:-1]
            if carry:
                for j in range(deg):
                    nxt[j] -= carry * phi[j]
            cur = nxt
        self.powers = red
        # conjugation: x^k -> x^(k*(n-1) mod n)
        self.conj_images = tuple(red[(k * (n - 1)) % n] for k in range(deg))
        self.zero = (_ZQ,) * deg
        self.one = (_ONEQ,) + (_ZQ,) * (deg - 1)

    def mul(self, a, b):
        deg = self.degree
        if deg == 1:
            return (a[0] * b[0],)
        prod = [_ZQ] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:deg]
        powers = self.powers
        for k in range(deg, 2 * deg - 1):
            ck = prod[k]
            if ck:
                pk = powers[k]
                for j in range(deg):
                    if pk[j]:
                        out[j] += ck * pk[j]
        return tuple(out)

    def conj(self, a):
        if self.n <= 2:
            return a
        out = [_ZQ] * self.degree
        for k, ck in enumerate(a):
            if ck:
                img = self.conj_images[k]
                for j in range(self.degree):
                    if img[j]:
                        out[j] += ck * img[j]
        return tuple(out)

    def inv(self, a):
        deg = self.degree
        if deg == 1:
            return (_ONEQ / a[0],)
        # columns of the multiplication-by-a matrix, then solve M y = 1
        cols = []
        for k in range(deg):
            cols.append(self.mul(a, self.powers[k]))
        rows = [[cols[c][r] for c in range(deg)] + [self.one[r]] for r in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if rows[r][c])
            rows[c], rows[piv] = rows[piv], rows[c]
            p = rows[c][c]
            rows[c] = [v / p for v in rows[c]]
            for r in range(deg):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        return tuple(rows[r][deg] for r in range(deg))

    @lru_cache(maxsize=None)
    def lift_table(self, m):
        """Images of the basis x_n^k inside Q(zeta_m), m a multiple of n."""
        target = field(m)
        step = m // self.n
        return tuple(target.powers[(k * step) % m] for k in range(self.degree))


@lru_cache(maxsize=None)
def field(n):
    return _Field(n)


def _coerce_q(v):
    if isinstance(v, str):
        return mpq(v)
    return mpq(v)


class Scalar:
    """Immutable element of a cyclotomic field."""

    __slots__ = ("n", "c")

    def __init__(self, n, coeffs):
        n = int(n)
        f = field(n)
        coeffs = [_coerce_q(v) for v in coeffs]
        if len(coeffs) < f.degree:
            coeffs += [_ZQ] * (f.degree - len(coeffs))
        elif len(coeffs) > f.degree:
            # reduce a longer polynomial modulo Phi_n
            out = coeffs[: f.degree]
            for k in range(f.degree, len(coeffs)):
                if coeffs[k]:
                    pk = f.powers[k % n] if k >= len(f.powers) else f.powers[k]
                    for j in range(f.degree):
                        out[j] += coeffs[k] * pk[j]
            coeffs = out
        self.n = n
        self.c = tuple(coeffs)

    @classmethod
    def _raw(cls, n, c):
        s = object.__new__(cls)
        s.n = n
        s.c = c
        return s

    @classmethod
    def rational(cls, value, n=1):
        f = field(n)
        return cls._raw(n, (_coerce_q(value),) + (_ZQ,) * (f.degree - 1))

    @classmethod
    def zeta(cls, n, k=1):
        """The root of unity zeta_n^k."""
        f = field(n)
        return cls._raw(n, f.powers[k % n])

    @classmethod
    def i(cls):
        return cls.zeta(4)

    # -- coercion ---------------------------------------------------------

    def lift(self, m):
        """Re-express this element inside Q(zeta_m); n must divide m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot lift order {self.n} into order {m}")
        target = field(m)
        if self.is_rational():
            return Scalar._raw(m, (self.c[0],) + (_ZQ,) * (target.degree - 1))
        table = field(self.n).lift_table(m)
        out = [_ZQ] * target.degree
        for k, ck in enumerate(self.c):
            if ck:
                img = table[k]
                for j in range(target.degree):
                    if img[j]:
                        out[j] += ck * img[j]
        return Scalar._raw(m, tuple(out))

    def _pair(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other, self.n)
        if other.n == self.n:
            return self.n, self.c, other.c
        m = _lcm(self.n, other.n)
        return m, self.lift(m).c, other.lift(m).c

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Scalar) and other.n == self.n:
            if len(self.c) == 1:
                return Scalar._raw(self.n, (self.c[0] + other.c[0],))
            return Scalar._raw(self.n, tuple(a + b for a, b in zip(self.c, other.c)))
        n, a, b = self._pair(other)
        return Scalar._raw(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.n, tuple(-a for a in self.c))

    def __sub__(self, other):
        if isinstance(other, Scalar) and other.n == self.n:
            if len(self.c) == 1:
                return Scalar._raw(self.n, (self.c[0] - other.c[0],))
            return Scalar._raw(self.n, tuple(a - b for a, b in zip(self.c, other.c)))
        n, a, b = self._pair(other)
        return Scalar._raw(n, tuple(x - y for x, y in zip(a, b)))

    def __rsub__(self, other):
        return as_scalar(other, self.n) - self

    def __mul__(self, other):
        if isinstance(other, Scalar) and other.n == self.n:
            if len(self.c) == 1:
                return Scalar._raw(self.n, (self.c[0] * other.c[0],))
            return Scalar._raw(self.n, field(self.n).mul(self.c, other.c))
        n, a, b = self._pair(other)
        return Scalar._raw(n, field(n).mul(a, b))

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar._raw(self.n, field(self.n).inv(self.c))

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other, self.n)
        return self * other.inv()

    def __rtruediv__(self, other):
        return as_scalar(other, self.n) * self.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = Scalar.rational(1, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return Scalar._raw(self.n, field(self.n).conj(self.c))

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        for a in self.c:
            if a:
                return False
        return True

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        for a in self.c[1:]:
            if a:
                return False
        return True

    def is_real(self):
        return self.conj() == self

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.n == self.n:
                return self.c == other.c
        elif isinstance(other, (int, type(_ZQ))):
            return self.is_rational() and self.c[0] == other
        else:
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        _, a, b = self._pair(other)
        return a == b

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        # rational values hash identically at every order; irrational ones share a bucket
        if self.is_rational():
            return hash(self.c[0])
        return hash("hopfstar.irrational")

    # -- evaluation and text form ----------------------------------------

    def to_complex(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(a) * z**k for k, a in enumerate(self.c))

    def sign(self, cap=None):
        return scalar_sign(self, cap)

    def __str__(self):
        return "cyclo(%d)[%s]" % (self.n, ", ".join(_fmt_q(a) for a in self.c))

    def __repr__(self):
        return "Scalar(%s)" % self

    @classmethod
    def parse(cls, text):
        return parse_scalar(text)


def _fmt_q(q):
    return str(q)


def scalar_text(s):
    """Canonical text: bare p/q for rationals, cyclo(n)[...] otherwise."""
    if s.is_rational():
        return _fmt_q(s.c[0])
    return str(s)


_SCALAR_RE = re.compile(r"^\s*cyclo\(\s*(\d+)\s*\)\s*\[(.*)\]\s*$")
_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def parse_scalar(text):
    """Parse ``cyclo(n)[c0, c1, ...]``; a bare ``p/q`` is read as a rational."""
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {type(text).__name__}")
    m = _SCALAR_RE.match(text)
    if m is None:
        if _RATIONAL_RE.match(text):
            return Scalar.rational(_parse_q(text))
        raise ParseError(f"malformed scalar {text!r}")
    n = int(m.group(1))
    if n < 1:
        raise ParseError(f"cyclotomic order must be positive in {text!r}")
    body = m.group(2).strip()
    parts = [p for p in body.split(",")] if body else []
    coeffs = []
    for p in parts:
        if not _RATIONAL_RE.match(p):
            raise ParseError(f"malformed rational {p.strip()!r} in {text!r}")
        coeffs.append(_parse_q(p))
    deg = field(n).degree
    if len(coeffs) != deg:
        raise ParseError(f"{text!r}: order {n} needs {deg} coefficients, got {len(coeffs)}")
    return Scalar._raw(n, tuple(coeffs))


def _parse_q(text):
    text = text.strip().replace(" ", "")
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return mpq(int(p), int(q))
    return mpq(int(text))


def as_scalar(value, n=1):
    """Coerce ints, rationals, strings and Scalars into a Scalar."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, (int, type(_ZQ))):
        return Scalar.rational(value, n)
    try:
        from fractions import Fraction

        if isinstance(value, Fraction):
            return Scalar.rational(mpq(value.numerator, value.denominator), n)
    except ImportError:  # pragma: no cover
        pass
    raise TypeError(f"cannot convert {type(value).__name__} to Scalar")


ZERO = Scalar.rational(0)
ONE = Scalar.rational(1)


def scalar_conj(s):
    return s.conj()


def _sign_cap():
    env = os.environ.get("HOPFSTAR_SIGN_CAP")
    if env:
        return int(env)
    return DEFAULT_SIGN_CAP


def scalar_sign(s, cap=None):
    """
    Exact sign of a conjugation-fixed scalar: returns "zero", "positive" or
    "negative".

    Zero is recognised from the reduced coordinates.  Otherwise the value is
    enclosed in an interval with dyadic-rational endpoints at increasing
    working precision until the interval excludes zero.
    """
    if cap is None:
        cap = _sign_cap()
    if s.conj() != s:
        raise NotReal(f"{s} is not fixed by complex conjugation")
    if s.is_zero():
        return "zero"
    if s.is_rational():
        return "positive" if s.c[0] > 0 else "negative"
    prec = 53
    saved = iv.prec
    try:
        for _ in range(cap):
            iv.prec = prec
            total = iv.mpf(0)
            for k, a in enumerate(s.c):
                if a:
                    term = iv.mpf(int(a.numerator)) / int(a.denominator)
                    if k:
                        term = term * iv.cos(2 * iv.pi * k / s.n)
                    total = total + term
            if total.a > 0:
                return "positive"
            if total.b < 0:
                return "negative"
            prec *= 2
    finally:
        iv.prec = saved
    raise PrecisionExhausted(f"could not separate {s} from zero within {cap} rounds")
