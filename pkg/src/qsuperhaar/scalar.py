"""Exact rational functions in one indeterminate ``p`` (with ``q = p**2``).

A :class:`Scalar` is stored as ``p**val * num(p) / den(p)`` where ``num`` and
``den`` are integer polynomials (tuples, lowest degree first) with
``num(0) != 0``, ``den(0) != 0``, ``gcd(num, den) == 1`` in Z[p] and ``den``
having a positive leading coefficient.  That form is unique, so equality and
hashing are structural.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from qsuperhaar._kernel import padd, pdivexact, pgcd, pmul, pneg, pshift, trim

__all__ = ["Scalar", "ZERO", "ONE", "P", "Q", "q_int", "q_factorial", "q_power", "parse_scalar"]


def _lowstrip(a):
    k = 0
    while k < len(a) and a[k] == 0:
        k += 1
    return (a[k:], k) if k else (a, 0)


class Scalar:
    __slots__ = ("num", "val", "den", "_hash")

    def __init__(self, num=(), val=0, den=(1,), _canonical=False):
        if isinstance(num, int):
            num = (num,) if num else ()
        if _canonical:
            self.num, self.val, self.den = num, val, den
        else:
            self.num, self.val, self.den = _canon(tuple(num), val, tuple(den))
        self._hash = None

    # construction helpers
    @classmethod
    def from_int(cls, n: int) -> "Scalar":
        return cls((n,) if n else (), 0, (1,), _canonical=True)

    @classmethod
    def from_fraction(cls, f) -> "Scalar":
        f = Fraction(f)
        return cls((f.numerator,), 0, (f.denominator,))

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return cls.from_int(x)
        if isinstance(x, Fraction):
            return cls.from_fraction(x)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # predicates
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den == (1,)

    # arithmetic
    def __neg__(self):
        if not self.num:
            return self
        return Scalar(pneg(self.num), self.val, self.den, _canonical=True)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                other = Scalar.from_int(other)
            else:
                return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        va, vb = self.val, other.val
        v = min(va, vb)
        na = pshift(self.num, va - v)
        nb = pshift(other.num, vb - v)
        da, db = self.den, other.den
        if da == db:
            n = padd(na, nb)
            if not n:
                return ZERO
            if da == (1,):
                n, k = _lowstrip(n)
                return Scalar(n, v + k, da, _canonical=True)
            return Scalar(n, v, da)
        g = pgcd(da, db)
        if g == (1,):
            n = padd(pmul(na, db), pmul(nb, da))
            if not n:
                return ZERO
            n, k = _lowstrip(n)
            return Scalar(n, v + k, pmul(da, db), _canonical=True)
        da_g = pdivexact(da, g)
        db_g = pdivexact(db, g)
        n = padd(pmul(na, db_g), pmul(nb, da_g))
        if not n:
            return ZERO
        return Scalar(n, v, pmul(da_g, db))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                other = Scalar.from_int(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                if other == 0:
                    return ZERO
                if other == 1:
                    return self
                other = Scalar.from_int(other)
            else:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        v = self.val + other.val
        da, db = self.den, other.den
        if da == (1,) and db == (1,):
            return Scalar(pmul(self.num, other.num), v, da, _canonical=True)
        na, nb = self.num, other.num
        g1 = pgcd(na, db) if db != (1,) else (1,)
        g2 = pgcd(nb, da) if da != (1,) else (1,)
        if g1 != (1,):
            na, db = pdivexact(na, g1), pdivexact(db, g1)
        if g2 != (1,):
            nb, da = pdivexact(nb, g2), pdivexact(da, g2)
        n = pmul(na, nb)
        d = pmul(da, db)
        if d[-1] < 0:
            n, d = pneg(n), pneg(d)
        return Scalar(n, v, d, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("division by zero Scalar")
        n, d = self.den, self.num
        if d[-1] < 0:
            n, d = pneg(n), pneg(d)
        return Scalar(n, -self.val, d, _canonical=True)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                other = Scalar.from_int(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.val == other.val and self.den == other.den
        if isinstance(other, int):
            if other == 0:
                return not self.num
            return self.val == 0 and self.den == (1,) and self.num == (other,)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.val, self.den))
        return self._hash

    # evaluation / text
    def evaluate(self, p0) -> Fraction:
        """Specialize ``p`` to a rational value."""
        p0 = Fraction(p0)
        n = _peval(self.num, p0)
        d = _peval(self.den, p0)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at p={p0}")
        return n / d * p0 ** self.val

    def __str__(self):
        if not self.num:
            return "0"
        # negative p-powers go to the denominator: "(-1 + p^2)/(p^4)"
        top = max(self.val, 0)
        bot = max(-self.val, 0)
        ns = _laurent_str(self.num, top)
        if self.den == (1,) and bot == 0:
            return ns
        return f"({ns})/({_laurent_str(self.den, bot)})"

    def __repr__(self):
        return f"Scalar('{self}')"

    def __reduce__(self):
        return (parse_scalar, (str(self),))


def _peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _canon(num, val, den):
    num, den = trim(num), trim(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), 0, (1,)
    num, k = _lowstrip(num)
    val += k
    den, k = _lowstrip(den)
    val -= k
    if den != (1,):
        g = pgcd(num, den)
        if g != (1,):
            num, den = pdivexact(num, g), pdivexact(den, g)
        if den[-1] < 0:
            num, den = pneg(num), pneg(den)
    return num, val, den


def _laurent_str(coeffs, val):
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        e = i + val
        if e == 0:
            body = str(abs(c))
        else:
            mono = "p" if e == 1 else f"p^{e}"
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


ZERO = Scalar((), 0, (1,), _canonical=True)
ONE = Scalar((1,), 0, (1,), _canonical=True)
P = Scalar((1,), 1, (1,), _canonical=True)
Q = Scalar((1,), 2, (1,), _canonical=True)


@lru_cache(maxsize=None)
def q_power(k: int) -> Scalar:
    """q**k = p**(2k); k may be negative."""
    return Scalar((1,), 2 * k, (1,), _canonical=True)


@lru_cache(maxsize=None)
def q_int(k: int) -> Scalar:
    """[k]_q = (q**k - 1)/(q - 1), a Laurent polynomial for every integer k."""
    if k == 0:
        return ZERO
    if k > 0:
        return Scalar(tuple(1 if i % 2 == 0 else 0 for i in range(2 * k - 1)), 0, (1,), _canonical=True)
    # [-k]_q = -q^{-k} [k]_q
    m = -k
    return Scalar(tuple(-1 if i % 2 == 0 else 0 for i in range(2 * m - 1)), -2 * m, (1,), _canonical=True)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> Scalar:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = ONE
    for k in range(1, n + 1):
        out = out * q_int(k)
    return out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([pq]))")


def parse_scalar(text: str) -> Scalar:
    """Parse expressions such as ``"(-1 + p^2)/(p^4)"`` or ``"q^-1 - 2*p"``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r} at position {pos}")
        pos = m.end()
        num, op, var = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif op is not None:
            tokens.append(("op", "^" if op == "**" else op))
        else:
            tokens.append(("var", var))
        if pos < len(text) and text[pos:].strip() == "":
            break
    if not tokens:
        raise ValueError("empty scalar expression")
    parser = _Parser(tokens, text)
    value = parser.expr()
    if parser.i != len(tokens):
        raise ValueError(f"trailing input in scalar {text!r}")
    return value


class _Parser:
    def __init__(self, tokens, text):
        self.t = tokens
        self.i = 0
        self.text = text

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, e = self.take()
            if kind == "num":
                exp = e
            elif (kind, e) == ("op", "("):
                exp_s = self.expr()
                if self.take() != ("op", ")"):
                    raise ValueError(f"unbalanced parentheses in {self.text!r}")
                if not (exp_s.den == (1,) and exp_s.val == 0 and len(exp_s.num) <= 1):
                    raise ValueError("exponent must be an integer")
                exp = exp_s.num[0] if exp_s.num else 0
            else:
                raise ValueError(f"bad exponent in {self.text!r}")
            return base ** (sign * exp)
        return base

    def atom(self):
        kind, v = self.take()
        if kind == "num":
            return Scalar.from_int(v)
        if kind == "var":
            return P if v == "p" else Q
        if (kind, v) == ("op", "("):
            value = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {self.text!r}")
            return value
        raise ValueError(f"unexpected token {v!r} in {self.text!r}")
