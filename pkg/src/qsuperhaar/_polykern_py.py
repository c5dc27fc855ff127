"""Pure-Python dense integer polynomial kernels.

A polynomial is a tuple of ints, lowest degree first, with no trailing
zeros.  The zero polynomial is ``()``.  The compiled module ``_polykern``
exposes the same functions; ``qsuperhaar._kernel`` picks one at import.
"""
from math import gcd as _igcd


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def psub(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] -= c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def pneg(a):
    return tuple(-c for c in a)


def pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(x * c for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(x * c for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def pshift(a, k):
    """Multiply by p**k, k >= 0."""
    if not a or k == 0:
        return a
    return (0,) * k + tuple(a)


def pcontent(a):
    g = 0
    for c in a:
        g = _igcd(g, c)
        if g == 1:
            break
    return g


def pdivexact(a, b):
    """Exact quotient a / b in Z[p]; raises ArithmeticError otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    db = len(b) - 1
    if db == 0:
        c = b[0]
        out = []
        for x in a:
            qv, r = divmod(x, c)
            if r:
                raise ArithmeticError("inexact division")
            out.append(qv)
        return tuple(out)
    rem = list(a)
    lb = b[-1]
    nq = len(a) - db
    if nq <= 0:
        raise ArithmeticError("inexact division")
    quo = [0] * nq
    for k in range(nq - 1, -1, -1):
        x = rem[k + db]
        if x:
            qv, r = divmod(x, lb)
            if r:
                raise ArithmeticError("inexact division")
            quo[k] = qv
            for j in range(db + 1):
                rem[k + j] -= qv * b[j]
    for x in rem:
        if x:
            raise ArithmeticError("inexact division")
    return tuple(quo)


def _prem(a, b):
    """Pseudo-remainder of a by b (deg a >= deg b)."""
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(rem) - 1 >= db and rem:
        x = rem[-1]
        shift = len(rem) - 1 - db
        rem = [c * lb for c in rem]
        for j in range(db + 1):
            rem[shift + j] -= x * b[j]
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def _primitive(a):
    c = pcontent(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return tuple(a)
    return tuple(x // c for x in a)


def pgcd(a, b):
    """Greatest common divisor in Z[p] with positive leading coefficient."""
    if not a:
        return _primitive(b) if len(b) > 1 else ((abs(b[0]),) if b else ())
    if not b:
        return _primitive(a) if len(a) > 1 else (abs(a[0]),)
    ca, cb = pcontent(a), pcontent(b)
    c = _igcd(ca, cb)
    if len(a) == 1 or len(b) == 1:
        return (c,)
    a = _primitive(a)
    b = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = _prem(a, b)
        if not r:
            g = b
            break
        if len(r) == 1:
            return (c,)
        a, b = b, _primitive(r)
    g = _primitive(g)
    if c != 1:
        g = tuple(x * c for x in g)
    return g
