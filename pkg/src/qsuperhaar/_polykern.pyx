# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled dense integer polynomial kernels (same API as _polykern_py)."""
from math import gcd as _igcd
from cpython.mem cimport PyMem_Malloc, PyMem_Free

cdef long long _SMALL = 1LL << 30


cdef inline bint _all_small(tuple a):
    cdef object x
    for x in a:
        if x >= _SMALL or x <= -_SMALL:
            return False
    return True


def trim(a):
    a = list(a)
    while a and a[len(a) - 1] == 0:
        a.pop()
    return tuple(a)


def padd(tuple a, tuple b):
    cdef Py_ssize_t i
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    for i in range(len(b)):
        out[i] = out[i] + b[i]
    while out and out[len(out) - 1] == 0:
        out.pop()
    return tuple(out)


def psub(tuple a, tuple b):
    cdef Py_ssize_t i, n = max(len(a), len(b))
    cdef list out = [0] * n
    for i in range(len(a)):
        out[i] = a[i]
    for i in range(len(b)):
        out[i] = out[i] - b[i]
    while out and out[len(out) - 1] == 0:
        out.pop()
    return tuple(out)


def pneg(tuple a):
    return tuple([-c for c in a])


def pscale(tuple a, c):
    if c == 0:
        return ()
    return tuple([x * c for x in a])


def pmul(tuple a, tuple b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef long long x
    cdef long long *buf
    cdef list out
    if na == 0 or nb == 0:
        return ()
    if na == 1:
        c = a[0]
        return tuple([y * c for y in b])
    if nb == 1:
        c = b[0]
        return tuple([y * c for y in a])
    if na <= 64 and nb <= 64 and _all_small(a) and _all_small(b):
        # |x*y| < 2**60 and at most 64 terms per coefficient: no overflow
        buf = <long long *> PyMem_Malloc((na + nb - 1) * sizeof(long long))
        for i in range(na + nb - 1):
            buf[i] = 0
        for i in range(na):
            x = a[i]
            if x:
                for j in range(nb):
                    buf[i + j] += x * <long long> b[j]
        out = [buf[i] for i in range(na + nb - 1)]
        PyMem_Free(buf)
        return tuple(out)
    out = [0] * (na + nb - 1)
    for i in range(na):
        xo = a[i]
        if xo:
            for j in range(nb):
                out[i + j] += xo * b[j]
    return tuple(out)


def pshift(tuple a, Py_ssize_t k):
    if not a or k == 0:
        return a
    return (0,) * k + a


def pcontent(tuple a):
    g = 0
    for c in a:
        g = _igcd(g, c)
        if g == 1:
            break
    return g


def pdivexact(tuple a, tuple b):
    cdef Py_ssize_t db, nq, k, j
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
    cdef list rem = list(a)
    lb = b[db]
    nq = len(a) - db
    if nq <= 0:
        raise ArithmeticError("inexact division")
    cdef list quo = [0] * nq
    for k in range(nq - 1, -1, -1):
        x = rem[k + db]
        if x:
            qv, r = divmod(x, lb)
            if r:
                raise ArithmeticError("inexact division")
            quo[k] = qv
            for j in range(db + 1):
                rem[k + j] = rem[k + j] - qv * b[j]
    for x in rem:
        if x:
            raise ArithmeticError("inexact division")
    return tuple(quo)


cdef list _prem(tuple a, tuple b):
    cdef list rem = list(a)
    cdef Py_ssize_t db = len(b) - 1, shift, j
    lb = b[db]
    while rem and len(rem) - 1 >= db:
        x = rem[len(rem) - 1]
        shift = len(rem) - 1 - db
        rem = [c * lb for c in rem]
        for j in range(db + 1):
            rem[shift + j] = rem[shift + j] - x * b[j]
        while rem and rem[len(rem) - 1] == 0:
            rem.pop()
    return rem


cdef tuple _primitive(a):
    c = pcontent(tuple(a))
    if a[len(a) - 1] < 0:
        c = -c
    if c == 1:
        return tuple(a)
    return tuple([x // c for x in a])


def pgcd(tuple a, tuple b):
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
        g = tuple([x * c for x in g])
    return g
