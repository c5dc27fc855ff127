"""Partitions, tableaux, permutations and the combinatorial scalars built on them.

Partitions are tuples of positive ints, weakly decreasing.  Cells are
``(row, col)`` pairs, 1-based; content is ``col - row``.  Permutations are
tuples of images ``(w(1), ..., w(n))`` and compose as functions:
``compose(u, v)(i) == u(v(i))``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from math import factorial, prod

from qsuperhaar.scalar import ONE, Scalar, q_int, q_power

# ------------------------------------------------------------ partitions


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple:
    """All partitions of n, largest first part first: 3 -> (3,), (2,1), (1,1,1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def normalize(parts) -> tuple:
    lam = tuple(int(x) for x in parts if x)
    if any(x < 0 for x in lam) or any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"not a partition: {list(parts)}")
    return lam


def conjugate(lam) -> tuple:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def cells(lam):
    return [(i + 1, j + 1) for i, row in enumerate(lam) for j in range(row)]


def hooks_and_contents(lam) -> list:
    """[(cell, hook, content)] in row-reading order."""
    conj = conjugate(lam)
    return [((i, j), lam[i - 1] + conj[j - 1] - i - j + 1, j - i) for (i, j) in cells(lam)]


def d_lambda(lam) -> int:
    n = sum(lam)
    return factorial(n) // prod(h for _, h, _ in hooks_and_contents(lam))


def n_of(lam) -> int:
    return sum(part * i for i, part in enumerate(lam))


@lru_cache(maxsize=None)
def k_lambda(lam) -> Scalar:
    out = q_power(n_of(lam))
    for _, h, _ in hooks_and_contents(lam):
        out = out / q_int(h)
    return out


def gamma_set(r: int, s: int, n: int) -> list:
    """Partitions of n with lambda_{r+1} <= s."""
    return [lam for lam in partitions_of(n) if (lam[r] if len(lam) > r else 0) <= s]


def contains_rectangle(lam, r: int, s: int) -> bool:
    if r == 0 or s == 0:
        return True
    return len(lam) >= r and lam[r - 1] >= s


def omega_set(r: int, s: int, n: int) -> list:
    """Members of gamma_set(r, s, n) whose diagram contains the r x s rectangle."""
    return [lam for lam in gamma_set(r, s, n) if contains_rectangle(lam, r, s)]


def hook_decomposition(lam, r: int, s: int):
    """lam = (s^r) + mu u nu' ; returns (mu, nu)."""
    if not contains_rectangle(lam, r, s) or (len(lam) > r and lam[r] > s):
        raise ValueError(f"{list(lam)} is not in the ({r},{s}) hook with full rectangle")
    mu = tuple(x - s for x in lam[:r] if x - s > 0)
    nu = conjugate(lam[r:])
    return mu, nu


def compose_hook(mu, nu, r: int, s: int) -> tuple:
    top = [s + (mu[i] if i < len(mu) else 0) for i in range(r)]
    return normalize(top + list(conjugate(nu)))


@lru_cache(maxsize=None)
def p_lambda(lam, r: int, s: int) -> Scalar:
    out = ONE
    num = q_power(r - s)
    for (i, j), _, c in hooks_and_contents(lam):
        if i <= r and j <= s:
            continue
        den = q_int(c + r - s)
        if den.is_zero():
            raise ArithmeticError(f"p_lambda denominator vanishes for {list(lam)} at cell {(i, j)}")
        out = out * num / den
    return out


# ------------------------------------------------------------ tableaux


@lru_cache(maxsize=None)
def standard_tableaux(lam) -> tuple:
    """All SYT of shape lam as tuples of rows; entries placed 1..n, upper rows first."""
    lam = tuple(lam)
    n = sum(lam)
    out = []

    def grow(rows, m):
        if m > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(lam)):
            filled = len(rows[i])
            if filled < lam[i] and (i == 0 or len(rows[i - 1]) > filled):
                rows[i].append(m)
                grow(rows, m + 1)
                rows[i].pop()

    grow([[] for _ in lam], 1)
    return tuple(out)


def tableau_shape(t) -> tuple:
    return tuple(len(row) for row in t)


def tableau_content(t, m: int) -> int:
    for i, row in enumerate(t):
        for j, x in enumerate(row):
            if x == m:
                return j - i
    raise ValueError(f"{m} not in tableau")


def content_vector(t) -> tuple:
    n = sum(len(row) for row in t)
    pos = {}
    for i, row in enumerate(t):
        for j, x in enumerate(row):
            pos[x] = j - i
    return tuple(pos[m] for m in range(1, n + 1))


def is_standard(t) -> bool:
    shape = tableau_shape(t)
    if normalize(shape) != shape:
        return False
    entries = sorted(x for row in t for x in row)
    if entries != list(range(1, len(entries) + 1)):
        return False
    for i, row in enumerate(t):
        if any(row[j] >= row[j + 1] for j in range(len(row) - 1)):
            return False
        if i and any(t[i - 1][j] >= row[j] for j in range(len(row))):
            return False
    return True


# ------------------------------------------------------------ permutations


def identity(n: int) -> tuple:
    return tuple(range(1, n + 1))


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple:
    return tuple(permutations(range(1, n + 1)))


def compose(u, v) -> tuple:
    return tuple(u[x - 1] for x in v)


def inverse(w) -> tuple:
    out = [0] * len(w)
    for i, x in enumerate(w):
        out[x - 1] = i + 1
    return tuple(out)


def length(w) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def transposition(a: int, b: int, n: int) -> tuple:
    w = list(range(1, n + 1))
    w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
    return tuple(w)


def simple(i: int, n: int) -> tuple:
    return transposition(i, i + 1, n)


@lru_cache(maxsize=None)
def reduced_word(w) -> tuple:
    """Letters i_1..i_k with w = s_{i_1} ... s_{i_k} and k = length(w)."""
    w = list(w)
    word = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]  # w <- w s_i
                word.append(i + 1)
                break
        else:
            break
    return tuple(reversed(word))


def from_word(word, n: int) -> tuple:
    w = identity(n)
    for i in word:
        w = compose(w, simple(i, n))
    return w
