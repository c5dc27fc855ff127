"""Iwahori-Hecke algebra H_n in the T-basis and its R-matrix representation."""
from __future__ import annotations

from functools import lru_cache

from qsuperhaar import combinatorics as cb
from qsuperhaar.scalar import ONE, Q, ZERO, Scalar, parse_scalar, q_factorial, q_int, q_power
from qsuperhaar.superlinalg import SMatrix, ctrace_last, kron, matsum


class HeckeElement:
    """Finite sum of T_w over S_n; ``coords`` maps permutation tuples to nonzero Scalars."""

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords=None):
        self.n = n
        self.coords = {w: c for w, c in (coords or {}).items() if not c.is_zero()}

    @classmethod
    def basis(cls, w, coef: Scalar = ONE):
        return cls(len(w), {tuple(w): coef})

    @classmethod
    def one(cls, n: int):
        return cls.basis(cb.identity(n))

    @classmethod
    def zero(cls, n: int):
        return cls(n)

    @classmethod
    def T(cls, i: int, n: int):
        return cls.basis(cb.simple(i, n))

    def is_zero(self) -> bool:
        return not self.coords

    def coef(self, w) -> Scalar:
        return self.coords.get(tuple(w), ZERO)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self.coords == other.coords

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = HeckeElement.one(self.n).scale(other)
        _same_degree(self, other)
        out = dict(self.coords)
        for w, c in other.coords.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement(self.n, {w: -c for w, c in self.coords.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = HeckeElement.one(self.n).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "HeckeElement":
        s = Scalar.coerce(s)
        return HeckeElement(self.n, {w: c * s for w, c in self.coords.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return t_mul(self, other)
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def extend(self, n: int) -> "HeckeElement":
        """Image under H_m -> H_n, T_w -> T_{w x id}."""
        pad = tuple(range(self.n + 1, n + 1))
        return HeckeElement(n, {w + pad: c for w, c in self.coords.items()})

    def to_json(self) -> list:
        return [{"perm": list(w), "coef": str(c)} for w, c in sorted(self.coords.items())]

    @classmethod
    def from_json(cls, items, n: int | None = None):
        coords = {}
        for item in items:
            w = tuple(int(x) for x in item["perm"])
            if sorted(w) != list(range(1, len(w) + 1)):
                raise ValueError(f"not a permutation: {item['perm']}")
            c = item["coef"]
            c = parse_scalar(c) if isinstance(c, str) else Scalar.coerce(c)
            coords[w] = coords[w] + c if w in coords else c
            if n is None:
                n = len(w)
            elif len(w) != n:
                raise ValueError("mixed degrees in HeckeElement")
        return cls(n or 0, coords)

    def __repr__(self):
        terms = " + ".join(f"({c})T{list(w)}" for w, c in sorted(self.coords.items()))
        return f"HeckeElement(n={self.n}: {terms or '0'})"


def _same_degree(a, b):
    if a.n != b.n:
        raise ValueError(f"degree mismatch {a.n} vs {b.n}")


# ---------------------------------------------------------------- product

_QM1 = Q - 1


def _left_simple(i: int, vec: dict) -> dict:
    """T_i * sum c_w T_w."""
    out = {}
    for w, c in vec.items():
        sw = list(w)
        a, b = sw.index(i), sw.index(i + 1)
        sw[a], sw[b] = i + 1, i
        sw = tuple(sw)
        if a < b:  # length goes up
            _acc(out, sw, c)
        else:
            _acc(out, w, c * _QM1)
            _acc(out, sw, c * Q)
    return out


def _acc(d, k, x):
    d[k] = d[k] + x if k in d else x


@lru_cache(maxsize=None)
def _basis_product(u: tuple, v: tuple) -> tuple:
    vec = {v: ONE}
    for i in reversed(cb.reduced_word(u)):
        vec = _left_simple(i, vec)
    return tuple((w, c) for w, c in vec.items() if not c.is_zero())


def t_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    _same_degree(a, b)
    out = {}
    for u, cu in a.coords.items():
        for v, cv in b.coords.items():
            cuv = cu * cv
            for w, c in _basis_product(u, v):
                _acc(out, w, cuv * c)
    return HeckeElement(a.n, out)


def tau(x: HeckeElement) -> Scalar:
    return x.coef(cb.identity(x.n))


def bilinear(x: HeckeElement, y: HeckeElement) -> Scalar:
    return tau(t_mul(x, y))


# ---------------------------------------------------------------- Murphy / idempotents


@lru_cache(maxsize=None)
def murphy(n: int, m: int) -> HeckeElement:
    """L_m = sum_{i=1}^{m-1} q^{-i} T_{(m-i, m)} in H_n."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    coords = {cb.transposition(m - i, m, n): q_power(-i) for i in range(1, m)}
    return HeckeElement(n, coords)


def _tableau_key(t):
    return tuple(tuple(row) for row in t)


@lru_cache(maxsize=None)
def _dj(t) -> HeckeElement:
    n = sum(len(row) for row in t)
    out = HeckeElement.one(n)
    for m in range(1, n + 1):
        c = cb.tableau_content(t, m)
        L = murphy(n, m)
        for k in range(-(m - 1), m):
            if k == c:
                continue
            factor = (L - q_int(k)).scale(ONE / (q_int(c) - q_int(k)))
            out = t_mul(out, factor)
    return out


def dipper_james_idempotent(t) -> HeckeElement:
    if not cb.is_standard(t):
        raise ValueError(f"not a standard tableau: {t}")
    return _dj(_tableau_key(t))


@lru_cache(maxsize=None)
def central_idempotent(lam) -> HeckeElement:
    lam = tuple(lam)
    n = sum(lam)
    out = HeckeElement.zero(n)
    for t in cb.standard_tableaux(lam):
        out = out + dipper_james_idempotent(t)
    return out


def idempotent_report(n: int) -> dict:
    """Idempotent, orthogonality, completeness, Murphy eigenvalue and trace checks in H_n."""
    tabs = [t for lam in cb.partitions_of(n) for t in cb.standard_tableaux(lam)]
    es = [dipper_james_idempotent(t) for t in tabs]
    idem = all(t_mul(e, e) == e for e in es)
    ortho = all(t_mul(a, b).is_zero() for i, a in enumerate(es) for j, b in enumerate(es) if i != j)
    total = HeckeElement.zero(n)
    for e in es:
        total = total + e
    complete = total == HeckeElement.one(n)
    eigen = all(
        t_mul(murphy(n, m), e) == e.scale(q_int(cb.tableau_content(t, m)))
        for t, e in zip(tabs, es)
        for m in range(1, n + 1)
    )
    trace = all(tau(e) == cb.k_lambda(cb.tableau_shape(t)) for t, e in zip(tabs, es))
    checks = {
        "idempotent": idem,
        "orthogonal": ortho,
        "complete": complete,
        "murphy_eigenvalue": eigen,
        "trace_k_lambda": trace,
    }
    return {"n": n, "tableaux": len(tabs), "checks": checks, "passed": all(checks.values())}


@lru_cache(maxsize=None)
def x_element(n: int) -> HeckeElement:
    f = ONE / q_factorial(n)
    return HeckeElement(n, {w: f for w in cb.all_permutations(n)})


def q_inv_factorial(n: int) -> Scalar:
    """[n]_{1/q}! with [k]_{1/q} = q^{1-k}[k]_q."""
    out = ONE
    for k in range(1, n + 1):
        out = out * q_power(1 - k) * q_int(k)
    return out


@lru_cache(maxsize=None)
def y_element(n: int) -> HeckeElement:
    f = ONE / q_inv_factorial(n)
    return HeckeElement(n, {w: f * (-Q) ** (-cb.length(w)) for w in cb.all_permutations(n)})


# ---------------------------------------------------------------- tensors


def casimir(n: int) -> dict:
    """sum_w q^{-l(w)} T_{w^{-1}} (x) T_w as {(u, v): coef}."""
    return {(cb.inverse(w), w): q_power(-cb.length(w)) for w in cb.all_permutations(n)}


def tensor_mul(a: dict, b: dict) -> dict:
    out = {}
    for (u1, v1), c1 in a.items():
        for (u2, v2), c2 in b.items():
            c12 = c1 * c2
            for w1, x1 in _basis_product(u1, u2):
                for w2, x2 in _basis_product(v1, v2):
                    _acc(out, (w1, w2), c12 * x1 * x2)
    return {k: v for k, v in out.items() if not v.is_zero()}


def elem_tensor(x: HeckeElement, y: HeckeElement) -> dict:
    return {(u, v): cu * cv for u, cu in x.coords.items() for v, cv in y.coords.items()}


def check_casimir_intertwiner(n: int) -> bool:
    cas = casimir(n)
    one = HeckeElement.one(n)
    for i in range(1, n):
        t = HeckeElement.T(i, n)
        if tensor_mul(elem_tensor(t, one), cas) != tensor_mul(cas, elem_tensor(one, t)):
            return False
    return True


# ---------------------------------------------------------------- h map identity


def h_map(x: HeckeElement, trace_c: Scalar) -> HeckeElement:
    """Partial C-trace on the last slot, expressed in H_{n-1}."""
    n = x.n
    if n < 1:
        raise ValueError("h_map needs degree >= 1")
    out = HeckeElement.zero(n - 1)
    for w, c in x.coords.items():
        out = out + _h_basis(w, trace_c).scale(c)
    return out


def _h_basis(w, trace_c) -> HeckeElement:
    n = len(w)
    k = w[n - 1]
    if k == n:
        return HeckeElement.basis(w[: n - 1], trace_c)
    # w = s_k ... s_{n-1} w1 ; w1 = s_{n-1} ... s_k w fixes n
    w1 = w
    for i in range(k, n):
        w1 = cb.compose(cb.simple(i, n), w1)
    assert w1[n - 1] == n
    prefix = HeckeElement.one(n - 1)
    for i in range(k, n - 1):
        prefix = t_mul(prefix, HeckeElement.T(i, n - 1))
    return t_mul(prefix, HeckeElement.basis(w1[: n - 1]))


def hmap_sides_abstract(n: int, trace_c: Scalar):
    """(LHS, RHS) in H_n (x) H_{n-1} with q^{-l} weights."""
    lhs = {}
    for w in cb.all_permutations(n):
        hw = _h_basis(w, trace_c)
        wt = q_power(-cb.length(w))
        winv = cb.inverse(w)
        for v, c in hw.coords.items():
            _acc(lhs, (winv, v), wt * c)
    factor = murphy(n, n) + trace_c
    rhs = {}
    for u in cb.all_permutations(n - 1):
        left = t_mul(factor, HeckeElement.basis(cb.inverse(u)).extend(n))
        wt = q_power(-cb.length(u))
        for v, c in left.coords.items():
            _acc(rhs, (v, u), wt * c)
    clean = lambda d: {k: v for k, v in d.items() if not v.is_zero()}
    return clean(lhs), clean(rhs)


def check_hmap_identity(sym, n: int, represented: bool = True) -> bool:
    """Identity sum_w q^{-l} T_{w^-1} (x) h(T_w) = sum_u q^{-l} (L_n + tr C) T_{u^-1} (x) T_u."""
    trace_c = sym.trace_C()
    if not represented:
        lhs, rhs = hmap_sides_abstract(n, trace_c)
        return lhs == rhs
    # represented: partial trace applied to R_w directly, not via h_map
    d = sym.d
    lhs_terms = []
    for w in cb.all_permutations(n):
        wt = q_power(-cb.length(w))
        lhs_terms.append(kron(R_w(sym, cb.inverse(w)).scale(wt), ctrace_last(R_w(sym, w), sym.C, d)))
    factor = rho(sym, murphy(n, n) + trace_c)
    rhs_terms = []
    for u in cb.all_permutations(n - 1):
        wt = q_power(-cb.length(u))
        left = factor @ R_w(sym, cb.inverse(u) + (n,))
        rhs_terms.append(kron(left.scale(wt), R_w(sym, u)))
    size = (d**n) * (d ** (n - 1))
    return matsum(lhs_terms, size, size) == matsum(rhs_terms, size, size)


# ---------------------------------------------------------------- representation


def R_w(sym, w) -> SMatrix:
    """rho(T_w) = R_{i_1} ... R_{i_k} for a reduced word of w."""
    w = tuple(w)
    n = len(w)
    key = ("Rw", w)
    cache = sym._cache
    if key in cache:
        return cache[key]
    word = cb.reduced_word(w)
    if not word:
        out = SMatrix.identity(sym.d**n)
    else:
        last = word[-1]
        prev = cb.compose(w, cb.simple(last, n))  # w = prev s_last
        out = R_w(sym, prev) @ sym.R_i(last, n)
    cache[key] = out
    return out


def R_w_from_word(sym, word, n: int) -> SMatrix:
    out = SMatrix.identity(sym.d**n)
    for i in word:
        out = out @ sym.R_i(i, n)
    return out


def rho(sym, x: HeckeElement) -> SMatrix:
    size = sym.d**x.n
    return matsum((R_w(sym, w).scale(c) for w, c in sorted(x.coords.items())), size, size)


def rho_central(sym, lam) -> SMatrix:
    key = ("F", tuple(lam))
    if key not in sym._cache:
        sym._cache[key] = rho(sym, central_idempotent(tuple(lam)))
    return sym._cache[key]


def rho_idempotent(sym, t) -> SMatrix:
    key = ("E", _tableau_key(t))
    if key not in sym._cache:
        sym._cache[key] = rho(sym, dipper_james_idempotent(t))
    return sym._cache[key]
