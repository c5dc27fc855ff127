"""Haar integral on H_R: P_n, the integral tensor, monomial integrals, reordering.

Conventions
-----------
* Generator symbols are ``("z", i, j)`` for z^i_j and ``("t", i, j)`` for
  t^i_j (upper index first).
* A :class:`Monomial` ``(I, J, K, L)`` is the plain product
  z_{i_1}^{j_1} ... z_{i_n}^{j_n} t_{k_1}^{l_1} ... t_{k_n}^{l_n}
  (lower index I, upper J for z; lower K, upper L for t).
* The integral tensor is sum_w A_w (x) B_w with
  A_w = q^{-l(w)} P_n C^{(x)n} R_{w^{-1}} (upper L, lower I) and B_w = R_w
  (upper J, lower K).
"""
from __future__ import annotations

import random

from dataclasses import dataclass

from qsuperhaar import combinatorics as cb
from qsuperhaar.hecke import R_w, murphy, rho, rho_central
from qsuperhaar.scalar import ONE, ZERO, Scalar, parse_scalar, q_int, q_power
from qsuperhaar.superlinalg import (
    SMatrix,
    commutant_basis,
    ctrace_last,
    encode,
    kron,
    matsum,
    parity_of,
    sign,
)

# ---------------------------------------------------------------- P_n


def p_operator(sym, n: int) -> SMatrix:
    key = ("Pn", n)
    if key in sym._cache:
        return sym._cache[key]
    r, s = sym.birank
    size = sym.d**n
    if n == 0:
        out = SMatrix.identity(1) if r * s == 0 else SMatrix(1, 1)
    else:
        terms = [rho_central(sym, lam).scale(cb.p_lambda(lam, r, s)) for lam in cb.omega_set(r, s, n)]
        out = matsum(terms, size, size)
    sym._cache[key] = out
    return out


def check_recursion(sym, n: int) -> bool:
    """P_{n+1} (L_{n+1} - [s-r]_q) = P_n (x) id."""
    r, s = sym.birank
    lhs = p_operator(sym, n + 1) @ rho(sym, murphy(n + 1, n + 1) - q_int(s - r))
    rhs = kron(p_operator(sym, n), SMatrix.identity(sym.d))
    return lhs == rhs


# ---------------------------------------------------------------- integral tensor


def integral_pairs(sym, n: int) -> list:
    """[(A_w, B_w)] over w in S_n, sorted by w."""
    key = ("pairs", n)
    if key in sym._cache:
        return sym._cache[key]
    pc = p_operator(sym, n) @ sym.C_power(n) if n else p_operator(sym, 0)
    out = []
    for w in cb.all_permutations(n):
        a = (pc @ R_w(sym, cb.inverse(w))).scale(q_power(-cb.length(w)))
        out.append((a, R_w(sym, w)))
    sym._cache[key] = out
    return out


def pair_matrix(pairs, left=None, right=None) -> SMatrix:
    """sum_w A_w (x) B_w as one matrix on V^n (x) V^n."""
    if not pairs:
        raise ValueError("empty pair list")
    r = pairs[0][0].rows * pairs[0][1].rows
    c = pairs[0][0].cols * pairs[0][1].cols
    return matsum((kron(a, b) for a, b in pairs), r, c)


def tensor_entry(sym, n: int, L, I, J, K) -> Scalar:
    """(I_n)^{JL}_{IK} = sum_w (A_w)^L_I (B_w)^J_K."""
    d = sym.d
    if n == 0:
        return p_operator(sym, 0).get(0, 0)
    l, i, j, k = encode(L, d), encode(I, d), encode(J, d), encode(K, d)
    out = ZERO
    for a, b in integral_pairs(sym, n):
        x = a.get(l, i)
        if x.is_zero():
            continue
        y = b.get(j, k)
        if not y.is_zero():
            out = out + x * y
    return out


@dataclass(frozen=True)
class Monomial:
    I: tuple
    J: tuple
    K: tuple
    L: tuple

    def __post_init__(self):
        if len(self.I) != len(self.J) or len(self.K) != len(self.L):
            raise ValueError("monomial needs |I| = |J| and |K| = |L|")

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(*(tuple(int(x) for x in obj[k]) for k in "IJKL"))
        except KeyError as exc:
            raise ValueError(f"monomial JSON missing {exc}") from exc

    def to_json(self):
        return {"I": list(self.I), "J": list(self.J), "K": list(self.K), "L": list(self.L)}

    def word(self) -> tuple:
        return tuple(("z", j, i) for i, j in zip(self.I, self.J)) + tuple(
            ("t", l, k) for k, l in zip(self.K, self.L))


def _check_indices(sym, *idxs):
    for idx in idxs:
        for x in idx:
            if not 1 <= x <= sym.d:
                raise ValueError(f"index {x} out of range 1..{sym.d}")


def integrate_normal(sym, zu, zl, tu, tl) -> Scalar:
    """Integral of z^{zu_1}_{zl_1} ... z^{zu_n}_{zl_n} t^{tu_1}_{tl_1} ... t^{tu_m}_{tl_m}."""
    n = len(zu)
    if n != len(tu):
        return ZERO
    if n == 0:
        return p_operator(sym, 0).get(0, 0)
    par = sym.parities
    if parity_of(zl, par) != parity_of(tu, par) or parity_of(zu, par) != parity_of(tl, par):
        return ZERO
    r, s = sym.birank
    if n < r * s:
        return ZERO
    return _integrate_normal_cached(sym, tuple(zu), tuple(zl), tuple(tu), tuple(tl))


def _integrate_normal_cached(sym, zu, zl, tu, tl) -> Scalar:
    key = ("int", zu, zl, tu, tl)
    cache = sym._cache
    if key in cache:
        return cache[key]
    par = sym.parities
    sg = sign(zu, zl, par) * sign(tl, tu, par)
    if parity_of(tl, par) and parity_of(zu + zl, par):
        sg = -sg
    val = tensor_entry(sym, len(zu), tuple(reversed(tu)), zl, zu, tuple(reversed(tl)))
    out = val if sg == 1 else -val
    cache[key] = out
    return out


def integrate_monomial(sym, m: Monomial, signed: bool = False) -> Scalar:
    """Integral of the plain product z_I^J t_K^L (or of sign(J,I) sign(K,L) times it)."""
    _check_indices(sym, m.I, m.J, m.K, m.L)
    val = integrate_normal(sym, m.J, m.I, m.L, m.K)
    if signed and m.I and not val.is_zero():
        if sign(m.J, m.I, sym.parities) * sign(m.K, m.L, sym.parities) < 0:
            val = -val
    return val


# ---------------------------------------------------------------- free algebra


def _sym_parity(sym, g) -> int:
    return (sym.parities[g[1] - 1] + sym.parities[g[2] - 1]) & 1


def free_from_json(items) -> dict:
    out = {}
    for item in items:
        word = []
        for g in item["word"]:
            if len(g) != 3 or g[0] not in ("z", "t"):
                raise ValueError(f"bad generator {g!r}")
            word.append((g[0], int(g[1]), int(g[2])))
        c = item.get("coef", "1")
        c = parse_scalar(c) if isinstance(c, str) else Scalar.coerce(c)
        _acc(out, tuple(word), c)
    return _clean(out)


def free_to_json(x: dict) -> list:
    return [{"word": [list(g) for g in w], "coef": str(c)} for w, c in sorted(x.items())]


def _acc(d, k, v):
    d[k] = d[k] + v if k in d else v


def _clean(d):
    return {k: v for k, v in d.items() if not v.is_zero()}


def free_mul(a: dict, b: dict) -> dict:
    out = {}
    for wa, ca in a.items():
        for wb, cb_ in b.items():
            _acc(out, wa + wb, ca * cb_)
    return _clean(out)


def _swap_rule(sym, tg, zg) -> list:
    """t^a_e z^c_b -> [(coef, z^g_l, t^m_f)] via the reordering rule."""
    key = ("swap", tg, zg)
    cache = sym._cache
    if key in cache:
        return cache[key]
    d, par = sym.d, sym.parities
    _, a, e = tg
    _, c, b = zg
    pre = -1 if par[c - 1] and (par[e - 1] ^ par[a - 1]) else 1
    out = {}
    # P^{fc}_{ge}: row (f,c), col (g,e);  R^{al}_{bm}: row (a,l), col (b,m)
    for f in range(1, d + 1):
        prow = sym.P.data.get(encode((f, c), d))
        if not prow:
            continue
        for g in range(1, d + 1):
            pv = prow.get(encode((g, e), d))
            if pv is None:
                continue
            for l in range(1, d + 1):
                rrow = sym.R.data.get(encode((a, l), d))
                if not rrow:
                    continue
                sg = pre * (-1 if par[f - 1] and (par[g - 1] ^ par[l - 1]) else 1)
                for m in range(1, d + 1):
                    rv = rrow.get(encode((b, m), d))
                    if rv is None:
                        continue
                    _acc(out, (("z", g, l), ("t", m, f)), pv * rv * sg)
    res = [(v, k[0], k[1]) for k, v in out.items() if not v.is_zero()]
    cache[key] = res
    return res


def reorder(sym, x: dict, strategy: str = "leftmost") -> dict:
    """Rewrite to normal order (all z before all t)."""
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    done = {}
    todo = dict(x)
    while todo:
        nxt = {}
        for w, c in todo.items():
            pos = _find_tz(w, strategy)
            if pos is None:
                _acc(done, w, c)
                continue
            for coef, zg, tg in _swap_rule(sym, w[pos], w[pos + 1]):
                _acc(nxt, w[:pos] + (zg, tg) + w[pos + 2:], c * coef)
        todo = _clean(nxt)
    return _clean(done)


def _find_tz(w, strategy):
    rng = range(len(w) - 1) if strategy == "leftmost" else range(len(w) - 2, -1, -1)
    for i in rng:
        if w[i][0] == "t" and w[i + 1][0] == "z":
            return i
    return None


def integrate_element(sym, x: dict, strategy: str = "leftmost") -> Scalar:
    out = ZERO
    for w, c in sorted(reorder(sym, x, strategy).items()):
        zs = [g for g in w if g[0] == "z"]
        ts = [g for g in w if g[0] == "t"]
        val = integrate_normal(sym, tuple(g[1] for g in zs), tuple(g[2] for g in zs),
                               tuple(g[1] for g in ts), tuple(g[2] for g in ts))
        if not val.is_zero():
            out = out + c * val
    return out


# ---------------------------------------------------------------- relations


def _sgn(b):
    return -1 if b & 1 else 1


def relation_elements(sym, family: str) -> list:
    """LHS - RHS of a defining relation family, one FreeElement per free index tuple.

    Families: 'rtt' (zz commutation), 'antipode_zt' / 'antipode_tz' (z t and t z
    contract to the identity), 'mixed' (t z commutation), 'tt' (tt commutation
    obtained by applying the antipode to 'rtt'), 'tt_alt' (the same relation
    written with R acting from the other side), 'antipode_c' (contraction through C).
    """
    d, par, R = sym.d, sym.parities, sym.R
    h = lambda i: par[i - 1]
    rng = range(1, d + 1)
    Rv = lambda k, l, i, j: R.get(encode((k, l), d), encode((i, j), d))
    z = lambda i, j: ("z", i, j)
    t = lambda i, j: ("t", i, j)
    out = []

    def emit(terms):
        el = {}
        for coef, word in terms:
            if not coef.is_zero():
                _acc(el, tuple(word), coef)
        el = _clean(el)
        if el:
            out.append(el)

    if family == "rtt":
        for i in rng:
            for j in rng:
                for k in rng:
                    for l in rng:
                        terms = []
                        for p in rng:
                            for s in rng:
                                terms.append((Rv(k, l, p, s) * _sgn(h(s) * (h(i) + h(p))), [z(p, i), z(s, j)]))
                        for q in rng:
                            for n in rng:
                                terms.append((-Rv(q, n, i, j) * _sgn(h(l) * (h(q) + h(k))), [z(k, q), z(l, n)]))
                        emit(terms)
    elif family in ("antipode_zt", "antipode_tz"):
        for i in rng:
            for k in rng:
                terms = [(-ONE if i == k else ZERO, [])]
                for j in rng:
                    if family == "antipode_zt":
                        terms.append((ONE * _sgn(h(k) * (h(i) + h(j))), [z(i, j), t(j, k)]))
                    else:
                        terms.append((ONE * _sgn(h(j) * (h(j) + h(i))), [t(i, j), z(j, k)]))
                emit(terms)
    elif family == "mixed":
        for i in rng:
            for k in rng:
                for p in rng:
                    for q in rng:
                        terms = []
                        for j in rng:
                            for l in rng:
                                terms.append((Rv(p, j, q, l) * _sgn(h(k) * (h(i) + h(j))), [z(i, j), t(l, k)]))
                        for m in rng:
                            for n in rng:
                                terms.append((-Rv(n, i, m, k) * _sgn(h(m) * (h(n) + h(p))), [t(p, n), z(m, q)]))
                        emit(terms)
    elif family == "tt":
        for a in rng:
            for b in rng:
                for g1 in rng:
                    for g2 in rng:
                        terms = []
                        for e in rng:
                            for f in rng:
                                terms.append((Rv(b, a, f, e) * _sgn(h(g2) * (h(g1) + h(e))), [t(e, g1), t(f, g2)]))
                                terms.append((-Rv(f, e, g2, g1) * _sgn(h(f) * (h(e) + h(a))), [t(a, e), t(b, f)]))
                        emit(terms)
    elif family == "tt_alt":
        for i in rng:
            for j in rng:
                for k in rng:
                    for l in rng:
                        terms = []
                        for p in rng:
                            for s in rng:
                                terms.append((Rv(k, l, p, s) * _sgn(h(s) * (h(i) + h(p))), [t(s, j), t(p, i)]))
                        for q in rng:
                            for n in rng:
                                terms.append((-Rv(q, n, i, j) * _sgn(h(l) * (h(q) + h(k))), [t(l, n), t(k, q)]))
                        emit(terms)
    elif family == "antipode_c":
        C = sym.C
        for i in rng:
            for k in rng:
                terms = [(-C.get(i - 1, k - 1), [])]
                for j in rng:
                    for l in rng:
                        terms.append((C.get(j - 1, l - 1) * _sgn(h(j) * (h(l) + h(k))), [z(l, k), t(i, j)]))
                emit(terms)
    else:
        raise ValueError(f"unknown relation family {family!r}")
    return out


RELATION_FAMILIES = ("rtt", "antipode_zt", "antipode_tz", "mixed", "tt", "tt_alt")


# ---------------------------------------------------------------- conditions


def check_condition_i(sym, n: int) -> bool:
    """sum R_i A_w (x) B_w = sum A_w (x) B_w R_i and sum A_w R_i (x) B_w = sum A_w (x) R_i B_w."""
    pairs = integral_pairs(sym, n)
    for i in range(1, n):
        Ri = sym.R_i(i, n)
        if pair_matrix([(Ri @ a, b) for a, b in pairs]) != pair_matrix([(a, b @ Ri) for a, b in pairs]):
            return False
        if pair_matrix([(a @ Ri, b) for a, b in pairs]) != pair_matrix([(a, Ri @ b) for a, b in pairs]):
            return False
    return True


def check_condition_ii(sym, n: int) -> dict:
    """Both contraction identities relating I_n to I_{n-1}."""
    d = sym.d
    pairs = integral_pairs(sym, n)
    prev = integral_pairs(sym, n - 1) if n > 1 else None
    ident = SMatrix.identity(d)
    # (a) glue the last lower slot of A with its last upper slot: trace over id
    lhs_a = pair_matrix([(ctrace_last(a, ident, d), b) for a, b in pairs])
    # (b) C-trace over the last slots of B
    lhs_b = pair_matrix([(a, ctrace_last(b, sym.C, d)) for a, b in pairs])
    if prev is None:
        i0 = p_operator(sym, 0).get(0, 0)
        rhs_a = kron(SMatrix.identity(1, i0), ident)
        rhs_b = sym.C.scale(i0)
    else:
        rhs_a = pair_matrix([(a, kron(b, ident)) for a, b in prev])
        rhs_b = pair_matrix([(kron(a, sym.C), b) for a, b in prev])
    return {"delta": lhs_a == rhs_a, "ctrace": lhs_b == rhs_b}


def check_condition_iii(sym, n: int, basis=None) -> bool:
    """Pair (iii) against the commutant: sum A_w (x) B_w X = sum A_w (x) X B_w.

    (iii) is written in the definitional slot labels, where both contracted
    multi-indices sit on the B factor.
    """
    pairs = integral_pairs(sym, n)
    if basis is None:
        basis = commutant(sym, n)
    for X in basis:
        if pair_matrix([(a, b @ X) for a, b in pairs]) != pair_matrix([(a, X @ b) for a, b in pairs]):
            return False
    return True


def commutant(sym, n: int) -> list:
    key = ("commutant", n)
    if key not in sym._cache:
        gens = [sym.R_i(i, n) for i in range(1, n)]
        sym._cache[key] = commutant_basis(gens, sym.d**n)
    return sym._cache[key]


# ---------------------------------------------------------------- well-definedness


def _random_gen(rng, kind, d):
    return (kind, rng.randint(1, d), rng.randint(1, d))


def _balanced_padding(rng, d, nz, nt):
    """Words X, Y such that X r Y has as many z as t."""
    gens = [_random_gen(rng, "t", d) for _ in range(max(nz - nt, 0))]
    gens += [_random_gen(rng, "z", d) for _ in range(max(nt - nz, 0))]
    for _ in range(rng.randint(0, 1)):
        gens += [_random_gen(rng, "z", d), _random_gen(rng, "t", d)]
    rng.shuffle(gens)
    cut = rng.randint(0, len(gens))
    return tuple(gens[:cut]), tuple(gens[cut:])


def _has_odd(sym, el) -> bool:
    return any(_sym_parity(sym, g) for w in el for g in w)


def welldefined_report(sym, seed: int = 0, count: int = 50) -> dict:
    """Strategy independence of the reordering and annihilation of the relation ideal."""
    rng = random.Random(seed)
    d = sym.d
    mismatches = []
    for k in range(count):
        length = rng.randint(2, 4)
        nz = rng.randint(1, length - 1)
        word = [_random_gen(rng, "z", d) for _ in range(nz)]
        word += [_random_gen(rng, "t", d) for _ in range(length - nz)]
        rng.shuffle(word)
        x = {tuple(word): ONE}
        a, b = integrate_element(sym, x, "leftmost"), integrate_element(sym, x, "rightmost")
        if a != b:
            mismatches.append({"word": [list(g) for g in word], "leftmost": str(a), "rightmost": str(b)})
    pool = [(fam, el) for fam in RELATION_FAMILIES for el in relation_elements(sym, fam)]
    odd_pool = [item for item in pool if _has_odd(sym, item[1])]
    survivors = []
    odd_cases = 0
    nontrivial = 0
    for k in range(count):
        src = odd_pool if odd_pool and k % 2 else pool
        fam, el = src[rng.randrange(len(src))]
        w0 = next(iter(el))
        nz = sum(1 for g in w0 if g[0] == "z")
        for _ in range(40):  # prefer paddings where some term has a nonzero integral
            left, right = _balanced_padding(rng, d, nz, len(w0) - nz)
            x = free_mul(free_mul({left: ONE}, el), {right: ONE})
            live = any(not integrate_element(sym, {w: ONE}).is_zero() for w in x)
            if live:
                break
        odd_cases += _has_odd(sym, x)
        nontrivial += live
        v = integrate_element(sym, x)
        if not v.is_zero():
            survivors.append({"family": fam, "element": free_to_json(x), "value": str(v)})
    return {
        "seed": seed,
        "strategy_pairs": count,
        "strategy_mismatches": mismatches[:5],
        "relation_elements": count,
        "odd_cases": odd_cases,
        "nontrivial_terms": nontrivial,
        "not_annihilated": survivors[:5],
        "passed": not mismatches and not survivors,
    }
