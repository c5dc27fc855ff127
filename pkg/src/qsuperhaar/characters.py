"""Characters, hook-Schur functions, the super HCIZ identity and orthogonality.

Z^c_e is the signed z-monomial sign(c, e) z^{c_1}_{e_1} ... z^{c_n}_{e_n}.
The barred t-monomial is

    Tbar^f_a = sign(a', f') (-1)^{|a|(|a|+|f|)} t^{f_n}_{a_n} ... t^{f_1}_{a_1}

so that  int(Z^c_e Tbar^f_a) = sum_w q^{-l(w)} (P C R_{w^-1})^f_e (R_w)^c_a.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, combinations
import random

from qsuperhaar import combinatorics as cb
from qsuperhaar.haar import integrate_normal, p_operator
from qsuperhaar.hecke import R_w, rho_idempotent
from qsuperhaar.scalar import ONE, P as PVAR, ZERO, Scalar, parse_scalar, q_power
from qsuperhaar.superlinalg import SMatrix, decode, kron_power, multi_indices, parity_of, rref_rows, sign

# ---------------------------------------------------------------- points


class KPoint:
    """Diagonal K-point diag(m_1, ..., m_d)."""

    __slots__ = ("diag",)

    def __init__(self, diag):
        self.diag = tuple(Scalar.coerce(x) for x in diag)

    @classmethod
    def from_json(cls, obj):
        try:
            entries = obj["diag"]
        except (KeyError, TypeError) as exc:
            raise ValueError("KPoint JSON needs a 'diag' list") from exc
        return cls(parse_scalar(x) if isinstance(x, str) else Scalar.coerce(x) for x in entries)

    def to_json(self):
        return {"diag": [str(x) for x in self.diag]}

    def tensor_diag(self, idx) -> Scalar:
        out = ONE
        for i in idx:
            out = out * self.diag[i - 1]
        return out

    def matrix(self) -> SMatrix:
        return SMatrix.diagonal(self.diag)


def random_point(d: int, rng: random.Random) -> KPoint:
    """Distinct small nonzero rationals."""
    seen = set()
    out = []
    while len(out) < d:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if x and x not in seen:
            seen.add(x)
            out.append(Scalar.from_fraction(x))
    return KPoint(out)


# ---------------------------------------------------------------- calibration


def closed_form_weights(r: int, s: int) -> list:
    """Coefficients of m_i in the closed-form S_(1): q^i m_i (even), -q^{r-j+1} m_{r+j} (odd)."""
    return [q_power(i) for i in range(1, r + 1)] + [-q_power(r - j + 1) for j in range(1, s + 1)]


def prefactor(sym, n: int) -> Scalar:
    """q^{n(r-s+1)/2} = p^{n(r-s+1)}."""
    r, s = sym.birank
    return PVAR ** (n * (r - s + 1))


def d_calibration(sym) -> dict:
    """Scalar kappa with S_(1) = closed form when D -> kappa D, if one exists."""
    key = ("calib",)
    if key in sym._cache:
        return sym._cache[key]
    r, s = sym.birank
    pre = prefactor(sym, 1)
    D = sym.D
    offdiag = any(rr != cc for rr, cc, _ in D.items())
    ratios = []
    if not offdiag and r + s == sym.d:
        for i, w in enumerate(closed_form_weights(r, s)):
            dii = D.get(i, i)
            ratios.append(None if dii.is_zero() else w / (pre * dii))
    ok = bool(ratios) and None not in ratios and all(x == ratios[0] for x in ratios)
    out = {
        "consistent": ok,
        "kappa": ratios[0] if ok else ONE,
        "ratios": [None if x is None else str(x) for x in ratios],
    }
    sym._cache[key] = out
    return out


def calibrated_D(sym, calibrate: bool = True) -> SMatrix:
    if not calibrate:
        return sym.D
    return sym.D.scale(d_calibration(sym)["kappa"])


# ---------------------------------------------------------------- characters


def first_tableau(lam):
    return cb.standard_tableaux(tuple(lam))[0]


def character(sym, lam, calibrate: bool = True, tableau=None) -> SMatrix:
    """Coefficient tensor c of S_lambda = sum c^I_J Z^J_I."""
    lam = tuple(lam)
    n = sum(lam)
    if n == 0:
        return SMatrix.identity(1)
    t = tableau or first_tableau(lam)
    Dn = kron_power(calibrated_D(sym, calibrate), n)
    return (Dn @ rho_idempotent(sym, t)).scale(prefactor(sym, n))


def character_dual(sym, lam, tableau=None) -> SMatrix:
    """Coefficient tensor c of S_{-lambda} = sum c^I_J Tbar^J_I."""
    lam = tuple(lam)
    n = sum(lam)
    if n == 0:
        return SMatrix.identity(1)
    t = tableau or first_tableau(lam)
    return (sym.C_power(n) @ rho_idempotent(sym, t)).scale(prefactor(sym, n))


def evaluate(sym, coef: SMatrix, point: KPoint, n: int) -> Scalar:
    """sum_I c^I_I prod m_I at a diagonal point (off-diagonal Z entries vanish)."""
    out = ZERO
    for r_, row in coef.data.items():
        x = row.get(r_)
        if x is not None:
            out = out + x * point.tensor_diag(decode(r_, sym.d, n))
    return out


def character_polynomial(sym, coef: SMatrix, n: int) -> dict:
    """Diagonal restriction as {exponent vector of (m_1..m_d): coefficient}."""
    out = {}
    for r_, row in coef.data.items():
        x = row.get(r_)
        if x is None:
            continue
        expo = [0] * sym.d
        for i in decode(r_, sym.d, n):
            expo[i - 1] += 1
        key = tuple(expo)
        out[key] = out[key] + x if key in out else x
    return {k: v for k, v in sorted(out.items(), reverse=True) if not v.is_zero()}


def format_polynomial(poly: dict, var: str = "m") -> str:
    if not poly:
        return "0"
    terms = []
    for expo, c in poly.items():
        mono = "*".join(f"{var}{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(expo) if e)
        cs = str(c)
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            terms.append(f"({cs})*{mono}")
    return " + ".join(terms)


def quantum_rank(sym, lam) -> Scalar:
    lam = tuple(lam)
    n = sum(lam)
    return (sym.C_power(n) @ rho_idempotent(sym, first_tableau(lam))).trace()


# ---------------------------------------------------------------- symmetric functions


def complete_h(k: int, xs) -> Scalar:
    if k < 0:
        return ZERO
    out = ZERO
    for combo in combinations_with_replacement(range(len(xs)), k):
        term = ONE
        for i in combo:
            term = term * xs[i]
        out = out + term
    return out


def elementary_e(k: int, xs) -> Scalar:
    if k < 0 or k > len(xs):
        return ZERO
    out = ZERO
    for combo in combinations(range(len(xs)), k):
        term = ONE
        for i in combo:
            term = term * xs[i]
        out = out + term
    return out


def det(mat) -> Scalar:
    """Exact determinant by Gaussian elimination over Scalar."""
    a = [list(row) for row in mat]
    n = len(a)
    out = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            out = -out
        pv = a[col][col]
        out = out * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            f = a[r][col]
            if f.is_zero():
                continue
            f = f * inv
            for c in range(col, n):
                a[r][c] = a[r][c] - f * a[col][c]
    return out


def schur(mu, xs) -> Scalar:
    """Jacobi-Trudi: det(h_{mu_i - i + j})."""
    mu = tuple(mu)
    if not mu:
        return ONE
    if len(mu) > len(xs):
        return ZERO
    k = len(mu)
    return det([[complete_h(mu[i] - i + j, xs) for j in range(k)] for i in range(k)])


def schur_monomial(mu, xs) -> Scalar:
    """Schur polynomial from semistandard tableaux (cross-check for Jacobi-Trudi)."""
    mu = tuple(mu)
    if not mu:
        return ONE
    cells = cb.cells(mu)
    m = len(xs)
    total = ZERO

    def fill(pos, tab):
        nonlocal total
        if pos == len(cells):
            term = ONE
            for v in tab.values():
                term = term * xs[v]
            total = total + term
            return
        i, j = cells[pos]
        lo = 0
        if j > 1:
            lo = max(lo, tab[(i, j - 1)])
        if i > 1:
            lo = max(lo, tab[(i - 1, j)] + 1)
        for v in range(lo, m):
            tab[(i, j)] = v
            fill(pos + 1, tab)
        tab.pop((i, j), None)

    fill(0, {})
    return total


def hook_schur_factored(sym, lam, point: KPoint) -> Scalar:
    r, s = sym.birank
    mu, nu = cb.hook_decomposition(tuple(lam), r, s)
    m = point.diag
    out = ONE
    for i in range(1, r + 1):
        for j in range(1, s + 1):
            out = out * (q_power(i) * m[i - 1] - q_power(r - j + 1) * m[r + j - 1])
    out = out * schur(mu, [q_power(i) * m[i - 1] for i in range(1, r + 1)])
    out = out * schur(nu, [q_power(r + 1 - i) * m[r + i - 1] for i in range(1, s + 1)])
    return -out if sum(nu) % 2 else out


def hook_schur_factored_dual(sym, lam, point: KPoint) -> Scalar:
    r, s = sym.birank
    mu, nu = cb.hook_decomposition(tuple(lam), r, s)
    x = point.diag
    out = ONE
    for i in range(1, r + 1):
        for j in range(1, s + 1):
            out = out * (q_power(r - s - i + 1) * x[i - 1] - q_power(j - s) * x[r + j - 1])
    out = out * schur(mu, [q_power(r - s + 1 - i) * x[i - 1] for i in range(1, r + 1)])
    out = out * schur(nu, [q_power(i - s) * x[r + i - 1] for i in range(1, s + 1)])
    return -out if sum(nu) % 2 else out


# ---------------------------------------------------------------- barred monomials


def z_term(c, e, par):
    """Z^c_e -> (sign, z-upper, z-lower)."""
    return sign(c, e, par), tuple(c), tuple(e)


def tbar_term(f, a, par):
    """Tbar^f_a -> (sign, t-upper, t-lower) of the plain product t^{f_n}_{a_n} ... t^{f_1}_{a_1}."""
    fr, ar = tuple(reversed(f)), tuple(reversed(a))
    sg = sign(ar, fr, par)
    if parity_of(a, par) and (parity_of(a, par) + parity_of(f, par)) % 2:
        sg = -sg
    return sg, fr, ar


def integrate_z_tbar(sym, c, e, f, a) -> Scalar:
    par = sym.parities
    s1, zu, zl = z_term(c, e, par)
    s2, tu, tl = tbar_term(f, a, par)
    val = integrate_normal(sym, zu, zl, tu, tl)
    return val if s1 * s2 == 1 else -val


# ---------------------------------------------------------------- HCIZ


def hciz_lhs(sym, M: KPoint, N: KPoint, n: int, calibrate: bool = True) -> Scalar:
    """int tr(D^n M^n Z^n Nbar Tbar), expanded into monomials."""
    if n == 0:
        return integrate_normal(sym, (), (), (), ())
    d = sym.d
    DM = kron_power(calibrated_D(sym, calibrate) @ M.matrix(), n)
    out = ZERO
    idx = multi_indices(d, n)
    for a, row in sorted(DM.data.items()):
        for c, x in sorted(row.items()):
            ci, ai = decode(c, d, n), decode(a, d, n)
            for e in idx:
                v = integrate_z_tbar(sym, ci, e, e, ai)
                if not v.is_zero():
                    out = out + x * N.tensor_diag(e) * v
    return out


def hciz_rhs(sym, M: KPoint, N: KPoint, n: int, calibrate: bool = True):
    """(total, [(lambda, term)])."""
    r, s = sym.birank
    per = []
    total = ZERO
    norm = prefactor(sym, n) ** -2
    for lam in cb.omega_set(r, s, n):
        if n == 0:
            term = ONE
        else:
            coef = norm * cb.d_lambda(lam) * cb.p_lambda(lam, r, s) / cb.k_lambda(lam)
            sm = evaluate(sym, character(sym, lam, calibrate), M, n)
            sn = evaluate(sym, character_dual(sym, lam), N, n)
            term = coef * sm * sn
        per.append((lam, term))
        total = total + term
    return total, per


def hciz_report(sym, M, N, n, calibrate=True) -> dict:
    lhs = hciz_lhs(sym, M, N, n, calibrate)
    rhs, per = hciz_rhs(sym, M, N, n, calibrate)
    return {
        "n": n,
        "lhs": str(lhs),
        "rhs": str(rhs),
        "equal": lhs == rhs,
        "perLambda": [{"lambda": list(lam), "term": str(t)} for lam, t in per],
    }


def hciz_example_variant_lhs(sym, M: KPoint, N: KPoint, n: int) -> Scalar:
    """int tr(C^n N^n Z^n M^n T^n) with T^n read as the unbarred Tbar (T^I_J = Tbar^{I'}_{J'})."""
    d = sym.d
    CN = kron_power(sym.C @ N.matrix(), n)
    out = ZERO
    idx = multi_indices(d, n)
    for a, row in sorted(CN.data.items()):
        for c, x in sorted(row.items()):
            ci, ai = decode(c, d, n), decode(a, d, n)
            for e in idx:
                v = integrate_z_tbar(sym, ci, e, tuple(reversed(e)), tuple(reversed(ai)))
                if not v.is_zero():
                    out = out + x * M.tensor_diag(e) * v
    return out


# ---------------------------------------------------------------- orthogonality


def matrix_units(sym, lam):
    """(units, pivots): units[(a, b)] = P^a_b with P^a_b P^c_d = delta^c_b P^a_d."""
    lam = tuple(lam)
    pi = rho_idempotent(sym, first_tableau(lam))
    size = pi.rows
    cols = pi.transpose()
    pivots, basis = rref_rows([cols.data.get(c, {}) for c in range(size)], size)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    pivots = [pivots[k] for k in order]
    basis = [basis[k] for k in order]
    units = {}
    for a, e in enumerate(basis):
        for b, pb in enumerate(pivots):
            frow = pi.data.get(pb, {})
            data = {}
            for r_, x in e.items():
                data[r_] = {c: x * y for c, y in frow.items()}
            units[(a, b)] = SMatrix(size, size, {k: v for k, v in data.items() if v})
    return units, pivots


def check_units(units, m: int) -> bool:
    for (a, b), pab in units.items():
        for (c, d_), pcd in units.items():
            want = units[(a, d_)] if b == c else SMatrix(pab.rows, pab.cols)
            if pab @ pcd != want:
                return False
    return True


def orthogonality_integral(sym, Pab: SMatrix, Pcd: SMatrix, n: int) -> Scalar:
    """int( tr(P^a_b Z^n) tr(P^c_d Tbar) ), expanded termwise."""
    d = sym.d
    out = ZERO
    for I, J, x in Pab.items():  # (P^a_b)^I_J Z^J_I
        zi, zj = decode(J, d, n), decode(I, d, n)
        for K, L, y in Pcd.items():  # (P^c_d)^K_L Tbar^L_K
            v = integrate_z_tbar(sym, zi, zj, decode(L, d, n), decode(K, d, n))
            if not v.is_zero():
                out = out + x * y * v
    return out


def check_orthogonality(sym, lam) -> dict:
    """Every quadruple (a, b, c, d) of matrix units of lambda, integrated termwise."""
    lam = tuple(lam)
    n = sum(lam)
    r, s = sym.birank
    units, pivots = matrix_units(sym, lam)
    m = len(pivots)
    in_omega = lam in cb.omega_set(r, s, n)
    factor = cb.p_lambda(lam, r, s) / cb.k_lambda(lam) if in_omega else ZERO
    Cn = sym.C_power(n)
    rows = []
    for a in range(m):
        for b in range(m):
            for c in range(m):
                for d_ in range(m):
                    lhs = orthogonality_integral(sym, units[(a, b)], units[(c, d_)], n)
                    rhs = factor * (Cn @ units[(a, d_)]).trace() if b == c else ZERO
                    rows.append({"a": a + 1, "b": b + 1, "c": c + 1, "d": d_ + 1,
                                 "lhs": str(lhs), "rhs": str(rhs), "equal": lhs == rhs})
    return {
        "lambda": list(lam),
        "dimension": m,
        "units_ok": check_units(units, m),
        "rows": rows,
        "passed": check_units(units, m) and all(row["equal"] for row in rows),
    }


def character_pairing(sym, lam, mu) -> Scalar:
    """sum_w q^{-l} tr(P C^n E_lam R_{w^-1} E_mu R_w)."""
    n = sum(lam)
    El = rho_idempotent(sym, first_tableau(lam))
    Em = rho_idempotent(sym, first_tableau(mu))
    pc = p_operator(sym, n) @ sym.C_power(n) @ El
    out = ZERO
    for w in cb.all_permutations(n):
        t = (pc @ R_w(sym, cb.inverse(w)) @ Em @ R_w(sym, w)).trace()
        out = out + t * q_power(-cb.length(w))
    return out
