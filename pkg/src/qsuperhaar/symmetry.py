"""Hecke symmetries: built-in R-matrices, closure, reflection operators, validation."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache

from qsuperhaar.scalar import ONE, P as PVAR, Q, ZERO, Scalar, q_int, q_power
from qsuperhaar.superlinalg import (
    SMatrix,
    decode,
    embed,
    encode,
    inverse,
    kron_power,
    rank,
)


class NotClosedError(ValueError):
    pass


@dataclass(eq=False)
class HeckeSymmetry:
    d: int
    parities: tuple
    R: SMatrix
    birank: tuple
    name: str = "custom"
    P: SMatrix = field(init=False)
    C: SMatrix = field(init=False)
    D: SMatrix = field(init=False)

    def __post_init__(self):
        self.parities = tuple(int(x) for x in self.parities)
        if len(self.parities) != self.d:
            raise ValueError("parities length must equal d")
        if self.R.rows != self.d**2 or self.R.cols != self.d**2:
            raise ValueError(f"R must be {self.d**2}x{self.d**2}")
        self.P = closure_inverse(self.R, self.d)
        self.C, self.D = reflection_ops(self.P, self.d)
        self._cache = {}

    @property
    def r(self):
        return self.birank[0]

    @property
    def s(self):
        return self.birank[1]

    def R_i(self, i: int, n: int) -> SMatrix:
        key = ("R", i, n)
        if key not in self._cache:
            self._cache[key] = embed(self.R, i, n, self.d)
        return self._cache[key]

    def C_power(self, n: int) -> SMatrix:
        key = ("C", n)
        if key not in self._cache:
            self._cache[key] = kron_power(self.C, n)
        return self._cache[key]

    def D_power(self, n: int) -> SMatrix:
        key = ("D", n)
        if key not in self._cache:
            self._cache[key] = kron_power(self.D, n)
        return self._cache[key]

    def trace_C(self) -> Scalar:
        return self.C.trace()

    def to_json(self) -> dict:
        return {"d": self.d, "parities": list(self.parities),
                "R": [[str(x) for x in row] for row in self.R.to_dense()],
                "birank": list(self.birank)}


# ---------------------------------------------------------------- builders


def build_drinfeld_jimbo(r: int) -> HeckeSymmetry:
    if r < 1:
        raise ValueError("r >= 1 required")
    d = r
    data = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if i == j:
                _put(data, (i, i), (i, i), Q, d)
            else:
                _put(data, (j, i), (i, j), PVAR, d)  # k=j, l=i
                if i > j:
                    _put(data, (i, j), (i, j), Q - 1, d)
    return HeckeSymmetry(d, (0,) * d, SMatrix(d * d, d * d, data), (r, 0), f"glq:{r}")


def build_manin_super(r: int, s: int) -> HeckeSymmetry:
    if r < 0 or s < 0 or r + s < 1:
        raise ValueError("r, s >= 0 and r + s >= 1 required")
    d = r + s
    par = (0,) * r + (1,) * s
    data = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if i == j:
                _put(data, (i, i), (i, i), Q if par[i - 1] == 0 else -ONE, d)
            else:
                _put(data, (j, i), (i, j), PVAR if not (par[i - 1] and par[j - 1]) else -PVAR, d)
                if i < j:
                    _put(data, (i, j), (i, j), Q - 1, d)
    return HeckeSymmetry(d, par, SMatrix(d * d, d * d, data), (r, s), f"glq:{r}|{s}")


def _put(data, upper, lower, x, d):
    data.setdefault(encode(upper, d), {})[encode(lower, d)] = x


_NAME = re.compile(r"^glq:(\d+)(?:\|(\d+))?$")


@lru_cache(maxsize=None)
def builtin(name: str) -> HeckeSymmetry:
    m = _NAME.match(name.strip())
    if not m:
        raise ValueError(f"unknown symmetry {name!r}; expected glq:r or glq:r|s")
    r = int(m.group(1))
    if m.group(2) is None:
        return build_drinfeld_jimbo(r)
    return build_manin_super(r, int(m.group(2)))


BUILTINS = ("glq:1", "glq:2", "glq:3", "glq:1|1", "glq:2|1")


def from_json(obj) -> HeckeSymmetry:
    try:
        d = int(obj["d"])
        par = tuple(int(x) for x in obj["parities"])
        R = SMatrix.from_json({"entries": obj["R"]})
        birank = tuple(int(x) for x in obj["birank"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad symmetry JSON: {exc}") from exc
    if len(birank) != 2:
        raise ValueError("birank must be [r, s]")
    if any(x not in (0, 1) for x in par):
        raise ValueError("parities must be 0 or 1")
    return HeckeSymmetry(d, par, R, birank, obj.get("name", "custom"))


def load(source: str) -> HeckeSymmetry:
    """'glq:r', 'glq:r|s' or a path to a JSON file."""
    if _NAME.match(source.strip()):
        return builtin(source.strip())
    with open(source, encoding="utf-8") as fh:
        return from_json(json.load(fh))


# ---------------------------------------------------------------- closure


def closure_inverse(R: SMatrix, d: int) -> SMatrix:
    """P with P^{im}_{jn} R^{nk}_{ml} = delta^i_l delta^k_j."""
    # S[(n,m)][(l,k)] = R^{nk}_{ml};  P^{im}_{jn} = S^{-1}[(i,j)][(n,m)]
    sdata = {}
    for row, col, x in R.items():
        n, k = decode(row, d, 2)
        m, l = decode(col, d, 2)
        sdata.setdefault(encode((n, m), d), {})[encode((l, k), d)] = x
    try:
        qinv = inverse(SMatrix(d * d, d * d, sdata))
    except ZeroDivisionError as exc:
        raise NotClosedError("not closed: the partial transpose of R is singular") from exc
    pdata = {}
    for row, col, x in qinv.items():
        i, j = decode(row, d, 2)
        n, m = decode(col, d, 2)
        pdata.setdefault(encode((i, m), d), {})[encode((j, n), d)] = x
    return SMatrix(d * d, d * d, pdata)


def reflection_ops(P: SMatrix, d: int):
    """C^i_j = P^{il}_{jl}, D^i_j = P^{li}_{lj}."""
    cd, dd = {}, {}
    for row, col, x in P.items():
        a, b = decode(row, d, 2)
        c, e = decode(col, d, 2)
        if b == e:
            _acc(cd, a - 1, c - 1, x)
        if a == c:
            _acc(dd, b - 1, e - 1, x)
    return SMatrix(d, d, _clean(cd)), SMatrix(d, d, _clean(dd))


def _acc(data, r, c, x):
    row = data.setdefault(r, {})
    row[c] = row[c] + x if c in row else x


def _clean(data):
    out = {}
    for r, row in data.items():
        row = {c: x for c, x in row.items() if not x.is_zero()}
        if row:
            out[r] = row
    return out


def closure_holds(sym: HeckeSymmetry) -> bool:
    d = sym.d
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            for k in range(1, d + 1):
                for l in range(1, d + 1):
                    acc = ZERO
                    for m in range(1, d + 1):
                        for n in range(1, d + 1):
                            p = sym.P.get(encode((i, m), d), encode((j, n), d))
                            if p.is_zero():
                                continue
                            acc = acc + p * sym.R.get(encode((n, k), d), encode((m, l), d))
                    want = ONE if (i == l and k == j) else ZERO
                    if acc != want:
                        return False
    return True


# ---------------------------------------------------------------- checks


def check_cd_relation(sym: HeckeSymmetry) -> dict:
    cd = sym.C @ sym.D
    dc = sym.D @ sym.C
    scalar = cd.get(0, 0)
    is_scalar = cd == SMatrix.identity(sym.d, scalar)
    qi = q_power(-1)
    candidate = qi - (qi - 1) * sym.trace_C()
    flipped = qi + (qi - 1) * sym.trace_C()
    return {
        "CD_equals_DC": cd == dc,
        "CD_is_scalar": is_scalar,
        "scalar": str(scalar) if is_scalar else None,
        "candidate_Q_equals_q": str(candidate),
        "matches_candidate": is_scalar and scalar == candidate,
        "candidate_sign_flipped": str(flipped),
        "matches_sign_flipped": is_scalar and scalar == flipped,
    }


def validate(sym: HeckeSymmetry) -> dict:
    d = sym.d
    r1, r2 = sym.R_i(1, 3), sym.R_i(2, 3)
    ybe = r1 @ r2 @ r1 == r2 @ r1 @ r2
    ident = SMatrix.identity(d * d)
    hecke = (sym.R - ident.scale(Q)) @ (sym.R + ident) == SMatrix(d * d, d * d)
    closure = closure_holds(sym)
    even = (sym.R.is_even(sym.parities, 2) and sym.P.is_even(sym.parities, 2)
            and sym.C.is_even(sym.parities, 1) and sym.D.is_even(sym.parities, 1))
    r, s = sym.birank
    trace = sym.trace_C()
    expected = -q_int(s - r)
    checks = {
        "yang_baxter": ybe,
        "hecke_relation": hecke,
        "closure": closure,
        "evenness": even,
        "trace_C": trace == expected,
    }
    return {
        "symmetry": sym.name,
        "d": d,
        "birank": [r, s],
        "checks": checks,
        "trace_C": str(trace),
        "expected_trace_C": str(expected),
        "cd_relation": check_cd_relation(sym),
        "passed": all(checks.values()),
    }


def poincare_prefix(sym: HeckeSymmetry, N: int) -> list:
    """dim Lambda_n = rank rho_n(y_n) for n = 0..N."""
    from qsuperhaar.hecke import rho, y_element

    out = [1]
    for n in range(1, N + 1):
        out.append(rank(rho(sym, y_element(n))))
    return out
