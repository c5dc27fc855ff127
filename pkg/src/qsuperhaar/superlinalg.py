"""Exact sparse matrices over :class:`Scalar` and tensor-power helpers.

Multi-indices are 1-based tuples; ``encode``/``decode`` map them to row and
column numbers with the leftmost factor most significant.  An entry
``A^{K}_{I}`` (upper K, lower I) sits at row ``encode(K)``, column
``encode(I)``.  Operators are even, so composition and Kronecker products
carry no Koszul signs; super signs live only in :func:`sign`.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from qsuperhaar.scalar import ONE, ZERO, Scalar, parse_scalar

# ---------------------------------------------------------------- indices


def encode(idx, d: int) -> int:
    k = 0
    for i in idx:
        k = k * d + (i - 1)
    return k


@lru_cache(maxsize=None)
def decode(k: int, d: int, n: int) -> tuple:
    out = [0] * n
    for pos in range(n - 1, -1, -1):
        k, r = divmod(k, d)
        out[pos] = r + 1
    return tuple(out)


@lru_cache(maxsize=None)
def multi_indices(d: int, n: int) -> tuple:
    return tuple(product(range(1, d + 1), repeat=n))


def parity_of(idx, parities) -> int:
    return sum(parities[i - 1] for i in idx) & 1


def sign(I, J, parities) -> int:
    """Recursive super sign: sign(i, j) = 1, sign(Ii, Jj) = (-1)^{i^(|I^|+|J^|)} sign(I, J)."""
    if len(I) != len(J):
        raise ValueError("sign needs multi-indices of equal length")
    if not I:
        raise ValueError("sign needs length >= 1")
    acc = 0
    run = 0
    for i, j in zip(I, J):
        pi = parities[i - 1]
        if pi:
            acc ^= run
        run ^= pi ^ parities[j - 1]
    return -1 if acc else 1


def reverse(idx) -> tuple:
    return tuple(reversed(idx))


# ---------------------------------------------------------------- matrices


class SMatrix:
    """Sparse ``rows x cols`` matrix; ``data[r][c]`` holds nonzero Scalars only."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        self.data = data if data is not None else {}

    # constructors
    @classmethod
    def zeros(cls, rows, cols=None):
        return cls(rows, rows if cols is None else cols)

    @classmethod
    def identity(cls, n: int, scalar: Scalar = ONE):
        if scalar.is_zero():
            return cls(n, n)
        return cls(n, n, {i: {i: scalar} for i in range(n)})

    @classmethod
    def from_dense(cls, grid):
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        data = {}
        for r, line in enumerate(grid):
            if len(line) != cols:
                raise ValueError("ragged matrix")
            row = {c: Scalar.coerce(x) for c, x in enumerate(line)}
            row = {c: x for c, x in row.items() if not x.is_zero()}
            if row:
                data[r] = row
        return cls(rows, cols, data)

    @classmethod
    def diagonal(cls, values):
        values = [Scalar.coerce(v) for v in values]
        return cls(len(values), len(values), {i: {i: v} for i, v in enumerate(values) if not v.is_zero()})

    # access
    def get(self, r: int, c: int) -> Scalar:
        row = self.data.get(r)
        if row is None:
            return ZERO
        return row.get(c, ZERO)

    def __getitem__(self, rc):
        return self.get(*rc)

    def to_dense(self):
        return [[self.get(r, c) for c in range(self.cols)] for r in range(self.rows)]

    def nnz(self) -> int:
        return sum(len(row) for row in self.data.values())

    def items(self):
        for r, row in self.data.items():
            for c, x in row.items():
                yield r, c, x

    def is_zero(self) -> bool:
        return not self.data

    # algebra
    def __eq__(self, other):
        if not isinstance(other, SMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    __hash__ = None

    def __add__(self, other):
        _check_same(self, other)
        data = {r: dict(row) for r, row in self.data.items()}
        for r, row in other.data.items():
            tgt = data.setdefault(r, {})
            for c, x in row.items():
                y = tgt.get(c)
                y = x if y is None else y + x
                if y.is_zero():
                    tgt.pop(c, None)
                else:
                    tgt[c] = y
            if not tgt:
                del data[r]
        return SMatrix(self.rows, self.cols, data)

    def __neg__(self):
        return SMatrix(self.rows, self.cols, {r: {c: -x for c, x in row.items()} for r, row in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "SMatrix":
        s = Scalar.coerce(s)
        if s.is_zero():
            return SMatrix(self.rows, self.cols)
        if s == ONE:
            return self
        return SMatrix(self.rows, self.cols, {r: {c: x * s for c, x in row.items()} for r, row in self.data.items()})

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        odata = other.data
        data = {}
        for r, row in self.data.items():
            acc = {}
            for k, x in row.items():
                orow = odata.get(k)
                if orow is None:
                    continue
                for c, y in orow.items():
                    t = x * y
                    prev = acc.get(c)
                    acc[c] = t if prev is None else prev + t
            acc = {c: v for c, v in acc.items() if not v.is_zero()}
            if acc:
                data[r] = acc
        return SMatrix(self.rows, other.cols, data)

    def transpose(self) -> "SMatrix":
        data = {}
        for r, c, x in self.items():
            data.setdefault(c, {})[r] = x
        return SMatrix(self.cols, self.rows, data)

    def trace(self) -> Scalar:
        out = ZERO
        for r, row in self.data.items():
            x = row.get(r)
            if x is not None:
                out = out + x
        return out

    def map(self, fn) -> "SMatrix":
        data = {}
        for r, row in self.data.items():
            new = {c: fn(x) for c, x in row.items()}
            new = {c: x for c, x in new.items() if not x.is_zero()}
            if new:
                data[r] = new
        return SMatrix(self.rows, self.cols, data)

    def is_even(self, parities, n: int) -> bool:
        d = len(parities)
        for r, c, _ in self.items():
            if parity_of(decode(r, d, n), parities) != parity_of(decode(c, d, n), parities):
                return False
        return True

    # json
    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[str(x) for x in line] for line in self.to_dense()]}

    @classmethod
    def from_json(cls, obj) -> "SMatrix":
        grid = [[parse_scalar(x) if isinstance(x, str) else Scalar.coerce(x) for x in line]
                for line in obj["entries"]]
        m = cls.from_dense(grid) if grid else cls(obj.get("rows", 0), obj.get("cols", 0))
        if ("rows" in obj and obj["rows"] != m.rows) or ("cols" in obj and obj["cols"] != m.cols):
            raise ValueError("SMatrix rows/cols disagree with entries")
        return m

    def __repr__(self):
        return f"SMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def _check_same(a, b):
    if a.rows != b.rows or a.cols != b.cols:
        raise ValueError(f"shape mismatch {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


def matsum(mats, rows, cols) -> SMatrix:
    """Sum of many matrices without repeated dict copies."""
    acc = {}
    for m in mats:
        for r, row in m.data.items():
            tgt = acc.setdefault(r, {})
            for c, x in row.items():
                prev = tgt.get(c)
                tgt[c] = x if prev is None else prev + x
    data = {}
    for r, row in acc.items():
        row = {c: x for c, x in row.items() if not x.is_zero()}
        if row:
            data[r] = row
    return SMatrix(rows, cols, data)


def kron(a: SMatrix, b: SMatrix) -> SMatrix:
    data = {}
    for ra, rowa in a.data.items():
        for rb, rowb in b.data.items():
            row = {}
            for ca, x in rowa.items():
                base = ca * b.cols
                for cb, y in rowb.items():
                    row[base + cb] = x * y
            data[ra * b.rows + rb] = row
    return SMatrix(a.rows * b.rows, a.cols * b.cols, data)


def kron_power(a: SMatrix, n: int) -> SMatrix:
    out = SMatrix.identity(1)
    for _ in range(n):
        out = kron(out, a)
    return out


def embed(r: SMatrix, i: int, n: int, d: int) -> SMatrix:
    """id^{i-1} (x) R (x) id^{n-i-1} on V^{(x)n}."""
    if r.rows != d * d or r.cols != d * d:
        raise ValueError("embed expects an operator on V (x) V")
    if not 1 <= i <= n - 1:
        raise ValueError(f"position {i} out of range for degree {n}")
    out = kron(SMatrix.identity(d ** (i - 1)), r)
    return kron(out, SMatrix.identity(d ** (n - i - 1)))


def ctrace_last(a: SMatrix, c: SMatrix, d: int) -> SMatrix:
    """(result)^{J1}_{I1} = sum_{i,j} C^i_j A^{J1 j}_{I1 i}."""
    m = a.rows // d
    data = {}
    for r, row in a.data.items():
        r1, j = divmod(r, d)
        crow = c.data.get(j)
        if crow is None:
            continue
        for col, x in row.items():
            c1, i = divmod(col, d)
            cij = c.data.get(i, {}).get(j)
            if cij is None:
                continue
            tgt = data.setdefault(r1, {})
            t = x * cij
            prev = tgt.get(c1)
            tgt[c1] = t if prev is None else prev + t
    clean = {}
    for r, row in data.items():
        row = {k: v for k, v in row.items() if not v.is_zero()}
        if row:
            clean[r] = row
    return SMatrix(m, a.cols // d, clean)


# ---------------------------------------------------------------- elimination


def _weight(x: Scalar) -> int:
    return len(x.num) + len(x.den) + (0 if x.val == 0 else 1)


def rref_rows(rows, ncols, pivot_limit=None):
    """Row-reduce sparse rows (dicts col -> Scalar).

    Returns ``(pivots, reduced)`` with ``reduced[k]`` the row whose pivot
    column is ``pivots[k]`` (pivot entry 1, pivot column cleared elsewhere).
    Pivots are only taken in columns ``< pivot_limit``; rows with no such
    entry are dropped.
    """
    limit = ncols if pivot_limit is None else pivot_limit
    work = [dict(r) for r in rows if r]
    pivots = []
    reduced = []
    for row in work:
        for p, prow in zip(pivots, reduced):
            x = row.get(p)
            if x is not None:
                _axpy(row, prow, -x)
        cands = [c for c in row if c < limit]
        if not cands:
            continue
        p = min(cands, key=lambda c: (_weight(row[c]), c))
        inv = row[p].inverse()
        row = {c: v * inv for c, v in row.items()}
        for prow in reduced:
            x = prow.get(p)
            if x is not None:
                _axpy(prow, row, -x)
        pivots.append(p)
        reduced.append(row)
    return pivots, reduced


def _axpy(target: dict, src: dict, a: Scalar):
    for c, v in src.items():
        t = v * a
        prev = target.get(c)
        if prev is None:
            target[c] = t
        else:
            s = prev + t
            if s.is_zero():
                del target[c]
            else:
                target[c] = s


def rank(a: SMatrix) -> int:
    pivots, _ = rref_rows(list(a.data.values()), a.cols)
    return len(pivots)


def nullspace(rows, ncols) -> list:
    """Basis (dicts col -> Scalar) of {x : row . x = 0 for all rows}."""
    pivots, reduced = rref_rows(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = {f: ONE}
        for p, prow in zip(pivots, reduced):
            x = prow.get(f)
            if x is not None:
                vec[p] = -x
        basis.append(vec)
    return basis


def inverse(a: SMatrix) -> SMatrix:
    if a.rows != a.cols:
        raise ValueError("inverse of a non-square matrix")
    n = a.rows
    rows = []
    for r in range(n):
        row = dict(a.data.get(r, {}))
        row[n + r] = ONE
        rows.append(row)
    pivots, reduced = rref_rows(rows, 2 * n, pivot_limit=n)
    if len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    data = {}
    for p, prow in zip(pivots, reduced):
        out = {c - n: v for c, v in prow.items() if c >= n}
        if out:
            data[p] = out
    return SMatrix(n, n, data)


def commutant_basis(generators, size: int | None = None) -> list:
    """Basis of {X : X G = G X for every generator G}."""
    if size is None:
        if not generators:
            raise ValueError("size required without generators")
        size = generators[0].rows
    m = size
    # unknown X[a][b] -> column a*m + b ; equation (XG - GX)[a][c] = 0
    eqs = []
    for g in generators:
        gt = g.transpose()
        for a in range(m):
            for c in range(m):
                eq = {}
                for b, x in gt.data.get(c, {}).items():  # sum_b X[a][b] G[b][c]
                    _acc(eq, a * m + b, x)
                for b, x in g.data.get(a, {}).items():  # - sum_b G[a][b] X[b][c]
                    _acc(eq, b * m + c, -x)
                eq = {k: v for k, v in eq.items() if not v.is_zero()}
                if eq:
                    eqs.append(eq)
    basis = []
    for vec in nullspace(eqs, m * m):
        data = {}
        for k, v in vec.items():
            a, b = divmod(k, m)
            data.setdefault(a, {})[b] = v
        basis.append(SMatrix(m, m, data))
    return basis


def _acc(d: dict, k, x):
    prev = d.get(k)
    d[k] = x if prev is None else prev + x
