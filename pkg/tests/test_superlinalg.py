from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsuperhaar.haar import commutant
from qsuperhaar.scalar import ONE, P, ZERO, Scalar
from qsuperhaar.superlinalg import (
    SMatrix,
    commutant_basis,
    ctrace_last,
    decode,
    embed,
    encode,
    inverse,
    kron,
    kron_power,
    multi_indices,
    nullspace,
    rank,
    rref_rows,
    sign,
)
from qsuperhaar.symmetry import builtin


def test_encode_decode():
    assert encode((1,), 3) == 0
    assert encode((2, 1), 2) == 2
    assert decode(5, 2, 3) == (2, 1, 2)
    for idx in multi_indices(3, 3):
        assert decode(encode(idx, 3), 3, 3) == idx


def test_sign_examples():
    par = (0, 1)
    assert sign((1, 2), (2, 1), par) == -1
    assert sign((2, 1), (1, 2), par) == 1
    assert sign((2, 2), (2, 2), par) == 1
    with pytest.raises(ValueError):
        sign((), (), par)
    with pytest.raises(ValueError):
        sign((1,), (1, 2), par)


idx_pairs = st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(1, 3), min_size=n, max_size=n),
        st.lists(st.integers(1, 3), min_size=n, max_size=n),
    )
)


@settings(max_examples=150, deadline=None)
@given(idx_pairs)
def test_sign_swap_relation(pair):
    # not symmetric in general: the defect counts odd index pairs
    par = (0, 1, 1)
    I, J = pair
    k = sum(1 for i, j in zip(I, J) if (par[i - 1] + par[j - 1]) % 2)
    assert sign(I, J, par) * sign(J, I, par) == (-1) ** (k * (k - 1) // 2)
    assert sign(I, I, par) == 1


small = st.integers(-3, 3).map(Scalar.from_int)


def dense(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n).map(SMatrix.from_dense)


@settings(max_examples=40, deadline=None)
@given(dense(2), dense(2), dense(3), dense(3))
def test_kron_mixed_product(a, b, c, d):
    assert kron(a, c) @ kron(b, d) == kron(a @ b, c @ d)


@settings(max_examples=40, deadline=None)
@given(dense(3))
def test_inverse_when_invertible(a):
    if rank(a) < 3:
        with pytest.raises(ZeroDivisionError):
            inverse(a)
    else:
        assert a @ inverse(a) == SMatrix.identity(3)


def test_symbolic_inverse():
    a = SMatrix.from_dense([[P, ONE], [ONE, ZERO]])
    assert inverse(a) == SMatrix.from_dense([[ZERO, ONE], [ONE, -P]])


def test_rank_nullspace():
    a = SMatrix.from_dense([[ONE, 2 * ONE, 3 * ONE], [2 * ONE, 4 * ONE, 6 * ONE]])
    assert rank(a) == 1
    ns = nullspace([a.data.get(r, {}) for r in range(2)], 3)
    assert len(ns) == 2
    for v in ns:
        assert sum((a.get(0, c) * x for c, x in v.items()), ZERO).is_zero()


def test_rref_pivots():
    rows = [{0: ONE, 1: ONE}, {1: ONE}, {0: 2 * ONE, 1: 3 * ONE}]
    pivots, basis = rref_rows(rows, 2)
    assert sorted(pivots) == [0, 1]
    assert len(basis) == 2


def test_kron_power_and_embed():
    d = SMatrix.diagonal([ONE, P])
    assert kron_power(d, 0) == SMatrix.identity(1)
    assert kron_power(d, 2) == SMatrix.diagonal([ONE, P, P, P * P])
    sym = builtin("glq:2")
    r12 = embed(sym.R, 1, 3, 2)
    assert r12 == kron(sym.R, SMatrix.identity(2))
    assert embed(sym.R, 2, 3, 2) == kron(SMatrix.identity(2), sym.R)


def test_ctrace_last_of_identity():
    sym = builtin("glq:2")
    got = ctrace_last(SMatrix.identity(4), sym.C, 2)
    assert got == SMatrix.identity(2, sym.trace_C())


def test_commutant_dimension_glq2():
    # full commutant of the R-action on V(x)V is 3^2 + 1^2; the Hecke image has dimension 2
    sym = builtin("glq:2")
    assert len(commutant(sym, 2)) == 10
    flat = SMatrix.from_dense(
        [[m.get(r, c) for r in range(4) for c in range(4)] for m in (SMatrix.identity(4), sym.R)]
    )
    assert rank(flat) == 2


def test_commutant_basis_of_scalar_generator():
    basis = commutant_basis([SMatrix.identity(2, Scalar.from_fraction(Fraction(3, 2)))], 2)
    assert len(basis) == 4


def test_json_round_trip():
    a = SMatrix.from_dense([[P, ZERO], [ONE / (1 + P), -ONE]])
    assert SMatrix.from_json(a.to_json()) == a
