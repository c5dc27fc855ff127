import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsuperhaar import combinatorics as cb
from qsuperhaar.characters import (
    KPoint,
    character,
    character_dual,
    character_polynomial,
    check_orthogonality,
    d_calibration,
    elementary_e,
    evaluate,
    format_polynomial,
    hciz_lhs,
    hciz_example_variant_lhs,
    hciz_report,
    hciz_rhs,
    hook_schur_factored,
    hook_schur_factored_dual,
    matrix_units,
    check_units,
    quantum_rank,
    random_point,
    schur,
    schur_monomial,
    complete_h,
)
from qsuperhaar.scalar import P, Q, ZERO, Scalar, q_int
from qsuperhaar.symmetry import builtin

ints = st.integers(-4, 4).map(Scalar.from_int)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4).flatmap(lambda n: st.sampled_from(cb.partitions_of(n))),
       st.lists(ints, min_size=3, max_size=3))
def test_jacobi_trudi_matches_tableaux(mu, xs):
    assert schur(mu, xs) == schur_monomial(mu, xs)


def test_schur_basics():
    xs = [P, Q]
    assert schur((1,), xs) == P + Q
    assert schur((1, 1), xs) == P * Q
    assert schur((1, 1, 1), xs) == ZERO
    assert complete_h(2, xs) == P * P + P * Q + Q * Q
    assert elementary_e(2, xs) == P * Q
    assert elementary_e(3, xs) == ZERO


def test_calibration_report():
    assert d_calibration(builtin("glq:1"))["kappa"] == Q
    assert d_calibration(builtin("glq:2"))["kappa"] == P**3
    assert d_calibration(builtin("glq:1|1"))["kappa"] == P**3
    rep = d_calibration(builtin("glq:2|1"))
    assert not rep["consistent"]
    assert rep["ratios"] == ["p^2", "p^6", "p^6"]


def test_first_character_closed_form():
    m1, m2 = Scalar.from_int(2), Scalar.from_int(3)
    pt = KPoint([m1, m2])
    assert evaluate(builtin("glq:2"), character(builtin("glq:2"), (1,)), pt, 1) == Q * m1 + Q * Q * m2
    assert evaluate(builtin("glq:1|1"), character(builtin("glq:1|1"), (1,)), pt, 1) == Q * m1 - Q * m2


def test_character_polynomial_text():
    sym = builtin("glq:1|1")
    poly = character_polynomial(sym, character(sym, (2,)), 2)
    assert format_polynomial(poly) == "(p^4)*m1^2 + (-p^4)*m1*m2"


@pytest.mark.parametrize("n", [1, 2])
def test_hook_schur_on_omega_11(n):
    sym = builtin("glq:1|1")
    rng = random.Random(n)
    for _ in range(2):
        pt = random_point(2, rng)
        for lam in cb.omega_set(1, 1, n):
            assert evaluate(sym, character(sym, lam), pt, n) == hook_schur_factored(sym, lam, pt)


@pytest.mark.parametrize("name", ["glq:1", "glq:2"])
def test_hook_schur_nonsuper(name):
    sym = builtin(name)
    pt = random_point(sym.d, random.Random(4))
    for n in (1, 2):
        for lam in cb.omega_set(sym.r, 0, n):
            assert evaluate(sym, character(sym, lam), pt, n) == hook_schur_factored(sym, lam, pt)


def test_dual_closed_form_offset_gl11():
    # C-based dual characters differ from the dual closed form by p^n on (1|1)
    sym = builtin("glq:1|1")
    pt = random_point(2, random.Random(9))
    for n in (1, 2):
        for lam in cb.omega_set(1, 1, n):
            assert evaluate(sym, character_dual(sym, lam), pt, n) == P**n * hook_schur_factored_dual(sym, lam, pt)


@pytest.mark.parametrize("name", ["glq:2", "glq:1|1", "glq:2|1"])
def test_power_sum_decomposition(name):
    # S_(1)^n = sum over hook-bounded lambda of d_lambda S_lambda
    sym = builtin(name)
    pt = random_point(sym.d, random.Random(1))
    s1 = evaluate(sym, character(sym, (1,)), pt, 1)
    for n in (2, 3):
        total = ZERO
        for lam in cb.gamma_set(sym.r, sym.s, n):
            total = total + cb.d_lambda(lam) * evaluate(sym, character(sym, lam), pt, n)
        assert total == s1**n


def test_character_independent_of_tableau():
    sym = builtin("glq:2")
    pt = random_point(2, random.Random(2))
    vals = {str(evaluate(sym, character(sym, (2, 1), tableau=t), pt, 3)) for t in cb.standard_tableaux((2, 1))}
    assert len(vals) == 1


def test_quantum_rank_values():
    assert quantum_rank(builtin("glq:2"), (1,)) == q_int(2) / Q**2
    assert quantum_rank(builtin("glq:1"), (2,)) == Q**-2
    for lam in cb.omega_set(1, 1, 2):
        assert quantum_rank(builtin("glq:1|1"), lam) == ZERO


@pytest.mark.parametrize("name, n", [("glq:2", 1), ("glq:2", 2), ("glq:2|1", 2)])
def test_hciz_more_symmetries(name, n):
    sym = builtin(name)
    rng = random.Random(5)
    M, N = random_point(sym.d, rng), random_point(sym.d, rng)
    rep = hciz_report(sym, M, N, n)
    assert rep["equal"]
    assert [x["lambda"] for x in rep["perLambda"]] == [list(l) for l in cb.omega_set(sym.r, sym.s, n)]


def test_hciz_calibration_independent():
    sym = builtin("glq:2")
    M = KPoint([Fraction(1, 2), 3])
    N = KPoint([-2, Fraction(5, 3)])
    assert hciz_lhs(sym, M, N, 2, calibrate=False) == hciz_rhs(sym, M, N, 2, calibrate=False)[0]


def test_hciz_below_rectangle():
    sym = builtin("glq:2|1")
    M = KPoint([1, 2, 3])
    assert hciz_lhs(sym, M, M, 1) == ZERO
    assert hciz_rhs(sym, M, M, 1) == (ZERO, [])


def test_kpoint_json():
    pt = KPoint([Fraction(1, 2), -3])
    assert KPoint.from_json(pt.to_json()).diag == pt.diag
    with pytest.raises(ValueError):
        KPoint.from_json({"x": []})


@pytest.mark.parametrize("name, lam, dim", [("glq:2", (2,), 3), ("glq:2", (1, 1), 1), ("glq:1|1", (2,), 2)])
def test_matrix_units(name, lam, dim):
    units, pivots = matrix_units(builtin(name), lam)
    assert len(pivots) == dim
    assert check_units(units, dim)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1)])
def test_orthogonality_glq2(lam):
    rep = check_orthogonality(builtin("glq:2"), lam)
    assert rep["passed"]
    assert len(rep["rows"]) == rep["dimension"] ** 4


def test_example_variant_differs_from_theorem_form():
    # the variant with the roles of M and N swapped and an unbarred t-word is off by q^-n on glq:1
    sym = builtin("glq:1")
    M, N = KPoint([3]), KPoint([Fraction(2, 5)])
    for n in (1, 2):
        rhs = hciz_rhs(sym, M, N, n)[0]
        assert hciz_example_variant_lhs(sym, M, N, n) == rhs * Q**-n
