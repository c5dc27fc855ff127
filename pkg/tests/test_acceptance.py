"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

The lines are repeated in the pytest terminal summary.
"""
import os
import random
import subprocess
import sys
import time
from math import factorial

from qsuperhaar import combinatorics as cb
from qsuperhaar.characters import (
    character,
    check_orthogonality,
    evaluate,
    hciz_lhs,
    hciz_rhs,
    hook_schur_factored,
    quantum_rank,
    random_point,
)
from qsuperhaar.haar import (
    check_condition_i,
    check_condition_ii,
    check_condition_iii,
    check_recursion,
    integrate_normal,
    welldefined_report,
)
from qsuperhaar.hecke import check_hmap_identity, idempotent_report
from qsuperhaar.scalar import ONE, ZERO
from qsuperhaar.symmetry import BUILTINS, builtin, poincare_prefix, validate


LINES = []


def verdict(number, title, ok, elapsed=None, limit=None, detail=""):
    timed = elapsed is not None and limit is not None
    within = not timed or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    timing = f" [{elapsed:.1f}s < {limit}s]" if timed else ""
    line = f"{status} criterion {number}: {title}{timing}{' ' + detail if detail else ''}"
    LINES.append(line)
    print("\n" + line)
    assert ok, f"criterion {number} failed: {detail}"
    assert within, f"criterion {number} too slow: {elapsed:.1f}s"


def test_criterion_01_symmetry_axioms():
    t = time.perf_counter()
    failed = [name for name in BUILTINS if not validate(builtin(name))["passed"]]
    verdict(1, "symmetry axioms on all built-ins", not failed, time.perf_counter() - t, 30, f"failed={failed}")


def test_criterion_02_idempotents():
    t = time.perf_counter()
    reps = [idempotent_report(n) for n in range(5)]
    bad = [(r["n"], k) for r in reps for k, v in r["checks"].items() if not v]
    verdict(2, "idempotent suite n <= 4", not bad, time.perf_counter() - t, 120, f"bad={bad}")


def test_criterion_03_recursion():
    bad = [(name, n) for name in ("glq:1", "glq:2", "glq:1|1", "glq:2|1")
           for n in range(4) if not check_recursion(builtin(name), n)]
    verdict(3, "P_{n+1}(L_{n+1} - [s-r]) = P_n for n <= 3", not bad, detail=f"bad={bad}")


def test_criterion_04_rank_one_oracle():
    sym = builtin("glq:1")
    diag = all(integrate_normal(sym, (1,) * n, (1,) * n, (1,) * n, (1,) * n) == ONE for n in range(5))
    off = all(integrate_normal(sym, (1,) * a, (1,) * a, (1,) * b, (1,) * b) == ZERO
              for a in range(4) for b in range(4) if a != b)
    verdict(4, "d=1 oracle int(z^n t^n)=1, int(z^a t^b)=0", diag and off)


def test_criterion_05_invariance_conditions():
    bad = []
    for name in BUILTINS:
        sym = builtin(name)
        for n in range(1, 4):
            if not check_condition_i(sym, n):
                bad.append((name, n, "i"))
            if not all(check_condition_ii(sym, n).values()):
                bad.append((name, n, "ii"))
        limit = 3 if sym.d <= 2 else 2
        for n in range(1, limit + 1):
            if not check_condition_iii(sym, n):
                bad.append((name, n, "iii"))
        for n in range(1, 5):
            if not check_hmap_identity(sym, n):
                bad.append((name, n, "h-map identity"))
    verdict(5, "conditions (i)-(iii) and represented h-map identity n <= 4", not bad, detail=f"bad={bad}")


def test_criterion_06_well_definedness():
    t = time.perf_counter()
    reps = {name: welldefined_report(builtin(name), seed=6, count=50) for name in ("glq:1|1", "glq:2", "glq:2|1")}
    ok = all(r["passed"] for r in reps.values()) and reps["glq:1|1"]["odd_cases"] > 0
    detail = ", ".join(f"{k}: odd={r['odd_cases']} nontrivial={r['nontrivial_terms']}" for k, r in reps.items())
    verdict(6, "reorder strategies agree, relation ideal annihilated", ok, time.perf_counter() - t, 180, detail)


def test_criterion_07_hciz():
    t = time.perf_counter()
    bad = []
    for name in ("glq:1", "glq:1|1"):
        sym = builtin(name)
        rng = random.Random(7)
        for _ in range(3):
            M, N = random_point(sym.d, rng), random_point(sym.d, rng)
            for n in range(4):
                if hciz_lhs(sym, M, N, n) != hciz_rhs(sym, M, N, n)[0]:
                    bad.append((name, n))
    sym = builtin("glq:1|1")
    rng = random.Random(8)
    for n in range(1, 4):
        pt = random_point(2, rng)
        for lam in cb.omega_set(1, 1, n):
            if evaluate(sym, character(sym, lam), pt, n) != hook_schur_factored(sym, lam, pt):
                bad.append(("hook-schur", lam))
    verdict(7, "HCIZ lhs = rhs and hook-Schur closed form", not bad, time.perf_counter() - t, 300, f"bad={bad}")


def test_criterion_08_orthogonality():
    sym = builtin("glq:1|1")
    ranks = [lam for n in range(1, 4) for lam in cb.omega_set(1, 1, n) if quantum_rank(sym, lam) != ZERO]
    cases = [(sym, lam) for n in (1, 2) for lam in cb.gamma_set(1, 1, n)]
    cases += [(builtin("glq:1"), (n,)) for n in (1, 2, 3)]
    bad = [(s.name, lam) for s, lam in cases if not check_orthogonality(s, lam)["passed"]]
    verdict(8, "quantum rank vanishes on Omega, matrix-unit orthogonality", not ranks and not bad,
            detail=f"nonzero_ranks={ranks} bad={bad}")


def test_criterion_09_combinatorics():
    hook_ok = all(cb.d_lambda(l) == len(cb.standard_tableaux(l)) for n in range(7) for l in cb.partitions_of(n))
    sum_ok = all(sum(cb.d_lambda(l) ** 2 for l in cb.partitions_of(n)) == factorial(n) for n in range(7))
    prefix = poincare_prefix(builtin("glq:2"), 3)
    verdict(9, "hook formula, sum of squares, Poincare prefix", hook_ok and sum_ok and prefix == [1, 2, 1, 0],
            detail=f"prefix={prefix}")


def test_criterion_10_determinism(tmp_path):
    env = dict(os.environ)
    outs = []
    for k in range(2):
        env["PYTHONHASHSEED"] = str(k)  # different hash seeds must not matter
        res = subprocess.run([sys.executable, "-m", "qsuperhaar", "verify", "--suite", "all", "--seed", "7"],
                             capture_output=True, env=env, check=False)
        outs.append((res.returncode, res.stdout))
    ok = outs[0] == outs[1] and outs[0][0] == 0 and len(outs[0][1]) > 0
    verdict(10, "verify --suite all --seed 7 byte-identical", ok, detail=f"bytes={len(outs[0][1])}")
