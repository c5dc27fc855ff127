"""Compare the compiled polynomial kernel with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Part 1 times the raw kernels on seeded random integer polynomials.
Part 2 runs an end-to-end workload (Hecke idempotents up to n=4 and a few
HCIZ evaluations) in a subprocess per backend, so the import-time selection
is exercised exactly as in normal use.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from qsuperhaar import _polykern_py as pure

try:
    from qsuperhaar import _polykern as fast
except ImportError:  # extension not built
    fast = None

WORKLOAD = r"""
import random, time
from qsuperhaar import _kernel
from qsuperhaar.hecke import idempotent_report
from qsuperhaar.characters import hciz_lhs, random_point
from qsuperhaar.symmetry import builtin
t = time.perf_counter()
for n in range(5):
    assert idempotent_report(n)["passed"]
sym = builtin("glq:2")
rng = random.Random(0)
for _ in range(3):
    hciz_lhs(sym, random_point(2, rng), random_point(2, rng), 3)
print(_kernel.BACKEND, time.perf_counter() - t)
"""


def random_poly(rng, degree, bound):
    coeffs = [rng.randint(-bound, bound) for _ in range(degree + 1)]
    coeffs[0] = coeffs[0] or 1
    coeffs[-1] = coeffs[-1] or 1
    return tuple(coeffs)


def kernel_cases(rng):
    a = [random_poly(rng, 12, 50) for _ in range(40)]
    b = [random_poly(rng, 9, 50) for _ in range(40)]
    g = [random_poly(rng, 4, 9) for _ in range(40)]
    return {
        "pmul": lambda k: [k.pmul(x, y) for x, y in zip(a, b)],
        "pgcd": lambda k: [k.pgcd(k.pmul(x, z), k.pmul(y, z)) for x, y, z in zip(a, b, g)],
        "pdivexact": lambda k: [k.pdivexact(k.pmul(x, y), y) for x, y in zip(a, b)],
        "padd": lambda k: [k.padd(x, y) for x, y in zip(a, b)],
    }


def bench_kernels(repeat):
    cases = kernel_cases(random.Random(1))
    rows = []
    for name, fn in cases.items():
        t_pure = min(timeit.repeat(lambda: fn(pure), number=20, repeat=repeat))
        t_fast = min(timeit.repeat(lambda: fn(fast), number=20, repeat=repeat)) if fast else float("nan")
        rows.append((name, t_pure, t_fast))
    return rows


def bench_workload():
    out = {}
    for label, extra in (("cython", {}), ("python", {"QSUPERHAAR_PURE_PYTHON": "1"})):
        env = dict(os.environ, **extra)
        res = subprocess.run([sys.executable, "-c", WORKLOAD], capture_output=True, text=True, env=env, check=True)
        backend, secs = res.stdout.split()
        out[label] = (backend, float(secs))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"compiled kernel available: {fast is not None}")
    print(f"{'kernel':<10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, tp, tf in bench_kernels(args.repeat):
        print(f"{name:<10} {tp:>10.4f} {tf:>10.4f} {tp / tf:>8.2f}")
    wl = bench_workload()
    print("\nend-to-end workload (idempotents n<=4, HCIZ glq:2 n=3 x3)")
    for label, (backend, secs) in wl.items():
        print(f"{label:<10} backend={backend:<7} {secs:8.2f} s")
    if wl["cython"][0] == "cython":
        print(f"speedup    {wl['python'][1] / wl['cython'][1]:.2f}x")


if __name__ == "__main__":
    main()
