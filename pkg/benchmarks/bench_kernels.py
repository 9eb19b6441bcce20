#!/usr/bin/env python3
"""Compare the compiled polynomial kernels against the pure-Python fallback.

Kernel-level workloads call both modules directly; the engine-level workload (the
randomized defect-identity suite, the dominant acceptance cost) is run in a
subprocess per backend so that import-time selection applies.  Usage:

    python benchmarks/bench_kernels.py [--cases 40]
"""

import argparse
import os
import pathlib
import random
import subprocess
import sys
import time
from fractions import Fraction

SRC = str(pathlib.Path(__file__).resolve().parent.parent / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

import jetlift._kernel_py as pure  # noqa: E402

try:
    import jetlift._kernel_c as compiled  # noqa: E402
except ImportError:
    compiled = None


def random_terms(rng, num_vars, num_terms, degree):
    out = {}
    while len(out) < num_terms:
        exps = tuple(rng.randint(0, degree) for _ in range(num_vars))
        out[exps] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 9))
    return out


def time_call(fn, *args, repeat=200):
    best = None
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def kernel_rows():
    rng = random.Random(99)
    rows = []
    for label, nv, terms, deg, repeat in [
        ("mul  8x8 terms, 2 vars", 2, 8, 4, 400),
        ("mul 20x20 terms, 3 vars", 3, 20, 6, 120),
        ("mul 60x60 terms, 3 vars", 3, 60, 8, 20),
    ]:
        a = random_terms(rng, nv, terms, deg)
        b = random_terms(rng, nv, terms, deg)
        t_pure = time_call(pure.mul_terms, a, b, repeat=repeat)
        t_c = (time_call(compiled.mul_terms, a, b, repeat=repeat)
               if compiled else None)
        rows.append((label, t_pure, t_c))
    a = random_terms(rng, 3, 40, 8)
    comps = [random_terms(rng, 3, 4, 3) for _ in range(3)]
    t_pure = time_call(pure.derive_terms, comps, a, repeat=60)
    t_c = time_call(compiled.derive_terms, comps, a, repeat=60) if compiled else None
    rows.append(("derivation 3 vars, 40-term input", t_pure, t_c))
    return rows


ENGINE_SNIPPET = r"""
import random, sys, time
from fractions import Fraction
sys.path.insert(0, {src!r})
from jetlift.algebra import Poly
from jetlift.flows import verify_dj
from jetlift.vectorfields import VectorField
import jetlift
rng = random.Random(1729)

def rand_poly(num_vars, max_degree, max_terms):
    terms = {{}}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_degree) for _ in range(num_vars))
        if sum(e) <= max_degree:
            terms[e] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Poly(num_vars, terms)

def perturb(num_vars, point, order):
    shifted = [Poly.variable(num_vars, k) - point[k] for k in range(num_vars)]
    comps = []
    for _ in range(num_vars):
        exps = [0] * num_vars
        for _ in range(order):
            exps[rng.randrange(num_vars)] += 1
        mono = Poly.one(num_vars)
        for k, e in enumerate(exps):
            mono = mono * shifted[k] ** e
        comps.append(mono * rand_poly(num_vars, 1, 1))
    return VectorField(comps)

cases = {cases}
combos = [(m, n) for m in (1, 2, 3) for n in (1, 2, 3, 4)]
t0 = time.perf_counter()
for i in range(cases):
    m, n = combos[i % len(combos)]
    pt = tuple(Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(m))
    d1 = VectorField([rand_poly(m, 3, 2) for _ in range(m)])
    d2 = d1 + perturb(m, pt, n)
    assert verify_dj(d1, d2, pt, n).agree
print(f"{{jetlift.KERNEL_BACKEND}} {{time.perf_counter() - t0:.3f}}")
"""


def engine_row(cases):
    snippet = ENGINE_SNIPPET.format(src=SRC, cases=cases)
    results = {}
    for backend, env_value in (("python", "1"), ("c", "0")):
        if backend == "c" and compiled is None:
            continue
        env = dict(os.environ, JETLIFT_PURE=env_value)
        out = subprocess.run([sys.executable, "-c", snippet], env=env,
                             capture_output=True, text=True, check=True)
        name, seconds = out.stdout.split()
        assert name == backend, f"backend selection failed: {out.stdout}"
        results[backend] = float(seconds)
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cases", type=int, default=40,
                        help="defect-identity cases for the engine benchmark")
    args = parser.parse_args()

    print(f"compiled kernel available: {'yes' if compiled else 'no'}")
    print()
    print(f"{'workload':38s} {'pure':>9s} {'compiled':>9s} {'speedup':>8s}")
    for label, t_pure, t_c in kernel_rows():
        if t_c is None:
            print(f"{label:38s} {t_pure:8.4f}s {'-':>9s} {'-':>8s}")
        else:
            print(f"{label:38s} {t_pure:8.4f}s {t_c:8.4f}s {t_pure / t_c:7.1f}x")

    results = engine_row(args.cases)
    label = f"defect-identity suite ({args.cases} cases)"
    if "c" in results:
        print(f"{label:38s} {results['python']:8.4f}s {results['c']:8.4f}s "
              f"{results['python'] / results['c']:7.1f}x")
    else:
        print(f"{label:38s} {results['python']:8.4f}s {'-':>9s} {'-':>8s}")


if __name__ == "__main__":
    main()
