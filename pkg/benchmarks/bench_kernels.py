"""Benchmark: pure-Python vs compiled monomial kernels.

Runs the same Groebner-basis workloads in two subprocesses, one with
FLATCHECK_PURE_KERNELS=1 and one without, and reports wall times.

    python3 benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
import flatcheck._kernels as kernels
from flatcheck.rings import PolyRing
from flatcheck.ideals import Ideal
from flatcheck.orders import MonomialOrder

def cyclic(n):
    ring = PolyRing(tuple(f"x{i}" for i in range(n)))
    xs = ring.gens()
    gens = []
    for d in range(1, n):
        f = ring.zero()
        for i in range(n):
            t = ring.one()
            for j in range(d):
                t = t * xs[(i + j) % n]
            f = f + t
        gens.append(f)
    prod = ring.one()
    for x in xs:
        prod = prod * x
    gens.append(prod - 1)
    return ring, gens

def katsura(n):
    ring = PolyRing(tuple(f"x{i}" for i in range(n + 1)))
    xs = ring.gens()
    def x(i):
        return xs[abs(i)]
    gens = []
    for k in range(n):
        f = -x(k)
        for i in range(-n, n + 1):
            j = k - i
            if abs(j) <= n:
                f = f + x(i) * x(j)
        gens.append(f)
    s = -ring.one()
    for i in range(-n, n + 1):
        s = s + x(i)
    gens.append(s)
    return ring, gens

results = {"implementation": kernels.IMPLEMENTATION, "cases": {}}
for name, (ring, gens) in {
    "cyclic-4": cyclic(4),
    "cyclic-5": cyclic(5),
    "katsura-4": katsura(4),
}.items():
    t0 = time.perf_counter()
    gb = Ideal(ring, gens).groebner(MonomialOrder.degrevlex(ring.nvars))
    results["cases"][name] = {
        "seconds": time.perf_counter() - t0,
        "basis_size": len(list(gb)),
    }
print(json.dumps(results))
"""


def run(pure):
    env = dict(os.environ)
    if pure:
        env["FLATCHECK_PURE_KERNELS"] = "1"
    else:
        env.pop("FLATCHECK_PURE_KERNELS", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True
    )
    if out.returncode != 0:
        sys.stderr.write(out.stderr)
        raise SystemExit(out.returncode)
    return json.loads(out.stdout)


def main():
    pure = run(pure=True)
    fast = run(pure=False)
    print(f"{'case':<12} {'pure (s)':>10} {fast['implementation'] + ' (s)':>14} {'speedup':>9}")
    for name, p in pure["cases"].items():
        f = fast["cases"][name]
        assert p["basis_size"] == f["basis_size"], "kernel implementations disagree"
        speedup = p["seconds"] / f["seconds"] if f["seconds"] else float("inf")
        print(f"{name:<12} {p['seconds']:>10.3f} {f['seconds']:>14.3f} {speedup:>8.2f}x")
    if fast["implementation"] == "pure":
        print("note: compiled kernels unavailable; both columns ran the pure kernels")


if __name__ == "__main__":
    main()
