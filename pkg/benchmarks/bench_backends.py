"""Compare the numba backend against the pure numpy/Python fallback.

The package selects its backend once at import from MWIS_BACKEND (see
mwis._accel), so this script spawns one child process per backend and times
the two hot kernels there: the oracle's subset enumeration and the local
search inner loop.

Usage: python benchmarks/bench_backends.py
"""

import json
import os
import subprocess
import sys

CHILD = r"""
import json, random, time
from mwis import WeightedGraph, brute_force_mwis, ils_run
from mwis._accel import BACKEND

def gnm(seed, n, m, wmax=200):
    rng = random.Random(seed)
    w = [rng.randint(1, wmax) for _ in range(n)]
    edges = set()
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return WeightedGraph(w, sorted(edges))

def dense(seed, n, p):
    rng = random.Random(seed)
    w = [rng.randint(1, 200) for _ in range(n)]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return WeightedGraph(w, edges)

out = {"backend": BACKEND}

g = dense(0, 20, 0.3)
brute_force_mwis(g)  # absorb one-time JIT compilation
t0 = time.perf_counter()
reps = 30
for seed in range(reps):
    brute_force_mwis(dense(seed, 20, 0.3))
out["oracle_n20_ms"] = (time.perf_counter() - t0) / reps * 1e3

g = gnm(1, 2000, 4000)
ils_run(g, iterations=1, seed=0)  # absorb JIT + greedy start
t0 = time.perf_counter()
res = ils_run(g, iterations=300, seed=0)
out["ils_n2000_rounds_per_sec"] = 300 / (time.perf_counter() - t0)
out["ils_weight"] = res.solution.weight

print(json.dumps(out))
"""


def run(backend: str) -> dict:
    env = dict(os.environ, MWIS_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", CHILD], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> None:
    rows = []
    for backend in ("numba", "numpy"):
        try:
            rows.append(run(backend))
        except subprocess.CalledProcessError as exc:
            print(f"{backend} backend failed:\n{exc.stderr}", file=sys.stderr)
    print(f"{'backend':<8} {'oracle n=20 (ms)':>18} {'ILS n=2000 (rounds/s)':>22}")
    for r in rows:
        print(f"{r['backend']:<8} {r['oracle_n20_ms']:>18.2f} "
              f"{r['ils_n2000_rounds_per_sec']:>22.0f}")
    weights = {r["ils_weight"] for r in rows}
    if len(rows) == 2:
        print("identical ILS results:", "yes" if len(weights) == 1 else "NO")


if __name__ == "__main__":
    main()
