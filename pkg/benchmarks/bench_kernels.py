"""Time the hot kernels under numba and under the plain-Python fallback.

Each backend runs in its own interpreter because the switch is read at
import time.  Usage: ``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
from gallai import patterns
from gallai._accel import backend
from gallai.encode import build_cnf, ConstraintKind, SymmetryBreakMode
from gallai.explore import brute_extend
from gallai.lattice import GridSpec, LatticeKind
from gallai.solve import count_models, solve

repeat = int(sys.argv[1])
cases = {
    "enumerate rect-sim k=2 m=40": lambda: patterns.enumerate_array(GridSpec(LatticeKind.SQUARE, 40), patterns.rect_sim(2)),
    "brute tri-up-down m<=6": lambda: brute_extend(LatticeKind.TRIANGULAR, patterns.TRI_UP_DOWN, m_max=6),
    "brute sq-all m<=5": lambda: brute_extend(LatticeKind.SQUARE, patterns.SQ_ALL, m_max=5),
    "count sq-all m=4": lambda: count_models(build_cnf(GridSpec(LatticeKind.SQUARE, 4), patterns.SQ_ALL)),
    "cdcl sq-all m=7 unsat": lambda: solve(build_cnf(GridSpec(LatticeKind.SQUARE, 7), patterns.SQ_ALL,
                                                      ConstraintKind.NOT_MONO, SymmetryBreakMode.FIX_ORIGIN)),
}
out = {"backend": backend(), "cases": {}}
for name, fn in cases.items():
    t0 = time.perf_counter()
    fn()  # warm-up, includes compilation when jitted
    first = time.perf_counter() - t0
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["cases"][name] = {"first": first, "best": best}
print(json.dumps(out))
"""


def run(no_jit: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["GALLAI_NO_JIT"] = "1" if no_jit else "0"
    proc = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print raw timings")
    args = ap.parse_args()
    jit = run(False, args.repeat)
    py = run(True, args.repeat)
    if args.json:
        print(json.dumps({"numba": jit, "python": py}, indent=2))
        return
    print(f"{'case':32s} {'numba s':>10s} {'python s':>10s} {'speedup':>9s}")
    for name, t in jit["cases"].items():
        a, b = t["best"], py["cases"][name]["best"]
        print(f"{name:32s} {a:10.4f} {b:10.4f} {b / max(a, 1e-9):8.1f}x")


if __name__ == "__main__":
    main()
