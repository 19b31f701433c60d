"""The pure-Python fallback must reproduce the jitted results exactly."""
import json
import os
import subprocess
import sys

from gallai._accel import backend

PROBE = r"""
import json
from gallai import patterns as P
from gallai._accel import backend
from gallai.encode import ConstraintKind, SymmetryBreakMode, build_cnf
from gallai.explore import brute_extend
from gallai.lattice import GridSpec, LatticeKind
from gallai.solve import count_models, solve

sq = lambda m: GridSpec(LatticeKind.SQUARE, m)
out = {
    "backend": backend(),
    "brute": brute_extend(LatticeKind.SQUARE, P.SQ_ALL, m_max=4).counts,
    "tri": brute_extend(LatticeKind.TRIANGULAR, P.TRI_UP_DOWN, m_max=6).counts,
    "count": count_models(build_cnf(sq(3), P.SQ_ALL)),
    "rects": P.enumerate_array(sq(9), P.rect_sim(2)).tolist(),
    "hex": int(P.count(GridSpec(LatticeKind.HEX_WINDOW, 9), P.HEXAGON)),
    "o7": solve(build_cnf(sq(7), P.SQ_ALL, ConstraintKind.NOT_MONO, SymmetryBreakMode.FIX_ORIGIN)).status.value,
    "o6": solve(build_cnf(sq(6), P.SQ_ALL, ConstraintKind.NOT_MONO, SymmetryBreakMode.FIX_ORIGIN)).witness,
}
print(json.dumps(out))
"""


def _probe(no_jit: bool) -> dict:
    env = dict(os.environ, GALLAI_NO_JIT="1" if no_jit else "0")
    proc = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout.strip().splitlines()[-1])


def test_fallback_matches_jit():
    py = _probe(True)
    jit = _probe(False)
    assert py.pop("backend") == "python"
    assert jit.pop("backend") == backend()
    assert py == jit
    assert py["o7"] == "UNSAT"
    assert py["brute"] == [[2, 14], [3, 248], [4, 5006]]
