"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS / FAIL / SKIP line that is printed in the terminal
summary.  Time limits are wall-clock, measured after the kernels are compiled.
"""
import contextlib
import importlib.util
import itertools
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from gallai import fixtures, oracle, patterns as P
from gallai.coloring import Coloring
from gallai.encode import ConstraintKind, SymmetryBreakMode, build_cnf, decode_witness
from gallai.explore import all_solutions, brute_extend, compare_solution_sets, gallai_search
from gallai.lattice import GridSpec, LatticeKind, cells
from gallai.solve import SolverConfig, Status, f2_build, f2_solve, solve, solve_embedded
from gallai.symmetry import burnside_count, classify

SQ, TRI = LatticeKind.SQUARE, LatticeKind.TRIANGULAR
NM, BAL = ConstraintKind.NOT_MONO, ConstraintKind.BALANCED
FIX = SymmetryBreakMode.FIX_ORIGIN

HAVE_PYSAT = importlib.util.find_spec("pysat") is not None
PYSAT = SolverConfig(engine="external", command=f"{sys.executable} -m gallai.pysat_runner",
                      time_budget=3300.0) if HAVE_PYSAT else None

pytestmark = pytest.mark.usefixtures("warm_kernels")


@contextlib.contextmanager
def criterion(num, title, limit=None):
    notes = []
    t0 = time.perf_counter()
    try:
        yield notes
    except pytest.skip.Exception as exc:
        ACCEPTANCE.append((num, title, "SKIP", "; ".join(notes + [str(exc.msg)])))
        raise
    except BaseException as exc:
        ACCEPTANCE.append((num, title, "FAIL", "; ".join(notes + [f"{type(exc).__name__}: {exc}"])[:300]))
        raise
    elapsed = time.perf_counter() - t0
    notes.append(f"{elapsed:.3f}s")
    if limit is not None and elapsed > limit:
        ACCEPTANCE.append((num, title, "FAIL", "; ".join(notes) + f" exceeds {limit}s"))
        pytest.fail(f"criterion {num} took {elapsed:.1f}s, limit {limit}s")
    ACCEPTANCE.append((num, title, "PASS", "; ".join(notes)))


def counts(kind, fam, con=NM, mmax=8):
    rep = brute_extend(kind, fam, con, mmax)
    return [n for _, n in rep.counts if n], rep.first_empty_m


def test_c01_triangles_similarity():
    with criterion(1, "triangles, similarity", limit=1.0) as notes:
        c, empty = counts(TRI, P.TRI_ALL)
        assert (c, empty) == ([6, 18], 4)
        res = gallai_search(P.TRI_ALL)
        assert res.m0 == 4 and oracle.check(res.witness, P.TRI_ALL).ok
        notes.append(f"counts {c}, empty at {empty}, m0={res.m0}")


def test_c02_triangles_homothety():
    with criterion(2, "triangles, homothety", limit=1.0) as notes:
        for fam in (P.TRI_UP_DOWN, P.TRI_UP):
            assert counts(TRI, fam) == ([6, 18, 36], 5)
        for m in range(1, 5):
            assert compare_solution_sets(P.TRI_UP_DOWN, P.TRI_UP, NM, m).equal
        res = gallai_search(P.TRI_UP_DOWN)
        assert res.m0 == 5 and oracle.check(res.witness, P.TRI_UP_DOWN).ok
        notes.append("counts [6, 18, 36] for both families, equal solution sets m<=4, m0=5")


def test_c03_balanced_squares():
    with criterion(3, "balanced squares", limit=1.0) as notes:
        c, empty = counts(SQ, P.SQ_AXIS, BAL)
        assert (c, empty) == ([6, 8, 8], 5)
        notes.append(f"counts {c}, empty at {empty}")


def test_c04_parity():
    with criterion(4, "parity", limit=1.0) as notes:
        s3 = f2_solve(f2_build(GridSpec(SQ, 3), P.SQ_AXIS))
        assert not s3.feasible
        s2 = f2_solve(f2_build(GridSpec(SQ, 2), P.SQ_AXIS))
        brute2 = sum(sum(a) % 2 == 1 for a in itertools.product((0, 1), repeat=4))
        assert s2.feasible and s2.n_solutions == brute2 == 8
        cfg3 = P.enumerate_array(GridSpec(SQ, 3), P.SQ_AXIS) - 1
        brute3 = sum(all(sum(a[i] for i in c) % 2 == 1 for c in cfg3)
                     for a in itertools.product((0, 1), repeat=9))
        assert brute3 == 0
        notes.append("S_3 infeasible (0 of 512 colorings), S_2 feasible with 8 solutions")


def test_c05_squares_similarity():
    with criterion(5, "squares, similarity", limit=600.0) as notes:
        c, empty = counts(SQ, P.SQ_ALL)
        assert (c, empty) == ([14, 248, 5006, 7120, 56], 7)
        assert solve_embedded(build_cnf(GridSpec(SQ, 7), P.SQ_ALL)).status is Status.UNSAT
        res = gallai_search(P.SQ_ALL)
        assert res.m0 == 7 and oracle.check(res.witness, P.SQ_ALL).ok
        notes.append(f"counts {c}, empty at {empty}, sq-all m=7 UNSAT, m0=7")


def test_c06_squares_homothety():
    with criterion(6, "squares, homothety", limit=5.0) as notes:
        fx = fixtures.get("fig5_s14")
        assert fx.grid == GridSpec(SQ, 14)
        assert oracle.check(fx.coloring(), P.SQ_AXIS).ok
        inst = build_cnf(GridSpec(SQ, 15), P.SQ_AXIS, NM, FIX)
        assert (inst.n_vars, inst.n_clauses) == (225, 2031) == (225, 2 * 1015 + 1)
        assert P.count(GridSpec(SQ, 15), P.SQ_AXIS) == len(P.enumerate_array(GridSpec(SQ, 15), P.SQ_AXIS)) == 1015
        notes.append("fig5_s14 Ok; sq-axis m=15 instance 225 vars / 2031 clauses; UNSAT run not attempted (optional)")


def test_c07_rectangle_similarity():
    with criterion(7, "rectangle similarity", limit=3600.0) as notes:
        res = gallai_search(P.rect_sim(2))
        assert res.m0 == 8 and oracle.check(res.witness, P.rect_sim(2)).ok
        assert res.results[-1]["status"] == "UNSAT"
        notes.append("k=2 m0=8 (embedded)")
        if not HAVE_PYSAT:
            pytest.skip("k=3,4 need an external solver; install python-sat")
        for k, m0 in ((3, 13), (4, 15)):
            r = gallai_search(P.rect_sim(k), NM, PYSAT, m_start=m0 - 2)
            assert r.m0 == m0 and oracle.check(r.witness, P.rect_sim(k)).ok
            notes.append(f"k={k} m0={r.m0} (external)")


SIZE_ROWS = [(P.rect_hom_both(2), 23, 529, 4554, 9109), (P.rect_hom_both(3), 27, 729, 5112, 10225),
         (P.rect_hom_both(4), 28, 784, 4256, 8513), (P.rect_hom(2), 27, 729, 3744, 7489),
         (P.rect_hom(3), 40, 1600, 8697, 17395), (P.rect_hom(4), 52, 2704, 14768, 29537),
         (P.rect_hom(5), 66, 4356, 24687, 49375)]


def test_c08_instance_sizes():
    with criterion(8, "instance sizes", limit=5.0) as notes:
        for fam, m, nv, nr, nc in SIZE_ROWS:
            inst = build_cnf(GridSpec(SQ, m), fam, NM, FIX)
            assert (inst.n_vars, inst.n_configs, inst.n_clauses) == (nv, nr, nc), (fam, m)
        notes.append("all 7 rows exact (vars, configurations, clauses)")


def test_c09_rectangle_homothety():
    with criterion(9, "rectangle homothety", limit=5.0) as notes:
        fx = fixtures.get("fig7_s26_k2")
        assert fx.grid == GridSpec(SQ, 26) and fx.family == P.rect_hom(2)
        assert oracle.check(fx.coloring(), P.rect_hom(2)).ok
        notes.append("fig7_s26_k2 Ok for RectHom(2) at m=26; UNSAT sides optional, not run")


def _sizes(sol, flip):
    return sorted(classify(sol, flip).sizes, reverse=True)


def test_c10_symmetry_classes():
    with criterion(10, "symmetry classes", limit=1800.0) as notes:
        tri3 = (GridSpec(TRI, 3), all_solutions(GridSpec(TRI, 3), P.TRI_ALL))
        assert _sizes(tri3, False) == [6, 6, 3, 3] and _sizes(tri3, True) == [12, 6]
        updown4 = (GridSpec(TRI, 4), all_solutions(GridSpec(TRI, 4), P.TRI_UP_DOWN))
        assert _sizes(updown4, False) == [6] * 6 and _sizes(updown4, True) == [12] * 3
        bal4 = (GridSpec(SQ, 4), all_solutions(GridSpec(SQ, 4), P.SQ_AXIS, BAL))
        assert _sizes(bal4, False) == [4, 4] and _sizes(bal4, True) == [4, 4]
        sq6 = (GridSpec(SQ, 6), all_solutions(GridSpec(SQ, 6), P.SQ_ALL))
        assert _sizes(sq6, False) == [8] * 6 + [4] * 2 and _sizes(sq6, True) == [16] * 3 + [4] * 2
        ax4 = brute_extend(SQ, P.SQ_AXIS, NM, 4, collect_m=4).solutions
        n4 = len(classify(ax4, True).classes)
        assert n4 == burnside_count(ax4, True) == 727
        ax5 = brute_extend(SQ, P.SQ_AXIS, NM, 5, collect_m=5).solutions
        n5 = len(classify(ax5, True).classes)
        assert n5 == burnside_count(ax5, True) == 48974
        notes.append(f"class sizes exact for tri-all m=3, tri-up-down m=4, balanced sq-axis m=4, sq-all m=6; sq-axis m=4 {n4}, m=5 {n5} classes")


def test_c11_hexagons_cubes():
    with criterion(11, "hexagons and cubes", limit=600.0) as notes:
        hexg = GridSpec(LatticeKind.HEX_WINDOW, 94)
        assert hexg.cell_count == len(cells(hexg)) == 8836
        assert build_cnf(hexg, P.HEXAGON, NM, FIX).n_vars == 8836
        for m in range(1, 13):
            inst = build_cnf(GridSpec(LatticeKind.HEX_WINDOW, m), P.HEXAGON, NM, FIX)
            out = solve(inst)
            assert out.status is Status.SAT
            assert oracle.check(decode_witness(inst, out.witness), P.HEXAGON).ok
        inst = build_cnf(GridSpec(LatticeKind.CUBIC, 8), P.CUBE, NM, FIX)
        out = solve(inst)
        assert out.status is Status.SAT and oracle.check(decode_witness(inst, out.witness), P.CUBE).ok
        big = build_cnf(GridSpec(LatticeKind.CUBIC, 180), P.CUBE, NM, FIX, lazy=True)
        assert big.n_vars == 5_832_000 == 180 ** 3
        assert big.n_configs == sum(t ** 3 for t in range(1, 180))
        notes.append("R_94* 8836 cells; H_1..H_12 SAT and oracle-checked; cube n=8 SAT; n=180 instance 5832000 vars")


def test_c12_triple_agreement():
    from _agree import CASES, check_case
    with criterion(12, "encoding/oracle/solver agreement", limit=60.0) as notes:
        for case in CASES:
            check_case(case)
        notes.append(f"{len(CASES)} instances with <=16 cells, exhaustive")
