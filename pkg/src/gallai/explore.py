"""Layer-by-layer extension counting and the minimal-UNSAT grid search."""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field

import numpy as np

from . import oracle, patterns
from ._search import extend_kernel
from .coloring import Coloring, render_text
from .encode import ConstraintKind, SymmetryBreakMode, build_cnf, decode_witness
from .lattice import GridSpec, LatticeKind, index_grid
from .patterns import Family
from .solve import BudgetExceeded, SolverConfig, Status, solve

log = logging.getLogger(__name__)

_PRED = {ConstraintKind.NOT_MONO: 0, ConstraintKind.BALANCED: 1, ConstraintKind.ODD_PARITY: 2}


class UnsupportedKind(ValueError):
    pass


class LimitReached(RuntimeError):
    def __init__(self, message: str, last_witness: Coloring | None, report: dict):
        super().__init__(message)
        self.last_witness = last_witness
        self.report = report


class SolverUnknown(RuntimeError):
    def __init__(self, message: str, m: int, report: dict):
        super().__init__(message)
        self.m = m
        self.report = report


@dataclass
class ExtensionReport:
    counts: list[tuple[int, int]]
    first_empty_m: int | None
    solutions: tuple[GridSpec, np.ndarray] | None = None

    def line(self) -> str:
        return " ".join(f"{m}:{n}" for m, n in self.counts)


def layer_order(kind: LatticeKind, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Cell indices of the ``m``-grid in growth order, plus cumulative layer ends.

    Triangular grids grow by one level; square grids by a new top row and
    right column (``2m - 1`` cells for layer ``m``).
    """
    grid = GridSpec(kind, m)
    if kind is LatticeKind.TRIANGULAR:
        order = np.arange(1, grid.cell_count + 1, dtype=np.int64)
        ends = np.array([(j + 1) * (j + 2) // 2 for j in range(m)], dtype=np.int64)
        return order, ends
    if kind is not LatticeKind.SQUARE:
        raise UnsupportedKind(f"layered extension is defined for square and triangular grids, not {kind.value}")
    tab = index_grid(grid)
    order = []
    ends = []
    for L in range(1, m + 1):
        top = L - 1
        order.extend(tab[x, top] for x in range(L))
        order.extend(tab[top, y] for y in range(L - 1))
        ends.append(len(order))
    return np.array(order, dtype=np.int64), np.array(ends, dtype=np.int64)


def _prepare(kind: LatticeKind, family: Family, constraint: ConstraintKind, m_max: int):
    if kind not in (LatticeKind.SQUARE, LatticeKind.TRIANGULAR):
        raise UnsupportedKind(f"brute_extend supports square and triangular grids, not {kind.value}")
    if family.kind is not kind:
        raise patterns.KindMismatch(f"family {family} does not live on {kind.value} grids")
    if constraint is not ConstraintKind.NOT_MONO and family.arity != 4:
        raise ValueError(f"{constraint.value} needs a 4-vertex family")
    grid = GridSpec(kind, m_max)
    order, ends = layer_order(kind, m_max)
    pos_of = np.empty(grid.cell_count + 1, dtype=np.int64)
    pos_of[order] = np.arange(len(order))
    cfg = pos_of[patterns.enumerate_array(grid, family)]
    if len(cfg) == 0:
        cfg = np.zeros((0, family.arity), dtype=np.int64)
    owner = cfg.max(axis=1) if len(cfg) else np.zeros(0, dtype=np.int64)
    srt = np.argsort(owner, kind="stable")
    return grid, order, ends, np.ascontiguousarray(cfg[srt]), np.ascontiguousarray(owner[srt])


def brute_extend(kind: LatticeKind, family: Family, constraint: ConstraintKind = ConstraintKind.NOT_MONO,
                 m_max: int = 8, collect_m: int | None = None, node_limit: int = 0) -> ExtensionReport:
    """Count every avoiding coloring of the ``m``-grid for ``m = 2 .. m_max``.

    The search stops at the first empty size.  With ``collect_m`` the
    solutions of that size are returned as a ``(grid, bits)`` pair in
    canonical cell order.
    """
    grid, order, ends, cfg, owner = _prepare(kind, family, constraint, m_max)
    empty = np.zeros((0, 1), dtype=np.int8)
    counts, _, exhausted = extend_kernel(cfg, owner, family.arity, _PRED[constraint], ends,
                                         -1, empty, node_limit)
    if exhausted:
        raise BudgetExceeded(f"node budget {node_limit} exhausted")
    report = []
    first_empty = None
    for m in range(2, m_max + 1):
        n = int(counts[m - 1])
        report.append((m, n))
        if n == 0:
            first_empty = m
            break
    solutions = None
    if collect_m is not None:
        if not 1 <= collect_m <= m_max:
            raise ValueError(f"collect_m must lie in 1..{m_max}")
        n_sol = int(counts[collect_m - 1])
        buf = np.zeros((n_sol, int(ends[collect_m - 1])), dtype=np.int8)
        _, got, _ = extend_kernel(cfg, owner, family.arity, _PRED[constraint], ends[:collect_m],
                                  collect_m - 1, buf, 0)
        sub = GridSpec(kind, collect_m)
        # positions of the first layers are cells of the smaller grid; re-index canonically
        sub_tab = index_grid(sub)
        from .lattice import cell_of
        canon = np.empty(len(buf[0]) if n_sol else 0, dtype=np.int64)
        for p in range(len(canon)):
            cell = cell_of(grid, int(order[p]))
            canon[p] = sub_tab[cell] - 1
        bits = np.zeros((got, sub.cell_count), dtype=np.uint8)
        if got:
            bits[:, canon] = buf[:got]
        solutions = (sub, bits)
    return ExtensionReport(report, first_empty, solutions)


def all_solutions(grid: GridSpec, family: Family, constraint: ConstraintKind = ConstraintKind.NOT_MONO,
                  max_cells: int = 40) -> np.ndarray:
    """Every avoiding coloring of ``grid`` as an ``(N, cells)`` 0/1 matrix."""
    if grid.cell_count > max_cells:
        raise BudgetExceeded(f"{grid.cell_count} cells exceed the enumeration ceiling {max_cells}")
    rep = brute_extend(grid.kind, family, constraint, grid.m, collect_m=grid.m)
    return rep.solutions[1]


# --------------------------------------------------------------------------


@dataclass
class GallaiResult:
    family: Family
    constraint: ConstraintKind
    m0: int
    witness: Coloring | None
    proof_path: str | None = None
    results: list[dict] = field(default_factory=list)

    def to_json(self, witness_file: str | None = None) -> str:
        return json.dumps(_report(self.family, self.constraint, self.results, self.m0,
                                  witness_file, self.proof_path), indent=2)


def _report(family, constraint, results, m0=None, witness_file=None, proof_file=None) -> dict:
    out = {"family": family.name.value, "k": family.k, "constraint": constraint.value, "results": results}
    if m0 is not None:
        out["m0"] = m0
    if witness_file:
        out["witness_file"] = witness_file
    if proof_file:
        out["proof_file"] = proof_file
    return out


def gallai_search(family: Family, constraint: ConstraintKind = ConstraintKind.NOT_MONO,
                  solver: SolverConfig | None = None, m_start: int = 1, m_limit: int = 30,
                  break_mode: SymmetryBreakMode = SymmetryBreakMode.FIX_ORIGIN) -> GallaiResult:
    """Smallest ``m`` whose instance is UNSAT, with an oracle-checked witness at ``m - 1``."""
    if m_start < 1:
        raise ValueError("m_start must be >= 1")
    solver = solver or SolverConfig()
    results: list[dict] = []
    witnesses: dict[int, Coloring] = {}

    def run(m: int) -> Status:
        grid = GridSpec(family.kind, m)
        inst = build_cnf(grid, family, constraint, break_mode)
        t0 = time.perf_counter()
        out = solve(inst, solver)
        entry = {"m": m, "status": out.status.value, "wall_ms": round(1000 * (time.perf_counter() - t0), 1)}
        log.info("%s m=%d -> %s", family, m, out.status.value)
        if out.status is Status.SAT:
            col = decode_witness(inst, out.witness)
            verdict = oracle.check(col, family, constraint)
            if not verdict.ok:
                raise AssertionError(f"solver witness at m={m} fails the oracle: {verdict.describe(col)}")
            witnesses[m] = col
        elif out.status is Status.UNSAT and out.proof_path:
            entry["proof_file"] = out.proof_path
        results.append(entry)
        if out.status is Status.UNKNOWN:
            raise SolverUnknown(f"solver budget exhausted at m={m}; result inconclusive", m,
                                _report(family, constraint, results))
        return out.status

    m = m_start
    proof = None
    while True:
        if m > m_limit:
            last = witnesses.get(m - 1)
            raise LimitReached(f"no UNSAT size up to m={m_limit}", last, _report(family, constraint, results))
        if run(m) is Status.UNSAT:
            proof = results[-1].get("proof_file")
            break
        m += 1
    m0 = m
    # started inside the UNSAT region: walk down to the first SAT size
    while m0 - 1 >= 1 and (m0 - 1) not in witnesses:
        if run(m0 - 1) is Status.UNSAT:
            m0 -= 1
            proof = results[-1].get("proof_file")
    results.sort(key=lambda r: r["m"])
    return GallaiResult(family, constraint, m0, witnesses.get(m0 - 1), proof, results)


# --------------------------------------------------------------------------


@dataclass
class Comparison:
    equal: bool
    witness: Coloring | None = None
    n_first: int = 0
    n_second: int = 0


def compare_solution_sets(family1: Family, family2: Family, constraint: ConstraintKind, m: int,
                          max_cells: int = 40) -> Comparison:
    """Exact comparison of the avoiding-coloring sets of two families on one grid."""
    if family1.kind is not family2.kind:
        raise patterns.KindMismatch("families live on different lattices")
    grid = GridSpec(family1.kind, m)
    a = all_solutions(grid, family1, constraint, max_cells)
    b = all_solutions(grid, family2, constraint, max_cells)
    sa = {row.tobytes() for row in a}
    sb = {row.tobytes() for row in b}
    diff = sorted(sa ^ sb)
    if not diff:
        return Comparison(True, None, len(sa), len(sb))
    bits = np.frombuffer(diff[0], dtype=np.uint8)
    return Comparison(False, Coloring(grid, bits), len(sa), len(sb))


def witness_text(result: GallaiResult) -> str | None:
    return render_text(result.witness) if result.witness is not None else None
