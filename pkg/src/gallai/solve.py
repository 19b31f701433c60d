"""Deciding and counting CNF instances; parity systems over GF(2)."""
from __future__ import annotations

import enum
import logging
import os
import shlex
import shutil
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _cdcl, patterns
from ._search import count_models_kernel
from .encode import CnfInstance, write_dimacs_to
from .lattice import GridSpec, LatticeKind
from .patterns import Family

log = logging.getLogger(__name__)

SOLVER_ENV = "GALLAI_SOLVER_CMD"


class Status(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"

    @property
    def exit_code(self) -> int:
        return {Status.SAT: 10, Status.UNSAT: 20, Status.UNKNOWN: 3}[self]


class SolverError(RuntimeError):
    pass


class SolverCrash(SolverError):
    pass


class MalformedOutput(SolverError):
    pass


class MissingExecutable(SolverError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class WitnessRejected(SolverError):
    """A solver claimed SAT with an assignment that violates some clause."""


@dataclass
class SolverConfig:
    engine: str = "embedded"  # "embedded" or "external"
    command: str | None = None  # external command template, {cnf} / {proof} placeholders
    time_budget: float | None = None  # seconds
    conflict_budget: int | None = None
    drat_requested: bool = False
    seed: int = 0
    model_limit: int = 10_000_000

    def __post_init__(self):
        if self.engine not in ("embedded", "external"):
            raise ValueError(f"engine must be 'embedded' or 'external', got {self.engine!r}")
        if self.engine == "external" and self.command is None:
            self.command = os.environ.get(SOLVER_ENV)
            if not self.command:
                raise MissingExecutable(f"external engine needs a command (or ${SOLVER_ENV})")


@dataclass
class SolveOutcome:
    status: Status
    witness: list[int] | None = None
    proof_path: str | None = None
    stats: dict = field(default_factory=dict)


def _verify(instance: CnfInstance, witness: list[int]) -> None:
    if not instance.satisfied_by(witness):
        raise WitnessRejected("witness violates at least one clause")


def solve(instance: CnfInstance, config: SolverConfig | None = None) -> SolveOutcome:
    config = config or SolverConfig()
    if config.engine == "external":
        return solve_external(instance, config)
    return solve_embedded(instance, config)


def solve_embedded(instance: CnfInstance, config: SolverConfig | None = None) -> SolveOutcome:
    """Decide ``instance`` with the in-process CDCL kernel.

    The search runs in conflict slices so the wall-clock budget is honoured
    between slices; learnt clauses, activities and phases carry over.
    """
    config = config or SolverConfig()
    t0 = time.perf_counter()
    lits, starts = instance.flat()
    n_vars = instance.n_vars
    act = np.zeros(n_vars + 1, dtype=np.float64)
    phase = np.zeros(n_vars + 1, dtype=np.int8)
    learnt_lits = np.zeros(0, dtype=np.int64)
    learnt_starts = np.zeros(1, dtype=np.int64)
    totals = np.zeros(4, dtype=np.int64)
    slice_size = 20_000
    status = _cdcl.UNKNOWN
    assign = None
    while True:
        limit = slice_size
        if config.conflict_budget is not None:
            left = config.conflict_budget - int(totals[0])
            if left <= 0:
                break
            limit = min(limit, left)
        all_lits = np.concatenate([lits.astype(np.int64), learnt_lits])
        all_starts = np.concatenate([starts, learnt_starts[1:] + len(lits)])
        status, assign, learnt_lits, learnt_starts, stats = _cdcl.solve_kernel(
            all_lits, all_starts, len(starts) - 1, n_vars, act, phase, limit, config.seed)
        totals += stats
        if status != _cdcl.UNKNOWN:
            break
        if config.time_budget is not None and time.perf_counter() - t0 >= config.time_budget:
            break
        slice_size = min(int(slice_size * 1.5), 500_000)
    wall = time.perf_counter() - t0
    info = {"conflicts": int(totals[0]), "decisions": int(totals[1]),
            "propagations": int(totals[2]), "restarts": int(totals[3]), "wall_time": wall}
    if status == _cdcl.SAT:
        witness = [v if assign[v] == 1 else -v for v in range(1, n_vars + 1)]
        _verify(instance, witness)
        return SolveOutcome(Status.SAT, witness, stats=info)
    if status == _cdcl.UNSAT:
        return SolveOutcome(Status.UNSAT, stats=info)
    return SolveOutcome(Status.UNKNOWN, stats=info)


# --------------------------------------------------------------------------
# external solvers


def _build_command(template: str, cnf: str, proof: str | None) -> list[str]:
    parts = shlex.split(template)
    has_cnf = any("{cnf}" in p for p in parts)
    has_proof = any("{proof}" in p for p in parts)
    out = []
    for p in parts:
        if "{proof}" in p and proof is None:
            continue
        out.append(p.replace("{cnf}", cnf).replace("{proof}", proof or ""))
    if not has_cnf:
        out.append(cnf)
        if proof is not None and not has_proof:
            out.append(proof)
    return out


def parse_solver_output(text: str, returncode: int) -> tuple[Status, list[int] | None]:
    """Read SAT-competition output: an ``s`` status line plus ``v`` value lines."""
    status = None
    values: list[int] = []
    for line in text.splitlines():
        if line.startswith("s "):
            word = line[2:].strip().upper()
            if word == "SATISFIABLE":
                status = Status.SAT
            elif word == "UNSATISFIABLE":
                status = Status.UNSAT
            elif word in ("UNKNOWN", "INDETERMINATE"):
                status = Status.UNKNOWN
            else:
                raise MalformedOutput(f"unrecognised status line {line!r}")
        elif line.startswith("v ") or line == "v":
            try:
                values.extend(int(tok) for tok in line[1:].split())
            except ValueError:
                raise MalformedOutput(f"bad value line {line!r}") from None
    if status is None:
        if returncode == 10:
            status = Status.SAT
        elif returncode == 20:
            status = Status.UNSAT
        else:
            raise SolverCrash(f"solver exited with code {returncode} and no status line")
    if status is Status.SAT:
        if not values or values[-1] != 0:
            raise MalformedOutput("SAT answer without a 0-terminated value list")
        return status, [v for v in values if v != 0]
    return status, None


def solve_external(instance: CnfInstance, config: SolverConfig, workdir: str | None = None) -> SolveOutcome:
    """Run a SAT-competition style solver as a child process.

    The DIMACS file goes to a temporary directory (or ``workdir``); with
    ``drat_requested`` the proof path is passed along and returned on UNSAT,
    unchecked.
    """
    template = config.command or os.environ.get(SOLVER_ENV)
    if not template:
        raise MissingExecutable(f"no external solver command (set ${SOLVER_ENV})")
    exe = shlex.split(template)[0]
    if shutil.which(exe) is None and not Path(exe).is_file():
        raise MissingExecutable(f"solver executable {exe!r} not found")
    tmp = None
    if workdir is None:
        tmp = tempfile.mkdtemp(prefix="gallai-")
        workdir = tmp
    cnf_path = os.path.join(workdir, "instance.cnf")
    proof_path = os.path.join(workdir, "proof.drat") if config.drat_requested else None
    with open(cnf_path, "w") as fh:
        write_dimacs_to(instance, fh)
    cmd = _build_command(template, cnf_path, proof_path)
    keep = False
    try:
        t0 = time.perf_counter()
        try:
            proc = subprocess.run(cmd, capture_output=True, text=True, timeout=config.time_budget)
        except subprocess.TimeoutExpired:
            return SolveOutcome(Status.UNKNOWN, stats={"wall_time": time.perf_counter() - t0, "timeout": True})
        except FileNotFoundError as exc:
            raise MissingExecutable(str(exc)) from None
        wall = time.perf_counter() - t0
        status, values = parse_solver_output(proc.stdout, proc.returncode)
        info = {"wall_time": wall, "returncode": proc.returncode}
        if status is Status.SAT:
            _verify(instance, values)
            witness = [v for v in values if abs(v) <= instance.n_vars]
            return SolveOutcome(Status.SAT, witness, stats=info)
        if status is Status.UNSAT:
            proof = proof_path if proof_path and os.path.exists(proof_path) else None
            keep = proof is not None
            return SolveOutcome(Status.UNSAT, proof_path=proof, stats=info)
        return SolveOutcome(Status.UNKNOWN, stats=info)
    finally:
        if tmp is not None:
            if keep:
                os.remove(cnf_path)
            else:
                shutil.rmtree(tmp, ignore_errors=True)


# --------------------------------------------------------------------------
# model counting


def count_models(instance: CnfInstance, config: SolverConfig | None = None,
                 max_vars: int = 40, node_limit: int = 0) -> int:
    """Exact number of satisfying assignments over all ``n_vars`` variables."""
    config = config or SolverConfig()
    if instance.n_vars > max_vars:
        raise BudgetExceeded(f"{instance.n_vars} variables exceed the counting ceiling {max_vars}")
    lits, starts = instance.flat()
    n, exhausted = count_models_kernel(lits.astype(np.int64), starts, instance.n_vars,
                                       config.model_limit, node_limit)
    if exhausted:
        raise BudgetExceeded(f"more than {config.model_limit} models or node budget exhausted")
    return int(n)


# --------------------------------------------------------------------------
# GF(2)


class ArityMismatch(ValueError):
    pass


@dataclass
class F2System:
    """Rows are ``(mask, rhs)``; bit ``i`` of ``mask`` is variable ``i + 1``."""

    n_vars: int
    rows: list[tuple[int, int]]

    def matrix(self) -> np.ndarray:
        out = np.zeros((len(self.rows), self.n_vars), dtype=np.uint8)
        for r, (mask, _) in enumerate(self.rows):
            for i in range(self.n_vars):
                out[r, i] = (mask >> i) & 1
        return out


@dataclass
class F2Result:
    feasible: bool
    solution: list[int] | None = None  # 0/1 per variable
    rank: int = 0
    n_solutions: int = 0


def f2_build(grid: GridSpec, family: Family) -> F2System:
    """One odd-parity equation per configuration."""
    if family.arity != 4:
        raise ArityMismatch(f"{family} does not have 4-vertex configurations")
    if grid.kind is not LatticeKind.SQUARE:
        raise ArityMismatch("parity systems are built on square grids")
    rows = []
    for cfg in patterns.enumerate_array(grid, family).tolist():
        mask = 0
        for v in cfg:
            mask |= 1 << (v - 1)
        rows.append((mask, 1))
    return F2System(grid.cell_count, rows)


def f2_solve(system: F2System) -> F2Result:
    """Gaussian elimination with bitmask rows."""
    pivots: list[tuple[int, int, int]] = []  # (pivot bit, mask, rhs), reduced
    for mask, rhs in system.rows:
        for bit, pmask, prhs in pivots:
            if mask >> bit & 1:
                mask ^= pmask
                rhs ^= prhs
        if mask == 0:
            if rhs:
                return F2Result(False, rank=len(pivots))
            continue
        bit = mask.bit_length() - 1
        # keep earlier pivots reduced against the new one
        pivots = [(b, m ^ mask, r ^ rhs) if m >> bit & 1 else (b, m, r) for b, m, r in pivots]
        pivots.append((bit, mask, rhs))
    rank = len(pivots)
    # free variables at 0: each pivot variable equals its rhs
    sol = [0] * system.n_vars
    for bit, _, rhs in pivots:
        sol[bit] = rhs
    return F2Result(True, sol, rank, 2 ** (system.n_vars - rank))
