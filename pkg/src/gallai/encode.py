"""Compile (grid, family, constraint) into CNF, with optional symmetry breaking.

Clause layout is fixed so DIMACS output is byte-reproducible: configurations
in :func:`patterns.enumerate_array` order, per configuration the clauses of
its constraint (``NOT_MONO``: positive then negative clause), then the
symmetry-breaking clauses last.
"""
from __future__ import annotations

import enum
import io
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

import numpy as np

from . import patterns
from .coloring import Coloring
from .lattice import GridSpec, LatticeKind
from .patterns import Family
from .symmetry import stabilizer_generators


class ArityMismatch(ValueError):
    pass


class IncompleteAssignment(ValueError):
    pass


class DimacsError(ValueError):
    pass


class ConstraintKind(enum.Enum):
    NOT_MONO = "not-mono"
    BALANCED = "balanced"
    ODD_PARITY = "odd-parity"

    @classmethod
    def parse(cls, name: str) -> "ConstraintKind":
        key = name.strip().lower().replace("_", "-")
        aliases = {"notmonochromatic": "not-mono", "not-monochromatic": "not-mono",
                   "balancedtwotwo": "balanced", "balanced-two-two": "balanced",
                   "oddparity": "odd-parity", "parity": "odd-parity"}
        key = aliases.get(key, key)
        for c in cls:
            if c.value == key:
                return c
        raise ValueError(f"unknown constraint {name!r}")


class SymmetryBreakMode(enum.Enum):
    NONE = "none"
    FIX_ORIGIN = "fix-origin"
    LEX_LEADER = "lex-leader"

    @classmethod
    def parse(cls, name: str) -> "SymmetryBreakMode":
        key = name.strip().lower().replace("_", "-")
        for c in cls:
            if c.value == key:
                return c
        raise ValueError(f"unknown symmetry-break mode {name!r}")


_TRIPLES = np.array(list(itertools.combinations(range(4), 3)))
# sign rows for the eight even-weight assignments of 4 variables: each clause
# is falsified by exactly that assignment
_EVEN = np.array([e for e in itertools.product((0, 1), repeat=4) if sum(e) % 2 == 0])
_PARITY_SIGNS = 1 - 2 * _EVEN

_PER_CONFIG = {ConstraintKind.NOT_MONO: 2, ConstraintKind.BALANCED: 8, ConstraintKind.ODD_PARITY: 8}


def constraint_clauses(configs: np.ndarray, constraint: ConstraintKind) -> np.ndarray:
    """Clause matrix for a block of configurations (uniform clause width)."""
    configs = np.asarray(configs, dtype=np.int64)
    n, arity = configs.shape
    if constraint is ConstraintKind.NOT_MONO:
        out = np.empty((2 * n, arity), dtype=np.int64)
        out[0::2] = configs
        out[1::2] = -configs
        return out
    if arity != 4:
        raise ArityMismatch(f"{constraint.value} needs 4-vertex configurations, got arity {arity}")
    if constraint is ConstraintKind.BALANCED:
        tri = configs[:, _TRIPLES]  # (n, 4, 3)
        out = np.concatenate([-tri, tri], axis=1)  # never three black, never three white
        return out.reshape(8 * n, 3)
    out = configs[:, None, :] * _PARITY_SIGNS[None, :, :]
    return out.reshape(8 * n, 4)


@dataclass(frozen=True, eq=False)
class CnfInstance:
    """A CNF formula, optionally tied to the grid/family it encodes.

    Clauses are the constraint clauses of ``configs`` followed by ``tail``.
    Lazy instances (``configs is None`` with ``n_configs`` set) stream their
    configurations from :func:`patterns.iter_blocks` on demand.
    """

    n_vars: int
    grid: GridSpec | None = None
    family: Family | None = None
    constraint: ConstraintKind | None = None
    break_mode: SymmetryBreakMode = SymmetryBreakMode.NONE
    configs: np.ndarray | None = None
    tail: tuple[tuple[int, ...], ...] = ()
    n_configs: int = 0
    lazy: bool = False
    _flat: list = field(default_factory=list, repr=False)

    @property
    def n_clauses(self) -> int:
        per = _PER_CONFIG[self.constraint] if self.constraint is not None else 0
        return per * self.n_configs + len(self.tail)

    @property
    def n_cells(self) -> int:
        return self.grid.cell_count if self.grid is not None else self.n_vars

    def iter_clause_blocks(self) -> Iterator[np.ndarray | list[tuple[int, ...]]]:
        if self.constraint is not None:
            if self.lazy:
                for block in patterns.iter_blocks(self.grid, self.family):
                    yield constraint_clauses(block, self.constraint)
            elif self.configs is not None and len(self.configs):
                yield constraint_clauses(self.configs, self.constraint)
        if self.tail:
            yield list(self.tail)

    @property
    def clauses(self) -> list[list[int]]:
        out: list[list[int]] = []
        for block in self.iter_clause_blocks():
            out.extend(block.tolist() if isinstance(block, np.ndarray) else [list(c) for c in block])
        return out

    def flat(self) -> tuple[np.ndarray, np.ndarray]:
        """``(lits, starts)``: concatenated literals and clause offsets (``len = n_clauses + 1``)."""
        if self._flat:
            return self._flat[0], self._flat[1]
        if self.lazy:
            raise ValueError("lazy instances cannot be flattened; stream them instead")
        pieces, lengths = [], []
        for block in self.iter_clause_blocks():
            if isinstance(block, np.ndarray):
                pieces.append(block.reshape(-1))
                lengths.append(np.full(len(block), block.shape[1], dtype=np.int64))
            else:
                pieces.append(np.array([l for c in block for l in c], dtype=np.int64))
                lengths.append(np.array([len(c) for c in block], dtype=np.int64))
        lits = np.concatenate(pieces).astype(np.int32) if pieces else np.zeros(0, np.int32)
        lens = np.concatenate(lengths) if lengths else np.zeros(0, np.int64)
        starts = np.zeros(len(lens) + 1, dtype=np.int64)
        np.cumsum(lens, out=starts[1:])
        self._flat.extend([lits, starts])
        return lits, starts

    def satisfied_by(self, assignment) -> bool:
        """Check an assignment given as signed literals; unassigned variables count as false literals."""
        val = _values(assignment, self.n_vars)
        for block in self.iter_clause_blocks():
            arr = block if isinstance(block, np.ndarray) else None
            if arr is None:
                for clause in block:
                    if not any(val[abs(l)] == (l > 0) for l in clause):
                        return False
                continue
            truth = np.where(arr > 0, val[np.abs(arr)] == 1, val[np.abs(arr)] == 0)
            if not truth.any(axis=1).all():
                return False
        return True


def _values(assignment, n_vars: int) -> np.ndarray:
    """Dense vector indexed by variable from signed literals; unassigned slots hold 255."""
    val = np.full(n_vars + 1, 255, dtype=np.uint8)
    lits = np.asarray(list(assignment), dtype=np.int64)
    lits = lits[(lits != 0) & (np.abs(lits) <= n_vars)]
    val[np.abs(lits)] = (lits > 0).astype(np.uint8)
    return val


def lex_leader_clauses(perm: np.ndarray, next_var: int) -> tuple[list[tuple[int, ...]], int]:
    """Clauses asserting ``x <=_lex x o perm`` (variables 1-based, ``perm`` 0-based).

    Auxiliary variable ``e_j`` holds when the two vectors agree on every
    compared position up to ``j``; returns the clauses and the next free
    variable number.
    """
    clauses: list[tuple[int, ...]] = []
    prev = 0  # 0 stands for the constant-true e_0
    n = len(perm)
    moved = [i for i in range(n) if perm[i] != i]
    for pos, i in enumerate(moved):
        x = i + 1
        y = int(perm[i]) + 1
        guard = () if prev == 0 else (-prev,)
        clauses.append(guard + (-x, y))
        if pos == len(moved) - 1:
            break
        e = next_var
        next_var += 1
        clauses.append(guard + (-x, -y, e))
        clauses.append(guard + (x, y, e))
        prev = e
    return clauses, next_var


def build_cnf(grid: GridSpec, family: Family, constraint: ConstraintKind = ConstraintKind.NOT_MONO,
              break_mode: SymmetryBreakMode = SymmetryBreakMode.NONE, lazy: bool = False) -> CnfInstance:
    if constraint is not ConstraintKind.NOT_MONO and family.arity != 4:
        raise ArityMismatch(f"{constraint.value} needs a 4-vertex family, {family} has arity {family.arity}")
    if lazy:
        configs = None
        n_configs = patterns.count(grid, family)
    else:
        configs = patterns.enumerate_array(grid, family)
        n_configs = len(configs)
    n_vars = grid.cell_count
    tail: list[tuple[int, ...]] = []
    if break_mode is not SymmetryBreakMode.NONE:
        # origin is cell (0,0[,0]), always index 1
        tail.append((-1,))
    if break_mode is SymmetryBreakMode.LEX_LEADER:
        next_var = n_vars + 1
        for perm in stabilizer_generators(grid, family):
            extra, next_var = lex_leader_clauses(perm, next_var)
            tail.extend(extra)
        n_vars = next_var - 1
    return CnfInstance(n_vars=n_vars, grid=grid, family=family, constraint=constraint,
                       break_mode=break_mode, configs=configs, tail=tuple(tail),
                       n_configs=n_configs, lazy=lazy)


# --------------------------------------------------------------------------
# DIMACS


def _meta_line(inst: CnfInstance) -> str | None:
    if inst.grid is None:
        return None
    k = inst.family.k if inst.family.k is not None else "-"
    return (f"c gallai kind={inst.grid.kind.value} m={inst.grid.m} family={inst.family.name.value} "
            f"k={k} constraint={inst.constraint.value} break={inst.break_mode.value}")


def write_dimacs_to(inst: CnfInstance, out: TextIO) -> None:
    meta = _meta_line(inst)
    if meta:
        out.write(meta + "\n")
        out.write(f"c cells={inst.n_cells} configurations={inst.n_configs}\n")
    out.write(f"p cnf {inst.n_vars} {inst.n_clauses}\n")
    for block in inst.iter_clause_blocks():
        rows = block.tolist() if isinstance(block, np.ndarray) else block
        out.write("".join(" ".join(map(str, c)) + " 0\n" for c in rows))


def write_dimacs(inst: CnfInstance) -> str:
    buf = io.StringIO()
    write_dimacs_to(inst, buf)
    return buf.getvalue()


def _parse_meta(line: str) -> dict[str, str]:
    return dict(tok.split("=", 1) for tok in line.split()[2:] if "=" in tok)


def parse_dimacs(text: str) -> CnfInstance:
    """Parse DIMACS CNF.  Files written by :func:`write_dimacs` come back as the same instance."""
    meta = None
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("c"):
            if line.startswith("c gallai "):
                meta = _parse_meta(line)
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"bad problem line {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise DimacsError("clause before 'p cnf' line")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > header[0]:
                    raise DimacsError(f"literal {lit} exceeds declared {header[0]} variables")
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if header is None:
        raise DimacsError("missing 'p cnf' line")
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}")
    if meta is not None:
        k = None if meta.get("k", "-") == "-" else int(meta["k"])
        grid = GridSpec(LatticeKind.parse(meta["kind"]), int(meta["m"]))
        family = Family.parse(meta["family"], k)
        inst = build_cnf(grid, family, ConstraintKind.parse(meta["constraint"]),
                         SymmetryBreakMode.parse(meta["break"]))
        if inst.n_vars == header[0] and inst.n_clauses == header[1] and \
                [tuple(c) for c in inst.clauses] == clauses:
            return inst
    return CnfInstance(n_vars=header[0], tail=tuple(clauses))


def decode_witness(instance: CnfInstance, assignment: Iterable[int]) -> Coloring:
    if instance.grid is None:
        raise ValueError("instance carries no grid; cannot decode a coloring")
    n = instance.grid.cell_count
    bits = np.full(n, 255, dtype=np.uint8)
    for lit in assignment:
        lit = int(lit)
        v = abs(lit)
        if 1 <= v <= n:
            bits[v - 1] = 1 if lit > 0 else 0
    missing = np.flatnonzero(bits == 255)
    if len(missing):
        raise IncompleteAssignment(f"{len(missing)} cell variables unassigned (first: {missing[0] + 1})")
    return Coloring(instance.grid, bits, instance.family.k if instance.family else None)
