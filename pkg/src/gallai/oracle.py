"""Solver-independent verification of colorings against configuration families."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import patterns
from .coloring import BadCharacter, BadHeader, Coloring, RowLengthMismatch, parse_coloring, render_text
from .encode import ConstraintKind
from .lattice import cell_of
from .patterns import Configuration, Family

__all__ = ["Verdict", "check", "check_all", "violations_mask", "parse_coloring", "render_text",
           "BadHeader", "BadCharacter", "RowLengthMismatch"]


@dataclass(frozen=True)
class Verdict:
    ok: bool
    configuration: Configuration | None = None
    detail: str | None = None  # AllZero | AllOne | Unbalanced | EvenParity
    count: int | None = None  # number of black vertices in the violating configuration

    def __bool__(self) -> bool:
        return self.ok

    def describe(self, coloring: Coloring) -> str:
        if self.ok:
            return "Ok"
        cells = [cell_of(coloring.grid, v) for v in self.configuration.vertices]
        extra = f"({self.count})" if self.detail == "Unbalanced" else ""
        return f"Violation {self.detail}{extra} at " + " ".join(str(c).replace(" ", "") for c in cells)


def violations_mask(sums: np.ndarray, arity: int, constraint: ConstraintKind) -> np.ndarray:
    if constraint is ConstraintKind.NOT_MONO:
        return (sums == 0) | (sums == arity)
    if constraint is ConstraintKind.BALANCED:
        return sums != 2
    return sums % 2 == 0


def _detail(total: int, arity: int, constraint: ConstraintKind) -> str:
    if constraint is ConstraintKind.NOT_MONO:
        return "AllZero" if total == 0 else "AllOne"
    if constraint is ConstraintKind.BALANCED:
        return "Unbalanced"
    return "EvenParity"


def _scan(coloring: Coloring, family: Family, constraint: ConstraintKind, first_only: bool):
    grid = coloring.grid
    if family.kind is not grid.kind:
        raise patterns.KindMismatch(f"family {family} does not live on {grid.kind.value} grids")
    if constraint is not ConstraintKind.NOT_MONO and family.arity != 4:
        raise ValueError(f"{constraint.value} needs a 4-vertex family")
    bits = coloring.bits
    found = []
    for block in patterns.iter_blocks(grid, family):
        sums = bits[block - 1].sum(axis=1, dtype=np.int64)
        bad = np.flatnonzero(violations_mask(sums, family.arity, constraint))
        for i in bad[:1] if first_only else bad:
            total = int(sums[i])
            found.append(Verdict(False, Configuration(tuple(int(v) for v in block[i]), family),
                                 _detail(total, family.arity, constraint), total))
        if first_only and found:
            break
    return found


def check(coloring: Coloring, family: Family,
          constraint: ConstraintKind = ConstraintKind.NOT_MONO) -> Verdict:
    """First violated configuration in enumeration order, or ``Verdict(ok=True)``."""
    found = _scan(coloring, family, constraint, first_only=True)
    return found[0] if found else Verdict(True)


def check_all(coloring: Coloring, family: Family,
              constraint: ConstraintKind = ConstraintKind.NOT_MONO) -> list[Verdict]:
    """Every violation (diagnostics)."""
    return _scan(coloring, family, constraint, first_only=False)
