"""2-colorings of a grid and their text file format.

File format::

    <kind> <m> [k]
    <row>
    ...

``kind`` is one of ``square``, ``tri``, ``hex``, ``cube``.  Each row is a run
of ``0``/``1`` characters in canonical cell order: square and hexagon rows
have ``m`` characters, triangular row ``y`` has ``y + 1``; cubes emit ``m``
blocks of ``m`` rows (one block per ``z``) separated by blank lines.  The
optional ``k`` is carried through untouched (rectangle side ratio).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import GridSpec, LatticeKind, cell_of, index_of


class ColoringFormatError(ValueError):
    pass


class BadHeader(ColoringFormatError):
    pass


class RowLengthMismatch(ColoringFormatError):
    pass


class BadCharacter(ColoringFormatError):
    pass


@dataclass(frozen=True, eq=False)
class Coloring:
    """Total map cell index -> {0, 1}; ``bits[i - 1]`` is the color of cell ``i``."""

    grid: GridSpec
    bits: np.ndarray
    k: int | None = None

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.shape != (self.grid.cell_count,):
            raise ValueError(f"expected {self.grid.cell_count} bits, got shape {bits.shape}")
        if bits.size and bits.max() > 1:
            raise ValueError("coloring bits must be 0 or 1")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.grid, self.bits.tobytes()))

    def __getitem__(self, cell) -> int:
        return int(self.bits[index_of(self.grid, tuple(cell)) - 1])

    @classmethod
    def from_cells(cls, grid: GridSpec, black, k: int | None = None) -> "Coloring":
        bits = np.zeros(grid.cell_count, dtype=np.uint8)
        for cell in black:
            bits[index_of(grid, tuple(cell)) - 1] = 1
        return cls(grid, bits, k)

    def black_cells(self) -> list[tuple[int, ...]]:
        return [cell_of(self.grid, int(i) + 1) for i in np.flatnonzero(self.bits)]

    def flipped(self) -> "Coloring":
        return Coloring(self.grid, 1 - self.bits, self.k)

    def rows(self) -> list[str]:
        return _rows(self.grid, "".join("01"[b] for b in self.bits.tolist()))


def _row_lengths(grid: GridSpec) -> list[int]:
    m = grid.m
    if grid.kind is LatticeKind.TRIANGULAR:
        return [y + 1 for y in range(m)]
    if grid.kind is LatticeKind.CUBIC:
        return [m] * (m * m)
    return [m] * m


def _rows(grid: GridSpec, flat: str) -> list[str]:
    out, pos = [], 0
    for n in _row_lengths(grid):
        out.append(flat[pos:pos + n])
        pos += n
    return out


def render_text(coloring: Coloring) -> str:
    grid = coloring.grid
    head = f"{grid.kind.value} {grid.m}" + (f" {coloring.k}" if coloring.k is not None else "")
    rows = coloring.rows()
    if grid.kind is LatticeKind.CUBIC:
        m = grid.m
        blocks = ["\n".join(rows[z * m:(z + 1) * m]) for z in range(m)]
        body = "\n\n".join(blocks)
    else:
        body = "\n".join(rows)
    return f"{head}\n{body}\n"


def parse_coloring(text: str) -> Coloring:
    if not text.endswith("\n"):
        raise ColoringFormatError("coloring file must end with a newline")
    lines = text.split("\n")[:-1]
    if not lines:
        raise BadHeader("empty coloring file")
    head = lines[0].split()
    if len(head) not in (2, 3):
        raise BadHeader(f"bad header {lines[0]!r}")
    try:
        kind = LatticeKind.parse(head[0])
        m = int(head[1])
        k = int(head[2]) if len(head) == 3 else None
        grid = GridSpec(kind, m)
    except ValueError as exc:
        raise BadHeader(f"bad header {lines[0]!r}: {exc}") from None
    body = lines[1:]
    if kind is LatticeKind.CUBIC:
        # blank separators between z blocks
        rows = [ln for ln in body if ln.strip()]
    else:
        rows = body
    expected = _row_lengths(grid)
    if len(rows) != len(expected):
        raise RowLengthMismatch(f"expected {len(expected)} rows, got {len(rows)}")
    for y, (row, n) in enumerate(zip(rows, expected)):
        if len(row) != n:
            raise RowLengthMismatch(f"row {y}: expected {n} characters, got {len(row)}")
        bad = set(row) - {"0", "1"}
        if bad:
            raise BadCharacter(f"row {y}: unexpected characters {sorted(bad)}")
    flat = "".join(rows)
    bits = np.frombuffer(flat.encode(), dtype=np.uint8) - ord("0")
    return Coloring(grid, bits, k)
