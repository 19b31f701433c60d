"""Grid geometries and the cell <-> variable-index bijection.

Four kinds of finite grid are supported:

* ``SQUARE``     -- ``{0..m-1}^2``, cells ``(x, y)``, row-major by ``y`` then ``x``.
* ``TRIANGULAR`` -- level coordinates ``0 <= x <= y < m`` (level ``y`` holds
  ``y + 1`` points), ordered by level then ``x``.
* ``HEX_WINDOW`` -- ``0 <= x < 2m``, ``0 <= y < m``, ``x = y (mod 2)``; the
  sparse ``x`` is compacted to ``t`` with ``x = (y mod 2) + 2t``.
* ``CUBIC``      -- ``{0..m-1}^3``, ordered by ``z``, ``y``, ``x``.

Cell indices are 1-based so that they double as DIMACS variable numbers.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

import numpy as np

Cell = tuple[int, ...]


class InvalidCell(ValueError):
    pass


class LatticeKind(enum.Enum):
    SQUARE = "square"
    TRIANGULAR = "tri"
    HEX_WINDOW = "hex"
    CUBIC = "cube"

    @classmethod
    def parse(cls, name: str) -> "LatticeKind":
        key = name.strip().lower()
        aliases = {"square2d": "square", "sq": "square", "triangular": "tri",
                   "hexwindow": "hex", "hexagon": "hex", "cubic": "cube"}
        key = aliases.get(key, key)
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown lattice kind {name!r}")

    @property
    def dim(self) -> int:
        return 3 if self is LatticeKind.CUBIC else 2


@dataclass(frozen=True)
class GridSpec:
    kind: LatticeKind
    m: int

    def __post_init__(self):
        if int(self.m) < 1:
            raise ValueError(f"grid size must be >= 1, got {self.m}")

    @property
    def cell_count(self) -> int:
        return cell_count(self.kind, self.m)

    def __str__(self) -> str:
        return f"{self.kind.value} {self.m}"


def cell_count(kind: LatticeKind, m: int) -> int:
    if kind is LatticeKind.TRIANGULAR:
        return m * (m + 1) // 2
    if kind is LatticeKind.CUBIC:
        return m ** 3
    return m * m


def contains(grid: GridSpec, cell: Cell) -> bool:
    m = grid.m
    kind = grid.kind
    if kind is LatticeKind.CUBIC:
        if len(cell) != 3:
            return False
        return all(0 <= c < m for c in cell)
    if len(cell) != 2:
        return False
    x, y = cell
    if kind is LatticeKind.SQUARE:
        return 0 <= x < m and 0 <= y < m
    if kind is LatticeKind.TRIANGULAR:
        return 0 <= x <= y < m
    return 0 <= x < 2 * m and 0 <= y < m and (x - y) % 2 == 0


def index_of(grid: GridSpec, cell: Cell) -> int:
    if not contains(grid, cell):
        raise InvalidCell(f"{cell} is not a cell of {grid}")
    m = grid.m
    kind = grid.kind
    if kind is LatticeKind.SQUARE:
        x, y = cell
        return y * m + x + 1
    if kind is LatticeKind.TRIANGULAR:
        x, y = cell
        return y * (y + 1) // 2 + x + 1
    if kind is LatticeKind.HEX_WINDOW:
        x, y = cell
        return y * m + (x - y % 2) // 2 + 1
    x, y, z = cell
    return z * m * m + y * m + x + 1


def cell_of(grid: GridSpec, idx: int) -> Cell:
    n = grid.cell_count
    if not 1 <= idx <= n:
        raise InvalidCell(f"index {idx} out of range 1..{n} for {grid}")
    m = grid.m
    r = idx - 1
    kind = grid.kind
    if kind is LatticeKind.SQUARE:
        return (r % m, r // m)
    if kind is LatticeKind.TRIANGULAR:
        # largest y with y(y+1)/2 <= r
        y = int((np.sqrt(8 * r + 1) - 1) // 2)
        while y * (y + 1) // 2 > r:
            y -= 1
        while (y + 1) * (y + 2) // 2 <= r:
            y += 1
        return (r - y * (y + 1) // 2, y)
    if kind is LatticeKind.HEX_WINDOW:
        y, t = divmod(r, m)
        return (y % 2 + 2 * t, y)
    z, rem = divmod(r, m * m)
    y, x = divmod(rem, m)
    return (x, y, z)


def cells(grid: GridSpec) -> list[Cell]:
    return list(iter_cells(grid))


def iter_cells(grid: GridSpec) -> Iterator[Cell]:
    m = grid.m
    kind = grid.kind
    if kind is LatticeKind.SQUARE:
        for y in range(m):
            for x in range(m):
                yield (x, y)
    elif kind is LatticeKind.TRIANGULAR:
        for y in range(m):
            for x in range(y + 1):
                yield (x, y)
    elif kind is LatticeKind.HEX_WINDOW:
        for y in range(m):
            for t in range(m):
                yield (y % 2 + 2 * t, y)
    else:
        for z in range(m):
            for y in range(m):
                for x in range(m):
                    yield (x, y, z)


def coord_array(grid: GridSpec) -> np.ndarray:
    """Coordinates of all cells as an ``(n, dim)`` int64 array, row ``i`` = index ``i + 1``."""
    m = grid.m
    kind = grid.kind
    if kind is LatticeKind.SQUARE:
        y, x = np.divmod(np.arange(m * m, dtype=np.int64), m)
        return np.stack([x, y], axis=1)
    if kind is LatticeKind.TRIANGULAR:
        ys = np.repeat(np.arange(m, dtype=np.int64), np.arange(1, m + 1))
        starts = ys * (ys + 1) // 2
        xs = np.arange(len(ys), dtype=np.int64) - starts
        return np.stack([xs, ys], axis=1)
    if kind is LatticeKind.HEX_WINDOW:
        y, t = np.divmod(np.arange(m * m, dtype=np.int64), m)
        return np.stack([y % 2 + 2 * t, y], axis=1)
    r = np.arange(m ** 3, dtype=np.int64)
    z, rem = np.divmod(r, m * m)
    y, x = np.divmod(rem, m)
    return np.stack([x, y, z], axis=1)


def index_grid(grid: GridSpec) -> np.ndarray:
    """Dense lookup table ``table[coords] -> index`` (0 marks a non-cell).

    Shape is ``(m, m)`` for square/triangular (indexed ``[x, y]``), ``(2m, m)``
    for the hexagon window, ``(m, m, m)`` for cubes (indexed ``[x, y, z]``).
    """
    m = grid.m
    coords = coord_array(grid)
    if grid.kind is LatticeKind.CUBIC:
        table = np.zeros((m, m, m), dtype=np.int64)
        table[coords[:, 0], coords[:, 1], coords[:, 2]] = np.arange(1, len(coords) + 1)
        return table
    width = 2 * m if grid.kind is LatticeKind.HEX_WINDOW else m
    table = np.zeros((width, m), dtype=np.int64)
    table[coords[:, 0], coords[:, 1]] = np.arange(1, len(coords) + 1)
    return table
