"""Dihedral grid actions, color flip, and orbit classification of solution sets.

A group element acts on a coloring by ``(g . s)(c) = s(g(c))``.  Elements are
stored as index permutations ``perm`` with ``(g . s).bits = s.bits[perm]``.

Triangular grids use the order-3 rotation
``rho(x, y) = (m-1-y, m-1-y+x)`` and the in-level mirror
``sigma(x, y) = (y-x, y)``; square grids use ``sigma(x, y) = (y, x)`` and
``rho(x, y) = (m-1-y, x)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .coloring import Coloring, render_text
from .lattice import GridSpec, LatticeKind, coord_array, index_grid
from .patterns import Family, FamilyName


class SizeMismatch(ValueError):
    pass


class MixedGrids(ValueError):
    pass


PointMap = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]


def _perm_from_map(grid: GridSpec, fn) -> np.ndarray:
    coords = coord_array(grid)
    table = index_grid(grid)
    images = fn(*coords.T)
    for axis, c in enumerate(images):
        if np.any(c < 0) or np.any(c >= table.shape[axis]):
            raise ValueError(f"map leaves the {grid.kind.value} grid")
    idx = table[tuple(images)]
    if np.any(idx == 0) or len(np.unique(idx)) != len(idx):
        raise ValueError("map is not a bijection on the grid cells")
    return idx - 1


def generator_maps(grid: GridSpec) -> dict[str, np.ndarray]:
    """The two generators ``s`` (mirror) and ``r`` (rotation) as permutations."""
    m = grid.m
    if grid.kind is LatticeKind.TRIANGULAR:
        return {
            "s": _perm_from_map(grid, lambda x, y: (y - x, y)),
            "r": _perm_from_map(grid, lambda x, y: (m - 1 - y, m - 1 - y + x)),
        }
    if grid.kind is LatticeKind.SQUARE:
        return {
            "s": _perm_from_map(grid, lambda x, y: (y, x)),
            "r": _perm_from_map(grid, lambda x, y: (m - 1 - y, x)),
        }
    raise ValueError(f"no dihedral action defined for {grid.kind.value} grids")


@dataclass(frozen=True)
class GroupElement:
    """Word over ``s`` / ``r`` (applied right to left as point maps), optionally composed with color flip."""

    word: str
    m: int
    kind: LatticeKind = LatticeKind.SQUARE
    flip: bool = False

    def permutation(self) -> np.ndarray:
        grid = GridSpec(self.kind, self.m)
        gens = generator_maps(grid)
        perm = np.arange(grid.cell_count)
        for ch in self.word:
            if ch not in gens:
                raise ValueError(f"unknown generator {ch!r} in word {self.word!r}")
            # (w g) . s = s o (w o g): compose on the right
            perm = perm[gens[ch]]
        return perm


def apply(element: GroupElement, coloring: Coloring) -> Coloring:
    if coloring.grid != GridSpec(element.kind, element.m):
        raise SizeMismatch(f"element for {element.kind.value} {element.m} applied to {coloring.grid}")
    bits = coloring.bits[element.permutation()]
    if element.flip:
        bits = 1 - bits
    return Coloring(coloring.grid, bits, coloring.k)


def group_permutations(grid: GridSpec, generators: Sequence[np.ndarray] | None = None) -> np.ndarray:
    """Closure of the generators as a ``(|G|, n)`` array; row 0 is the identity."""
    gens = list(generator_maps(grid).values()) if generators is None else list(generators)
    ident = np.arange(grid.cell_count)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p[g]
                key = q.tobytes()
                if key not in seen:
                    seen[key] = q
                    nxt.append(q)
        frontier = nxt
    return np.stack(list(seen.values()))


def stabilizer_generators(grid: GridSpec, family: Family) -> list[np.ndarray]:
    """Generators of grid symmetries that map ``family`` onto itself.

    Used for lex-leader symmetry breaking, which is only sound for
    symmetries of the whole solution set.
    """
    m = grid.m
    kind = grid.kind
    if kind is LatticeKind.TRIANGULAR:
        return list(generator_maps(grid).values())
    if kind is LatticeKind.SQUARE:
        if family.name in (FamilyName.RECT_HOM, FamilyName.RECT_HOM_ROT):
            # the diagonal mirror swaps the two orientations
            return [_perm_from_map(grid, lambda x, y: (m - 1 - x, y)),
                    _perm_from_map(grid, lambda x, y: (x, m - 1 - y))]
        return list(generator_maps(grid).values())
    if kind is LatticeKind.HEX_WINDOW:
        if m == 1:
            return []
        if m % 2:
            return [_perm_from_map(grid, lambda x, y: (x, m - 1 - y))]
        return [_perm_from_map(grid, lambda x, y: (2 * m - 1 - x, m - 1 - y))]
    return [_perm_from_map(grid, lambda x, y, z: (y, x, z)),
            _perm_from_map(grid, lambda x, y, z: (y, z, x)),
            _perm_from_map(grid, lambda x, y, z: (m - 1 - x, y, z))]


# --------------------------------------------------------------------------
# classification


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack rows of bits into big-endian uint64 words; word order = lexicographic order."""
    n_rows, n = bits.shape
    words = max(1, -(-n // 64))
    padded = np.zeros((n_rows, words * 64), dtype=np.uint8)
    padded[:, :n] = bits
    packed = np.packbits(padded, axis=1, bitorder="big")
    return packed.reshape(n_rows, words, 8).view(">u8").reshape(n_rows, words).astype(np.uint64)


def _lexmin(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = a != b
    first = np.argmax(diff, axis=1)
    rows = np.arange(len(a))
    take_b = diff.any(axis=1) & (b[rows, first] < a[rows, first])
    out = a.copy()
    out[take_b] = b[take_b]
    return out


@dataclass
class OrbitReport:
    classes: list[tuple[Coloring, int]]
    with_flip: bool
    total: int
    group_order: int

    @property
    def sizes(self) -> list[int]:
        return [size for _, size in self.classes]

    def to_json(self) -> str:
        return json.dumps({
            "with_flip": self.with_flip,
            "total": self.total,
            "group_order": self.group_order,
            "n_classes": len(self.classes),
            "class_sizes": self.sizes,
            "classes": [{"size": size, "representative": render_text(rep)} for rep, size in self.classes],
        }, indent=2)


def _as_matrix(solutions) -> tuple[GridSpec, np.ndarray]:
    if isinstance(solutions, tuple) and len(solutions) == 2 and isinstance(solutions[0], GridSpec):
        grid, bits = solutions
        return grid, np.asarray(bits, dtype=np.uint8)
    solutions = list(solutions)
    if not solutions:
        raise ValueError("cannot classify an empty solution set")
    grid = solutions[0].grid
    if any(s.grid != grid for s in solutions):
        raise MixedGrids("all colorings must share one grid")
    return grid, np.stack([s.bits for s in solutions])


def _group(grid: GridSpec, with_flip: bool) -> list[tuple[np.ndarray, bool]]:
    perms = group_permutations(grid)
    elems = [(p, False) for p in perms]
    if with_flip:
        elems += [(p, True) for p in perms]
    return elems


def classify(solutions, with_flip: bool) -> OrbitReport:
    """Partition solutions into orbits of D6/D8 (times color flip when requested).

    ``solutions`` is a list of :class:`Coloring` or a ``(grid, bits)`` pair
    with ``bits`` an ``(N, n)`` 0/1 matrix.
    """
    grid, bits = _as_matrix(solutions)
    if grid.kind not in (LatticeKind.SQUARE, LatticeKind.TRIANGULAR):
        raise ValueError("classification is defined for square and triangular grids only")
    group = _group(grid, with_flip)
    canon = None
    for perm, flip in group:
        img = bits[:, perm]
        if flip:
            img = 1 - img
        key = _pack(img)
        canon = key if canon is None else _lexmin(canon, key)
    uniq, first, counts = np.unique(canon, axis=0, return_index=True, return_counts=True)
    reps = []
    n = grid.cell_count
    for row in uniq:
        raw = np.unpackbits(row.astype(">u8").view(np.uint8), bitorder="big")[:n]
        reps.append(Coloring(grid, raw))
    classes = list(zip(reps, counts.tolist()))
    return OrbitReport(classes, with_flip, int(len(bits)), len(group))


def burnside_count(solutions, with_flip: bool) -> int:
    """Number of orbits by averaging fixed points over the group.

    Only meaningful when the solution set is closed under the group.
    """
    grid, bits = _as_matrix(solutions)
    group = _group(grid, with_flip)
    fixed = 0
    for perm, flip in group:
        img = bits[:, perm]
        if flip:
            img = 1 - img
        fixed += int(np.all(img == bits, axis=1).sum())
    q, r = divmod(fixed, len(group))
    if r:
        raise ValueError("fixed-point total not divisible by group order; set is not closed")
    return q


def is_closed(solutions, perms: Sequence[np.ndarray], with_flip: bool = False) -> bool:
    grid, bits = _as_matrix(solutions)
    keys = {row.tobytes() for row in bits}
    for perm in perms:
        img = bits[:, perm]
        if with_flip:
            img = 1 - img
        if any(row.tobytes() not in keys for row in img):
            return False
    return True
