"""Configuration families: the forbidden figures, as vertex-index sets.

Every family is materialised as an ``(n, arity)`` int64 array of sorted
1-based cell indices, rows in lexicographic order, no duplicates.  Skew
families (all triangles, all squares, similar rectangles) are produced by
scanning every base point and offset ``(a, b)`` in ``[-(m-1), m-1]^2`` and
deduplicating; axis-parallel families iterate their explicit ranges.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, TextIO

import numpy as np

from ._accel import njit
from .lattice import GridSpec, LatticeKind, index_grid


class KindMismatch(ValueError):
    pass


class FamilyName(enum.Enum):
    TRI_ALL = "tri-all"
    TRI_UP = "tri-up"
    TRI_DOWN = "tri-down"
    TRI_UP_DOWN = "tri-up-down"
    SQ_ALL = "sq-all"
    SQ_AXIS = "sq-axis"
    RECT_HOM = "rect-hom"
    RECT_HOM_ROT = "rect-hom-rot"
    RECT_HOM_BOTH = "rect-hom-both"
    RECT_SIM = "rect-sim"
    HEXAGON = "hexagon"
    CUBE = "cube"


_KIND = {
    FamilyName.TRI_ALL: LatticeKind.TRIANGULAR,
    FamilyName.TRI_UP: LatticeKind.TRIANGULAR,
    FamilyName.TRI_DOWN: LatticeKind.TRIANGULAR,
    FamilyName.TRI_UP_DOWN: LatticeKind.TRIANGULAR,
    FamilyName.SQ_ALL: LatticeKind.SQUARE,
    FamilyName.SQ_AXIS: LatticeKind.SQUARE,
    FamilyName.RECT_HOM: LatticeKind.SQUARE,
    FamilyName.RECT_HOM_ROT: LatticeKind.SQUARE,
    FamilyName.RECT_HOM_BOTH: LatticeKind.SQUARE,
    FamilyName.RECT_SIM: LatticeKind.SQUARE,
    FamilyName.HEXAGON: LatticeKind.HEX_WINDOW,
    FamilyName.CUBE: LatticeKind.CUBIC,
}

_ARITY = {FamilyName.HEXAGON: 6, FamilyName.CUBE: 8}
for _n in (FamilyName.TRI_ALL, FamilyName.TRI_UP, FamilyName.TRI_DOWN, FamilyName.TRI_UP_DOWN):
    _ARITY[_n] = 3

_RECTS = (FamilyName.RECT_HOM, FamilyName.RECT_HOM_ROT, FamilyName.RECT_HOM_BOTH, FamilyName.RECT_SIM)


@dataclass(frozen=True)
class Family:
    """A named configuration family; rectangle families carry the side ratio ``k``."""

    name: FamilyName
    k: int | None = None

    def __post_init__(self):
        if self.name in _RECTS:
            if self.k is None or int(self.k) < 2:
                raise ValueError(f"{self.name.value} needs an integer k >= 2, got {self.k}")
        elif self.k is not None:
            object.__setattr__(self, "k", None)

    @classmethod
    def parse(cls, name: str, k: int | None = None) -> "Family":
        key = name.strip().lower().replace("_", "-")
        for fam in FamilyName:
            if fam.value == key:
                return cls(fam, k)
        raise ValueError(f"unknown family {name!r}")

    @property
    def kind(self) -> LatticeKind:
        return _KIND[self.name]

    @property
    def arity(self) -> int:
        return _ARITY.get(self.name, 4)

    @property
    def is_skew(self) -> bool:
        return self.name in (FamilyName.TRI_ALL, FamilyName.SQ_ALL, FamilyName.RECT_SIM)

    def __str__(self) -> str:
        return self.name.value if self.k is None else f"{self.name.value}(k={self.k})"


# short constructors used throughout tests and the CLI
TRI_ALL = Family(FamilyName.TRI_ALL)
TRI_UP = Family(FamilyName.TRI_UP)
TRI_DOWN = Family(FamilyName.TRI_DOWN)
TRI_UP_DOWN = Family(FamilyName.TRI_UP_DOWN)
SQ_ALL = Family(FamilyName.SQ_ALL)
SQ_AXIS = Family(FamilyName.SQ_AXIS)
HEXAGON = Family(FamilyName.HEXAGON)
CUBE = Family(FamilyName.CUBE)


def rect_hom(k: int) -> Family:
    return Family(FamilyName.RECT_HOM, k)


def rect_hom_rot(k: int) -> Family:
    return Family(FamilyName.RECT_HOM_ROT, k)


def rect_hom_both(k: int) -> Family:
    return Family(FamilyName.RECT_HOM_BOTH, k)


def rect_sim(k: int) -> Family:
    return Family(FamilyName.RECT_SIM, k)


@dataclass(frozen=True)
class Configuration:
    vertices: tuple[int, ...]
    family: Family
    params: tuple[int, ...] = field(default=(), compare=False)


def _check_kind(grid: GridSpec, family: Family) -> None:
    if family.kind is not grid.kind:
        raise KindMismatch(f"family {family} lives on {family.kind.value} grids, not {grid.kind.value}")


# --------------------------------------------------------------------------
# generation kernels: each returns the number of rows; rows are written only
# when ``out`` has room (call once with an empty array to size it)


@njit
def _gen_tri_all(tab, m, out, par):
    n = 0
    fill = out.shape[0] > 0
    for j in range(m):
        for i in range(j + 1):
            for a in range(-(m - 1), m):
                for b in range(-(m - 1), m):
                    if a == 0 and b == 0:
                        continue
                    x1 = i - a
                    y1 = j + b
                    x2 = i + b
                    y2 = j + a + b
                    if x1 < 0 or y1 >= m or x1 > y1:
                        continue
                    if x2 < 0 or y2 >= m or x2 > y2:
                        continue
                    if fill:
                        out[n, 0] = tab[i, j]
                        out[n, 1] = tab[x1, y1]
                        out[n, 2] = tab[x2, y2]
                        par[n, 0] = i
                        par[n, 1] = j
                        par[n, 2] = a
                        par[n, 3] = b
                    n += 1
    return n


@njit
def _gen_tri_axis(tab, m, up, out, par):
    n = 0
    fill = out.shape[0] > 0
    for j in range(m):
        for i in range(j + 1):
            for a in range(1, m):
                if up:
                    # (i,j), (i+a,j), (i,j-a)
                    if i + a > j:
                        break
                    if fill:
                        out[n, 0] = tab[i, j]
                        out[n, 1] = tab[i + a, j]
                        out[n, 2] = tab[i, j - a]
                else:
                    # (i,j), (i-a,j-a), (i,j-a)
                    if i - a < 0 or i > j - a:
                        break
                    if fill:
                        out[n, 0] = tab[i, j]
                        out[n, 1] = tab[i - a, j - a]
                        out[n, 2] = tab[i, j - a]
                if fill:
                    par[n, 0] = i
                    par[n, 1] = j
                    par[n, 2] = a
                n += 1
    return n


@njit
def _gen_sq_all(tab, m, out, par):
    n = 0
    fill = out.shape[0] > 0
    for j in range(m):
        for i in range(m):
            for a in range(-(m - 1), m):
                for b in range(-(m - 1), m):
                    if a == 0 and b == 0:
                        continue
                    x1 = i + b
                    y1 = j - a
                    x2 = i + a + b
                    y2 = j + b - a
                    x3 = i + a
                    y3 = j + b
                    if x1 < 0 or x1 >= m or y1 < 0 or y1 >= m:
                        continue
                    if x2 < 0 or x2 >= m or y2 < 0 or y2 >= m:
                        continue
                    if x3 < 0 or x3 >= m or y3 < 0 or y3 >= m:
                        continue
                    if fill:
                        out[n, 0] = tab[i, j]
                        out[n, 1] = tab[x1, y1]
                        out[n, 2] = tab[x2, y2]
                        out[n, 3] = tab[x3, y3]
                        par[n, 0] = i
                        par[n, 1] = j
                        par[n, 2] = a
                        par[n, 3] = b
                    n += 1
    return n


@njit
def _gen_axis_rect(tab, m, w, h, out, par):
    """Axis-parallel rectangles of sides (w*d, h*d), d >= 1; squares are w = h = 1."""
    n = 0
    fill = out.shape[0] > 0
    for j in range(m):
        for i in range(m):
            d = 1
            while i + w * d < m and j + h * d < m:
                if fill:
                    out[n, 0] = tab[i, j]
                    out[n, 1] = tab[i + w * d, j]
                    out[n, 2] = tab[i, j + h * d]
                    out[n, 3] = tab[i + w * d, j + h * d]
                    par[n, 0] = i
                    par[n, 1] = j
                    par[n, 2] = d
                n += 1
                d += 1
    return n


@njit
def _gen_rect_sim(tab, m, k, out, par):
    n = 0
    fill = out.shape[0] > 0
    for y in range(m):
        for x in range(m):
            for a in range(-(m - 1), m):
                for b in range(-(m - 1), m):
                    if a == 0 and b == 0:
                        continue
                    x1 = x + a
                    y1 = y + b
                    x2 = x + k * b
                    y2 = y - k * a
                    x3 = x + a + k * b
                    y3 = y + b - k * a
                    if x1 < 0 or x1 >= m or y1 < 0 or y1 >= m:
                        continue
                    if x2 < 0 or x2 >= m or y2 < 0 or y2 >= m:
                        continue
                    if x3 < 0 or x3 >= m or y3 < 0 or y3 >= m:
                        continue
                    if fill:
                        out[n, 0] = tab[x, y]
                        out[n, 1] = tab[x1, y1]
                        out[n, 2] = tab[x2, y2]
                        out[n, 3] = tab[x3, y3]
                        par[n, 0] = x
                        par[n, 1] = y
                        par[n, 2] = a
                        par[n, 3] = b
                    n += 1
    return n


@njit
def _gen_hexagon(tab, m, out, par):
    n = 0
    fill = out.shape[0] > 0
    for y in range(m):
        for x in range(y % 2, 2 * m, 2):
            s = 1
            while x - s >= 0 and x + 3 * s < 2 * m and y + 2 * s < m:
                if fill:
                    out[n, 0] = tab[x, y]
                    out[n, 1] = tab[x + 2 * s, y]
                    out[n, 2] = tab[x, y + 2 * s]
                    out[n, 3] = tab[x + 2 * s, y + 2 * s]
                    out[n, 4] = tab[x - s, y + s]
                    out[n, 5] = tab[x + 3 * s, y + s]
                    par[n, 0] = x
                    par[n, 1] = y
                    par[n, 2] = s
                n += 1
                s += 1
    return n


@njit
def _gen_cube_slab(m, z, out, par):
    """Cubes whose lowest corner sits in layer ``z``; rows come out in sorted order."""
    n = 0
    fill = out.shape[0] > 0
    mm = m * m
    for y in range(m):
        for x in range(m):
            base = z * mm + y * m + x + 1
            s = 1
            while x + s < m and y + s < m and z + s < m:
                if fill:
                    out[n, 0] = base
                    out[n, 1] = base + s
                    out[n, 2] = base + s * m
                    out[n, 3] = base + s * m + s
                    out[n, 4] = base + s * mm
                    out[n, 5] = base + s * mm + s
                    out[n, 6] = base + s * mm + s * m
                    out[n, 7] = base + s * mm + s * m + s
                    par[n, 0] = x
                    par[n, 1] = y
                    par[n, 2] = z
                    par[n, 3] = s
                n += 1
                s += 1
    return n


def _run(gen, arity, nparams, *args):
    empty = np.zeros((0, arity), dtype=np.int64)
    n = gen(*args, empty, np.zeros((0, nparams), dtype=np.int64))
    out = np.empty((n, arity), dtype=np.int64)
    par = np.empty((n, nparams), dtype=np.int64)
    if n:
        gen(*args, out, par)
    return out, par


def _raw(grid: GridSpec, family: Family) -> tuple[np.ndarray, np.ndarray]:
    m = grid.m
    name = family.name
    if name is FamilyName.CUBE:
        parts = [_run(_gen_cube_slab, 8, 4, m, z) for z in range(m)]
        return (np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts]))
    tab = index_grid(grid)
    if name is FamilyName.TRI_ALL:
        return _run(_gen_tri_all, 3, 4, tab, m)
    if name is FamilyName.TRI_UP:
        return _run(_gen_tri_axis, 3, 3, tab, m, True)
    if name is FamilyName.TRI_DOWN:
        return _run(_gen_tri_axis, 3, 3, tab, m, False)
    if name is FamilyName.TRI_UP_DOWN:
        up = _run(_gen_tri_axis, 3, 3, tab, m, True)
        down = _run(_gen_tri_axis, 3, 3, tab, m, False)
        return np.concatenate([up[0], down[0]]), np.concatenate([up[1], down[1]])
    if name is FamilyName.SQ_ALL:
        return _run(_gen_sq_all, 4, 4, tab, m)
    if name is FamilyName.SQ_AXIS:
        return _run(_gen_axis_rect, 4, 3, tab, m, 1, 1)
    k = family.k
    if name is FamilyName.RECT_HOM:
        return _run(_gen_axis_rect, 4, 3, tab, m, 1, k)
    if name is FamilyName.RECT_HOM_ROT:
        return _run(_gen_axis_rect, 4, 3, tab, m, k, 1)
    if name is FamilyName.RECT_HOM_BOTH:
        a = _run(_gen_axis_rect, 4, 3, tab, m, 1, k)
        b = _run(_gen_axis_rect, 4, 3, tab, m, k, 1)
        return np.concatenate([a[0], b[0]]), np.concatenate([a[1], b[1]])
    if name is FamilyName.RECT_SIM:
        return _run(_gen_rect_sim, 4, 4, tab, m, k)
    if name is FamilyName.HEXAGON:
        return _run(_gen_hexagon, 6, 3, tab, m)
    raise KindMismatch(f"no generator for {family}")


def _canonical(verts: np.ndarray, params: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if len(verts) == 0:
        return verts, params
    verts = np.sort(verts, axis=1)
    # primary key: vertex list; ties broken by params so the kept row is deterministic
    keys = [params[:, c] for c in range(params.shape[1] - 1, -1, -1)]
    keys += [verts[:, c] for c in range(verts.shape[1] - 1, -1, -1)]
    order = np.lexsort(keys)
    verts = verts[order]
    params = params[order]
    keep = np.ones(len(verts), dtype=bool)
    keep[1:] = np.any(verts[1:] != verts[:-1], axis=1)
    return np.ascontiguousarray(verts[keep]), np.ascontiguousarray(params[keep])


def enumerate_array(grid: GridSpec, family: Family, with_params: bool = False):
    """All configurations of ``family`` inside ``grid`` as a sorted, deduplicated index array."""
    _check_kind(grid, family)
    verts, params = _canonical(*_raw(grid, family))
    return (verts, params) if with_params else verts


def enumerate(grid: GridSpec, family: Family) -> list[Configuration]:  # noqa: A001
    verts, params = enumerate_array(grid, family, with_params=True)
    return [Configuration(tuple(int(v) for v in row), family, tuple(int(p) for p in pr))
            for row, pr in zip(verts, params)]


def iter_blocks(grid: GridSpec, family: Family, block: int = 1 << 20) -> Iterator[np.ndarray]:
    """Stream the sorted configuration array in blocks of at most ``block`` rows.

    Cubes are generated slab by slab (one ``z`` layer of lowest corners at a
    time), so huge cube grids never need the whole family in memory.
    """
    _check_kind(grid, family)
    if family.name is FamilyName.CUBE:
        for z in range(grid.m):
            rows, _ = _run(_gen_cube_slab, 8, 4, grid.m, z)
            for s in range(0, len(rows), block):
                yield rows[s:s + block]
        return
    rows = enumerate_array(grid, family)
    for s in range(0, len(rows), block):
        yield rows[s:s + block]


def _axis_rect_count(m: int, w: int, h: int) -> int:
    total = 0
    d = 1
    while w * d < m and h * d < m:
        total += (m - w * d) * (m - h * d)
        d += 1
    return total


def count(grid: GridSpec, family: Family) -> int:
    """Number of configurations; closed-form sums for the axis-parallel families."""
    _check_kind(grid, family)
    m = grid.m
    name = family.name
    if name is FamilyName.SQ_AXIS:
        return (m - 1) * m * (2 * m - 1) // 6
    if name is FamilyName.RECT_HOM:
        return _axis_rect_count(m, 1, family.k)
    if name is FamilyName.RECT_HOM_ROT:
        return _axis_rect_count(m, family.k, 1)
    if name is FamilyName.RECT_HOM_BOTH:
        return 2 * _axis_rect_count(m, 1, family.k)
    if name is FamilyName.CUBE:
        return sum((m - s) ** 3 for s in range(1, m))
    if name in (FamilyName.TRI_UP, FamilyName.TRI_DOWN, FamilyName.TRI_UP_DOWN):
        # an up-triangle of side a fits in (m - a)(m - a + 1)/2 positions;
        # a down-triangle of side a in (m - 2a)(m - 2a + 1)/2
        up = sum((m - a) * (m - a + 1) // 2 for a in range(1, m))
        down = sum((m - 2 * a) * (m - 2 * a + 1) // 2 for a in range(1, (m + 1) // 2))
        return {FamilyName.TRI_UP: up, FamilyName.TRI_DOWN: down}.get(name, up + down)
    if name is FamilyName.HEXAGON:
        total = 0
        for s in range(1, (m - 1) // 2 + 1):
            lo, hi = s, 2 * m - 1 - 3 * s
            if hi < lo:
                break
            for y in range(m - 2 * s):
                first = lo + ((y - lo) % 2)
                if first <= hi:
                    total += (hi - first) // 2 + 1
        return total
    # skew families are counted after deduplication
    return len(enumerate_array(grid, family))


# --------------------------------------------------------------------------
# line-oriented text format


def write_configurations(grid: GridSpec, family: Family, out: TextIO) -> int:
    k = family.k if family.k is not None else "-"
    out.write(f"# family={family.name.value} k={k} kind={grid.kind.value} m={grid.m}\n")
    n = 0
    for block in iter_blocks(grid, family):
        out.write("".join(" ".join(map(str, row)) + "\n" for row in block.tolist()))
        n += len(block)
    return n


def read_configurations(text: str) -> tuple[GridSpec, Family, np.ndarray]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing '# family=... k=... kind=... m=...' header")
    fields = dict(tok.split("=", 1) for tok in lines[0][1:].split())
    k = None if fields.get("k", "-") in ("-", "None") else int(fields["k"])
    family = Family.parse(fields["family"], k)
    grid = GridSpec(LatticeKind.parse(fields["kind"]), int(fields["m"]))
    rows = [list(map(int, ln.split())) for ln in lines[1:] if ln.strip()]
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), family.arity)
    return grid, family, arr
