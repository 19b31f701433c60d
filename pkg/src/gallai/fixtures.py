"""Reference colorings, stored as black-cell coordinate lists.

Triangular drawings put level 0 at the top; the lists below are
already converted to level coordinates ``(x, y)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .coloring import Coloring
from .encode import ConstraintKind
from .lattice import GridSpec, LatticeKind
from .patterns import Family, SQ_ALL, SQ_AXIS, TRI_ALL, TRI_UP_DOWN, rect_hom


@dataclass(frozen=True)
class Fixture:
    name: str
    grid: GridSpec
    family: Family
    constraint: ConstraintKind
    black: tuple[tuple[int, int], ...]
    caption: str

    def coloring(self) -> Coloring:
        return Coloring.from_cells(self.grid, self.black, self.family.k)


def _pairs(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for tok in text.replace("\n", " ").split(","):
        tok = tok.strip()
        if tok:
            x, y = tok.split("/")
            out.append((int(x), int(y)))
    return tuple(out)


_FIG5 = """
0/12, 0/9, 0/8, 0/7, 0/6, 0/3, 0/1,
1/10, 1/9, 1/7, 1/5, 1/3, 1/2,
2/12, 2/11, 2/10, 2/8, 2/7, 2/2, 2/1,
3/13, 3/12, 3/7, 3/6, 3/4, 3/2, 3/0,
4/12, 4/11, 4/9, 4/7, 4/5, 4/4,
5/12, 5/10, 5/9, 5/4, 5/3, 5/1, 5/0,
6/9, 6/8, 6/6, 6/5, 6/4, 6/2, 6/1,
7/13, 7/11, 7/9, 7/7, 7/6, 7/1, 7/0,
8/12, 8/11, 8/6, 8/5, 8/3, 8/2, 8/1,
9/11, 9/10, 9/8, 9/7, 9/6, 9/4, 9/3,
10/13, 10/12, 10/11, 10/9, 10/8, 10/3, 10/2, 10/0,
11/13, 11/8, 11/7, 11/5, 11/4, 11/3, 11/1, 11/0,
12/13, 12/12, 12/10, 12/8, 12/6, 12/5, 12/0,
13/13, 13/11, 13/10, 13/5, 13/4, 13/2, 13/0
"""

_FIG7 = """
2/0, 3/0, 4/0, 5/0, 8/0, 11/0, 12/0, 15/0, 16/0, 17/0, 18/0, 21/0, 24/0, 25/0,
1/1, 2/1, 6/1, 7/1, 8/1, 10/1, 12/1, 14/1, 15/1, 19/1, 20/1, 21/1, 23/1, 25/1,
0/2, 3/2, 5/2, 7/2, 10/2, 12/2, 13/2, 16/2, 18/2, 20/2, 23/2, 25/2,
0/3, 2/3, 3/3, 4/3, 7/3, 12/3, 13/3, 15/3, 16/3, 17/3, 20/3, 25/3,
0/4, 2/4, 5/4, 6/4, 7/4, 8/4, 13/4, 15/4, 18/4, 19/4, 20/4, 21/4,
4/5, 5/5, 6/5, 7/5, 9/5, 11/5, 12/5, 17/5, 18/5, 19/5, 20/5, 22/5, 24/5, 25/5,
0/6, 1/6, 2/6, 3/6, 6/6, 10/6, 11/6, 13/6, 14/6, 15/6, 16/6, 19/6, 23/6, 24/6,
1/7, 3/7, 4/7, 6/7, 9/7, 10/7, 12/7, 14/7, 16/7, 17/7, 19/7, 22/7, 23/7, 25/7,
1/8, 3/8, 5/8, 8/8, 9/8, 10/8, 14/8, 16/8, 18/8, 21/8, 22/8, 23/8,
1/9, 2/9, 4/9, 5/9, 8/9, 9/9, 14/9, 15/9, 17/9, 18/9, 21/9, 22/9,
1/10, 2/10, 7/10, 8/10, 10/10, 12/10, 14/10, 15/10, 20/10, 21/10, 23/10, 24/10, 25/10,
0/11, 1/11, 7/11, 9/11, 10/11, 11/11, 13/11, 14/11, 20/11, 22/11, 23/11, 24/11,
0/12, 1/12, 4/12, 6/12, 8/12, 12/12, 13/12, 14/12, 17/12, 19/12, 21/12, 25/12,
1/13, 2/13, 3/13, 5/13, 11/13, 12/13, 14/13, 15/13, 16/13, 18/13, 24/13, 25/13,
0/14, 3/14, 6/14, 7/14, 8/14, 9/14, 11/14, 12/14, 16/14, 19/14, 20/14, 21/14, 22/14, 24/14, 25/14,
3/15, 4/15, 7/15, 8/15, 10/15, 11/15, 16/15, 17/15, 20/15, 21/15, 23/15, 24/15,
1/16, 2/16, 3/16, 4/16, 7/16, 9/16, 14/16, 15/16, 16/16, 17/16, 20/16, 22/16,
0/17, 2/17, 3/17, 6/17, 8/17, 9/17, 11/17, 13/17, 15/17, 16/17, 19/17, 21/17, 22/17, 24/17,
2/18, 4/18, 6/18, 9/18, 10/18, 12/18, 15/18, 17/18, 19/18, 22/18, 23/18, 25/18,
0/19, 1/19, 3/19, 5/19, 6/19, 7/19, 8/19, 13/19, 14/19, 16/19, 18/19, 19/19, 20/19, 21/19,
1/20, 4/20, 5/20, 6/20, 7/20, 10/20, 11/20, 14/20, 17/20, 18/20, 19/20, 20/20, 23/20, 24/20,
0/21, 5/21, 8/21, 9/21, 10/21, 12/21, 13/21, 18/21, 21/21, 22/21, 23/21, 25/21,
0/22, 1/22, 2/22, 5/22, 9/22, 11/22, 12/22, 13/22, 14/22, 15/22, 18/22, 22/22, 24/22, 25/22,
0/23, 2/23, 4/23, 5/23, 6/23, 10/23, 11/23, 13/23, 15/23, 17/23, 18/23, 19/23, 23/23, 24/23,
0/24, 4/24, 7/24, 8/24, 9/24, 10/24, 11/24, 13/24, 17/24, 20/24, 21/24, 22/24, 23/24, 24/24,
0/25, 1/25, 4/25, 6/25, 8/25, 11/25, 12/25, 13/25, 14/25, 17/25, 21/25, 24/25, 25/25
"""

_SQ = LatticeKind.SQUARE
_TRI = LatticeKind.TRIANGULAR

FIXTURES: dict[str, Fixture] = {f.name: f for f in [
    Fixture("fig1_s4_balanced", GridSpec(_SQ, 4), SQ_AXIS, ConstraintKind.BALANCED,
            _pairs("2/3, 3/3, 0/2, 1/2, 2/1, 3/1, 0/0, 1/0"),
            "S_4, every axis-parallel square has two black and two white vertices"),
    Fixture("fig2_t3", GridSpec(_TRI, 3), TRI_ALL, ConstraintKind.NOT_MONO,
            ((0, 2), (1, 2), (1, 1)),
            "T_3 with no monochromatic equilateral triangle of any orientation"),
    Fixture("fig3_t4", GridSpec(_TRI, 4), TRI_UP_DOWN, ConstraintKind.NOT_MONO,
            ((1, 1), (0, 2), (1, 2), (0, 3), (3, 3)),
            "T_4 with no monochromatic axis-parallel triangle"),
    Fixture("fig4_s6", GridSpec(_SQ, 6), SQ_ALL, ConstraintKind.NOT_MONO,
            _pairs("1/5, 5/5, 0/4, 1/4, 2/4, 3/4, 2/3, 5/3, 0/2, 3/2, 5/2, "
                   "2/1, 3/1, 4/1, 5/1, 0/0, 4/0"),
            "S_6 with no monochromatic square, axis-parallel or skew"),
    Fixture("fig5_s14", GridSpec(_SQ, 14), SQ_AXIS, ConstraintKind.NOT_MONO, _pairs(_FIG5),
            "S_14 with no monochromatic axis-parallel square"),
    Fixture("fig7_s26_k2", GridSpec(_SQ, 26), rect_hom(2), ConstraintKind.NOT_MONO, _pairs(_FIG7),
            "S_26 with no monochromatic axis-parallel (d, 2d) rectangle"),
]}


def get(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}") from None
