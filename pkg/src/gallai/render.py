"""Drawing colorings: plain text and SVG with filled (1) and open (0) dots."""
from __future__ import annotations

import math

from .coloring import Coloring, render_text
from .lattice import LatticeKind, cell_of

_STEP = 18.0
_R = 6.0


def ascii_art(coloring: Coloring) -> str:
    # the text format doubles as the ascii drawing so it can be parsed back
    return render_text(coloring)


def _position(kind: LatticeKind, m: int, cell) -> tuple[float, float]:
    """Plane position in units of the lattice spacing, y growing upward."""
    if kind is LatticeKind.SQUARE:
        x, y = cell
        return float(x), float(y)
    if kind is LatticeKind.TRIANGULAR:
        # level 0 is the apex, drawn on top
        x, y = cell
        return x - y / 2.0, (m - 1 - y) * math.sqrt(3) / 2.0
    if kind is LatticeKind.HEX_WINDOW:
        x, y = cell
        return x / 2.0, y * math.sqrt(3) / 2.0
    x, y, z = cell
    # slabs side by side
    return float(z * (m + 1) + x), float(y)


def svg(coloring: Coloring) -> str:
    grid = coloring.grid
    kind, m = grid.kind, grid.m
    pts = [_position(kind, m, cell_of(grid, i + 1)) for i in range(grid.cell_count)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0) * _STEP + 4 * _R
    height = (y1 - min(ys)) * _STEP + 4 * _R
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}" '
           f'viewBox="0 0 {width:.1f} {height:.1f}">']
    for (px, py), b in zip(pts, coloring.bits.tolist()):
        cx = (px - x0) * _STEP + 2 * _R
        cy = (y1 - py) * _STEP + 2 * _R
        fill = "black" if b else "white"
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{_R}" fill="{fill}" stroke="black" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
