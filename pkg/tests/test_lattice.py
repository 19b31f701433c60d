import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gallai.lattice import (GridSpec, InvalidCell, LatticeKind, cell_count, cell_of, cells, contains,
                            coord_array, index_grid, index_of)

KINDS = list(LatticeKind)


def test_cell_counts_examples():
    assert len(cells(GridSpec(LatticeKind.TRIANGULAR, 4))) == 10
    assert cells(GridSpec(LatticeKind.SQUARE, 1)) == [(0, 0)]
    assert len(cells(GridSpec(LatticeKind.HEX_WINDOW, 94))) == 8836


def test_index_examples():
    sq = GridSpec(LatticeKind.SQUARE, 3)
    assert index_of(sq, (0, 0)) == 1
    assert index_of(sq, (2, 2)) == 9
    assert index_of(GridSpec(LatticeKind.TRIANGULAR, 3), (1, 2)) == 5


def test_contains_examples():
    assert not contains(GridSpec(LatticeKind.HEX_WINDOW, 5), (3, 2))
    assert contains(GridSpec(LatticeKind.HEX_WINDOW, 5), (4, 2))
    assert not contains(GridSpec(LatticeKind.TRIANGULAR, 4), (3, 2))


def test_invalid_cell_raises():
    with pytest.raises(InvalidCell):
        index_of(GridSpec(LatticeKind.TRIANGULAR, 4), (3, 2))
    with pytest.raises(InvalidCell):
        cell_of(GridSpec(LatticeKind.SQUARE, 2), 5)


def test_bad_grid():
    with pytest.raises(ValueError):
        GridSpec(LatticeKind.SQUARE, 0)


@pytest.mark.parametrize("kind", KINDS)
def test_closed_form_counts(kind):
    top = 30 if kind is LatticeKind.CUBIC else 100
    for m in range(1, top + 1):
        assert len(cells(GridSpec(kind, m))) == cell_count(kind, m) == GridSpec(kind, m).cell_count


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("m", [1, 2, 5, 9])
def test_bijection_and_order(kind, m):
    g = GridSpec(kind, m)
    cs = cells(g)
    idx = [index_of(g, c) for c in cs]
    assert idx == list(range(1, g.cell_count + 1))
    assert [cell_of(g, i) for i in idx] == cs
    assert all(contains(g, c) for c in cs)


@pytest.mark.parametrize("kind", KINDS)
def test_index_grid_matches(kind):
    g = GridSpec(kind, 4)
    tab = index_grid(g)
    coords = coord_array(g)
    assert coords.shape == (g.cell_count, kind.dim)
    for i, c in enumerate(coords.tolist(), start=1):
        assert tab[tuple(c)] == i
    assert np.count_nonzero(tab) == g.cell_count


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(KINDS), st.integers(1, 40), st.data())
def test_roundtrip_random(kind, m, data):
    if kind is LatticeKind.CUBIC:
        m = min(m, 12)
    g = GridSpec(kind, m)
    i = data.draw(st.integers(1, g.cell_count))
    assert index_of(g, cell_of(g, i)) == i


def test_parse_aliases():
    assert LatticeKind.parse("square") is LatticeKind.SQUARE
    assert LatticeKind.parse("tri") is LatticeKind.TRIANGULAR
    with pytest.raises(ValueError):
        LatticeKind.parse("pentagon")
