import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gallai import fixtures, oracle, patterns as P
from gallai.coloring import (BadCharacter, BadHeader, Coloring, ColoringFormatError, RowLengthMismatch,
                             parse_coloring, render_text)
from gallai.encode import ConstraintKind
from gallai.lattice import GridSpec, LatticeKind


def test_parse_examples():
    c = parse_coloring("square 2\n01\n10\n")
    assert c.grid == GridSpec(LatticeKind.SQUARE, 2)
    assert c.bits.tolist() == [0, 1, 1, 0]
    t = parse_coloring("tri 3\n0\n01\n010\n")
    assert t.grid.cell_count == 6 and t.bits.tolist() == [0, 0, 1, 0, 1, 0]


def test_parse_errors():
    with pytest.raises(BadHeader):
        parse_coloring("circle 2\n01\n10\n")
    with pytest.raises(BadHeader):
        parse_coloring("square\n01\n10\n")
    with pytest.raises(RowLengthMismatch):
        parse_coloring("square 2\n011\n10\n")
    with pytest.raises(RowLengthMismatch):
        parse_coloring("square 2\n01\n")
    with pytest.raises(BadCharacter):
        parse_coloring("square 2\n0x\n10\n")
    with pytest.raises(ColoringFormatError):
        parse_coloring("square 2\n01\n10")


def test_cube_format():
    g = GridSpec(LatticeKind.CUBIC, 2)
    c = Coloring(g, np.array([1, 0, 0, 1, 0, 1, 1, 0]))
    text = render_text(c)
    assert text == "cube 2\n10\n01\n\n01\n10\n"
    assert parse_coloring(text) == c


def test_header_k():
    c = Coloring(GridSpec(LatticeKind.SQUARE, 2), np.zeros(4), k=2)
    assert render_text(c).splitlines()[0] == "square 2 2"
    assert parse_coloring(render_text(c)).k == 2


_KINDS = st.sampled_from(list(LatticeKind))


@settings(max_examples=150, deadline=None)
@given(_KINDS, st.integers(1, 7), st.data())
def test_render_parse_roundtrip(kind, m, data):
    g = GridSpec(kind, m)
    bits = data.draw(st.lists(st.integers(0, 1), min_size=g.cell_count, max_size=g.cell_count))
    c = Coloring(g, np.array(bits))
    assert parse_coloring(render_text(c)) == c


def test_coloring_is_immutable():
    c = Coloring(GridSpec(LatticeKind.SQUARE, 2), np.zeros(4))
    with pytest.raises(ValueError):
        c.bits[0] = 1
    assert c.flipped().bits.tolist() == [1, 1, 1, 1]


@pytest.mark.parametrize("name", list(fixtures.FIXTURES))
def test_fixtures_pass_oracle(name):
    fx = fixtures.get(name)
    col = fx.coloring()
    v = oracle.check(col, fx.family, fx.constraint)
    assert v.ok, v.describe(col)


def test_fig5_black_count():
    col = fixtures.get("fig5_s14").coloring()
    assert int(col.bits.sum()) == 98
    assert parse_coloring(render_text(col)) == col


def test_fig4_is_also_axis_free():
    col = fixtures.get("fig4_s6").coloring()
    assert oracle.check(col, P.SQ_ALL).ok
    assert oracle.check(col, P.SQ_AXIS).ok


def test_all_black_violation():
    g = GridSpec(LatticeKind.SQUARE, 2)
    v = oracle.check(Coloring(g, np.ones(4)), P.SQ_AXIS)
    assert not v.ok
    assert v.configuration.vertices == (1, 2, 3, 4)
    assert v.detail == "AllOne"
    v0 = oracle.check(Coloring(g, np.zeros(4)), P.SQ_AXIS)
    assert v0.detail == "AllZero"


def test_balanced_and_parity_details():
    g = GridSpec(LatticeKind.SQUARE, 2)
    one = Coloring(g, np.array([1, 0, 0, 0]))
    v = oracle.check(one, P.SQ_AXIS, ConstraintKind.BALANCED)
    assert v.detail == "Unbalanced" and v.count == 1
    assert oracle.check(one, P.SQ_AXIS, ConstraintKind.ODD_PARITY).ok
    two = Coloring(g, np.array([1, 1, 0, 0]))
    assert oracle.check(two, P.SQ_AXIS, ConstraintKind.ODD_PARITY).detail == "EvenParity"
    assert oracle.check(two, P.SQ_AXIS, ConstraintKind.BALANCED).ok


def test_check_all_lists_every_violation():
    g = GridSpec(LatticeKind.SQUARE, 3)
    allone = Coloring(g, np.ones(9))
    assert len(oracle.check_all(allone, P.SQ_AXIS)) == 5


def test_oracle_kind_mismatch():
    with pytest.raises(P.KindMismatch):
        oracle.check(Coloring(GridSpec(LatticeKind.SQUARE, 2), np.zeros(4)), P.TRI_ALL)


def test_fixture_tamper_is_caught():
    fx = fixtures.get("fig5_s14")
    col = fx.coloring()
    # recolor a whole row: some axis-parallel square turns monochromatic
    bits = col.bits.copy()
    bits[:14] = 1
    bits[14:28] = 1
    assert not oracle.check(Coloring(col.grid, bits), P.SQ_AXIS).ok
