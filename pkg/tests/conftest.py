import pytest

# (number, title, verdict, detail) rows filled by the acceptance suite
ACCEPTANCE: list[tuple[int, str, str, str]] = []


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile (or load from cache) every numba kernel once, outside any timed region."""
    from gallai import patterns as P
    from gallai.encode import build_cnf
    from gallai.explore import brute_extend
    from gallai.lattice import GridSpec, LatticeKind
    from gallai.solve import count_models, solve

    for fam in (P.TRI_ALL, P.TRI_UP, P.TRI_DOWN, P.TRI_UP_DOWN):
        P.enumerate_array(GridSpec(LatticeKind.TRIANGULAR, 3), fam)
    for fam in (P.SQ_ALL, P.SQ_AXIS, P.rect_hom(2), P.rect_sim(2)):
        P.enumerate_array(GridSpec(LatticeKind.SQUARE, 3), fam)
    P.enumerate_array(GridSpec(LatticeKind.HEX_WINDOW, 3), P.HEXAGON)
    P.enumerate_array(GridSpec(LatticeKind.CUBIC, 2), P.CUBE)
    brute_extend(LatticeKind.SQUARE, P.SQ_AXIS, m_max=3, collect_m=2)
    inst = build_cnf(GridSpec(LatticeKind.SQUARE, 3), P.SQ_AXIS)
    count_models(inst)
    solve(inst)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num, title, verdict, detail in sorted(ACCEPTANCE):
        tr.write_line(f"criterion {num:2d} {verdict:4s}  {title}: {detail}")
