import pytest

from _agree import CASES, case_id, check_case


@pytest.mark.parametrize("case", CASES, ids=[case_id(c) for c in CASES])
def test_triple_agreement(case):
    check_case(case)
