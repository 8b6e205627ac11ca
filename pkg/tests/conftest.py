import pytest
from hypothesis import strategies as st

from qdissect.series import EXACT, Series

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def small_ints(lo=-50, hi=50):
    return st.integers(min_value=lo, max_value=hi)


@st.composite
def exact_series(draw, min_order=0, max_order=24, unit=False):
    order = draw(st.integers(min_value=min_order, max_value=max_order))
    coeffs = draw(st.lists(small_ints(), min_size=order + 1, max_size=order + 1))
    if unit:
        coeffs[0] = draw(st.sampled_from([1, -1]))
    return Series(EXACT, coeffs)


moduli = st.one_of(st.sampled_from([2, 3, 4, 5, 7, 9, 11, 27]), st.integers(min_value=2, max_value=2**31))


@pytest.fixture
def record_acceptance():
    def record(n, ok, detail=""):
        ACCEPTANCE[n] = (ok, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
