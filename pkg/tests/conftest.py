from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from multcalc.matgroup import basis, heis, nil3
from multcalc.polypath import PolyPath

settings.register_profile(
    "default", deadline=None, max_examples=60, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

E12, E23, E13 = basis(1, 2), basis(2, 3), basis(1, 3)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=6)
small_floats = st.floats(min_value=-2, max_value=2, allow_nan=False, allow_infinity=False)


@st.composite
def nilmats(draw):
    return nil3(*(draw(rationals) for _ in range(3)))


@st.composite
def heis_elts(draw):
    return heis(*(draw(rationals) for _ in range(3)))


@st.composite
def float_heis(draw):
    return heis(*(draw(small_floats) for _ in range(3)), exact=False)


@st.composite
def polypaths(draw, max_degree=3):
    k = draw(st.integers(0, max_degree))
    return PolyPath([draw(nilmats()) for _ in range(k + 1)], 3, True)


def frac(s: str) -> Fraction:
    return Fraction(s)


# one PASS/FAIL line per acceptance criterion, shown after the test run
ACCEPTANCE_LINES: dict[int, str] = {}


def record_acceptance(number: int, passed: bool, detail: str) -> str:
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
