from fractions import Fraction

import pytest
from hypothesis import strategies as st

from penrose_selfsim.generator import default_offset, generate_patch
from penrose_selfsim.golden import GoldenNumber

small_fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
goldens = st.builds(GoldenNumber, small_fractions, small_fractions)
lattice_coords = st.tuples(*[st.integers(-6, 6)] * 5)


@pytest.fixture(scope="session")
def v():
    return default_offset()


@pytest.fixture(scope="session")
def patch64(v):
    return generate_patch(v, 64)


@pytest.fixture(scope="session")
def quarter():
    return Fraction(1, 4)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
