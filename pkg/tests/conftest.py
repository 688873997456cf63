import numpy as np
import pytest

from genhilbert.spaces import TaylorPolynomial

# filled by test_acceptance.py, one (criterion, passed, detail) per criterion
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        passed, detail = ACCEPTANCE_LINES[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def poly(*coeffs):
    return TaylorPolynomial(np.asarray(coeffs, dtype=complex))
