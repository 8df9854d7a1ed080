import numpy as np
import pytest
from hypothesis import settings

from zdlab.fourier import TorusFunction

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

# filled by test_acceptance.py, printed after the run
AC_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not AC_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(AC_LINES, key=lambda s: int(s.split("-")[1])):
        terminalreporter.write_line(AC_LINES[key])


@pytest.fixture
def cos1():
    return TorusFunction.trig(0.0, [1.0])


@pytest.fixture
def cos2():
    return TorusFunction.trig(0.0, [2.0])


@pytest.fixture
def two_mode():
    return TorusFunction.trig(0.0, [1.0, 0.0, 0.5])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
