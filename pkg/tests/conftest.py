import numpy as np
import pytest

from bruhatcells.rootsys import build_type_a, reduced_words


@pytest.fixture(scope="session")
def a1():
    return build_type_a(2)


@pytest.fixture(scope="session")
def a2():
    return build_type_a(3)


@pytest.fixture(scope="session")
def a3():
    return build_type_a(4)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def all_words(sys, min_length=0):
    return [w for w in reduced_words(sys) if len(w) >= min_length]


def disc_points(rng, length, count, radius=5.0):
    r = radius * np.sqrt(rng.random((count, length)))
    return r * np.exp(1j * rng.uniform(0, 2 * np.pi, (count, length)))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
