import numpy as np
import pytest

from k3mono.weierstrass import build_construction, default_construction_i, default_construction_ii


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def con_i():
    return default_construction_i(np.random.default_rng(0))


@pytest.fixture(scope="session")
def con_ii():
    return default_construction_ii(np.random.default_rng(1))


@pytest.fixture(scope="session")
def base_i(con_i):
    return build_construction(con_i)


@pytest.fixture(scope="session")
def base_ii(con_ii):
    return build_construction(con_ii)


ACCEPTANCE = []


@pytest.fixture
def acceptance():
    """Recorder for one PASS/FAIL line per acceptance criterion."""

    def record(number, title, ok, detail=""):
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
