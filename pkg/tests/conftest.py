import numpy as np
import pytest

from geonest.kernel import AVAILABLE

# Reference evidences, computed independently with mpmath (30 digits):
#   log I0(5)              quad of (1/2pi) int exp(5 cos t) dt
#   log(sinh 10 / 10)      quad of (1/2) int exp(10 c) dc
#   2 log I0(10)           product of two von Mises normalisers (each mixture component)
#   log(s sqrt(2pi) erf(0.5 / (s sqrt 2))), s = 0.05
LOG_Z_VON_MISES_5 = 3.30468177582253343384583109635
LOG_Z_VMF_10 = 7.00426772438485538200204146533
LOG_Z_EDGE_TORUS_10 = 15.8859441662373911089897308005
LOG_Z_GAUSS_BOX = -2.07679374034931825165490907944


@pytest.fixture(params=AVAILABLE)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, config):
    if config.acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in config.acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def report(request):
    """Record one PASS/FAIL line for an acceptance criterion and assert on it."""
    def _report(label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        request.config.acceptance_lines.append(line)
        print(line)
        assert ok, line
    return _report
