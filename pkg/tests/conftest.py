import numpy as np
import pytest

from lrpc_ring.code import CodeParams, generate
from lrpc_ring.galois_ring import GaloisRing

STD_PARAMS = dict(p=2, r=2, m=20, lam=2, n=20, k=8)
STD_SEED = 42


@pytest.fixture(scope="session")
def std_code():
    params = CodeParams(**STD_PARAMS, seed=STD_SEED)
    return generate(params, np.random.default_rng(STD_SEED))


@pytest.fixture(scope="session")
def gr4_2():
    # Z_4[x]/(x^2 + x + 1)
    return GaloisRing(2, 2, (1, 1, 1))


@pytest.fixture(scope="session")
def gr4_3():
    # Z_4[x]/(x^3 + x + 1)
    return GaloisRing(2, 2, (1, 1, 0, 1))


def pytest_terminal_summary(terminalreporter):
    import acceptance_report

    if acceptance_report.LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(acceptance_report.LINES):
            terminalreporter.write_line(acceptance_report.LINES[n])
