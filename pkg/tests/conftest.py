import numpy as np
import pytest
from hypothesis import strategies as st

from xconc import GhzParams, XMatrix, ghz_xmatrix, gm_concurrence, random_xmatrix

QUARTER = np.pi / 4


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ghz3():
    return ghz_xmatrix(GhzParams(3, 0, QUARTER))


def random_pure_xmatrix(n_qubits, rng):
    """Rank one X-matrix: a pure state supported on one complement pair."""
    n = 2 ** (n_qubits - 1)
    theta = rng.uniform(0, np.pi / 2)
    phase = np.exp(2j * np.pi * rng.uniform())
    a, b, z = np.zeros(n), np.zeros(n), np.zeros(n, dtype=complex)
    i = rng.integers(n)
    a[i], b[i] = np.cos(theta) ** 2, np.sin(theta) ** 2
    z[i] = np.cos(theta) * np.sin(theta) * phase
    return XMatrix.from_arrays(n_qubits, a, b, z)


def random_separable_xmatrix(n_qubits, rng, tries=1000):
    """Random X-matrix with zero GM concurrence (rejection sampling)."""
    for _ in range(tries):
        conc = rng.choice([0.3, 1.0, 3.0])
        x = random_xmatrix(n_qubits, rng, concentration=conc,
                           coherence=rng.uniform(0.3, 1.0))
        if gm_concurrence(x).value == 0.0:
            return x
    raise RuntimeError("no separable sample found")


@st.composite
def xmatrices(draw, min_qubits=2, max_qubits=5):
    n_qubits = draw(st.integers(min_qubits, max_qubits))
    seed = draw(st.integers(0, 2**32 - 1))
    conc = draw(st.sampled_from([0.1, 0.5, 1.0, 5.0]))
    return random_xmatrix(n_qubits, np.random.default_rng(seed), concentration=conc)


probabilities = st.floats(0.0, 1.0, allow_nan=False)


# --- acceptance report -------------------------------------------------------

ACCEPTANCE = {}


def record(number, title, checks):
    """Store the sub-checks of one acceptance criterion and return the failures."""
    failed = [name for name, ok in checks.items() if not ok]
    ACCEPTANCE[number] = (title, failed)
    return failed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, failed = ACCEPTANCE[number]
        status = "PASS" if not failed else "FAIL"
        line = f"[{status}] {number}. {title}"
        if failed:
            line += "  (failed: " + "; ".join(failed) + ")"
        terminalreporter.write_line(line)
