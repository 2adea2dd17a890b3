import json

import numpy as np
import pytest

from xconc import (biseparability_certificate, check_certificate, damp, from_diagonal,
                   gm_concurrence, make_xmatrix, random_xmatrix)
from xconc.certificate import (CASE_B_PART, ENTANGLED_CORE, LEMMA1_ZERO,
                               default_max_iter)
from xconc.errors import IterationLimit

from conftest import random_separable_xmatrix


def audit(x, **kw):
    cert = biseparability_certificate(x, **kw)
    return cert, check_certificate(x, cert)


def test_diagonal_is_trivially_biseparable(rng):
    x = from_diagonal(rng.dirichlet(np.ones(8)))
    cert, check = audit(x)
    assert cert.case == "diagonal"
    assert cert.complete and cert.iterations == 0
    assert {p.tag for p in cert.parts} == {LEMMA1_ZERO}
    assert check.ok()


def test_damped_ghz3_at_p06(ghz3):
    x = damp(ghz3, 0.6)
    assert gm_concurrence(x).value == 0.0
    cert, check = audit(x)
    assert cert.complete
    assert cert.residual_trace <= 1e-9
    assert check.reconstruction_error <= 1e-12
    assert check.min_part_eigenvalue >= -1e-10
    assert check.max_biseparable_concurrence <= 1e-10


def test_damped_ghz3_at_p019(ghz3):
    x = damp(ghz3, 0.19)
    cert, check = audit(x)
    assert cert.case == "a"
    cores = [p for p in cert.parts if p.tag == ENTANGLED_CORE]
    assert len(cores) == 1 and cores[0].pairs == (1,)
    assert check.core_concurrence == pytest.approx(gm_concurrence(x).value, abs=1e-10)
    assert cert.core_concurrence == pytest.approx(0.5478746721990544, abs=1e-12)
    assert check.ok()


def test_regime_c_example():
    # s_1 = 0.2 is below w = 0.3, so the peeling loop runs
    x = make_xmatrix(3, [(0.2, 0.2, 0.12), (0.1, 0.1, 0.1), (0.05, 0.05, 0), (0.15, 0.15, 0)])
    assert gm_concurrence(x).value == 0.0
    cert, check = audit(x)
    assert cert.case == "c"
    assert check.ok()


def test_regime_b_example():
    # s_1 = 0.3 exceeds w = 0.1 + sqrt(0.005) >= |z_1|; pair 4 has b_4 = 0
    x = make_xmatrix(3, [(0.3, 0.3, 0.15), (0.1, 0.1, 0.05), (0.1, 0.05, 0.0), (0.05, 0.0, 0.0)])
    cert, check = audit(x)
    assert cert.case == "b"
    assert cert.iterations == 0
    assert all(p.tag == CASE_B_PART for p in cert.parts if len(p.pairs) == 2)
    assert check.ok()


def test_regime_c_traces_decrease(rng):
    x = random_separable_xmatrix(4, rng)
    cert, check = audit(x)
    if cert.case == "c":
        assert np.all(np.diff(cert.case_trace) < 0)
        rate = 1 - 1 / x.n_pairs
        ratios = np.array(cert.case_trace[1:]) / np.array(cert.case_trace[:-1])
        assert np.all(ratios <= rate + 1e-12)
    assert check.ok()


def test_iteration_limit(rng):
    x = None
    while x is None:
        y = random_separable_xmatrix(4, rng)
        if biseparability_certificate(y).case == "c":
            x = y
    cert = biseparability_certificate(x, max_iter=2)
    assert not cert.complete
    with pytest.raises(IterationLimit) as err:
        biseparability_certificate(x, max_iter=2, strict=True)
    assert err.value.certificate.iterations == 2
    # even unfinished, parts plus residual reconstruct the input
    assert check_certificate(x, cert).reconstruction_error <= 1e-12


def test_default_max_iter_is_enough():
    assert default_max_iter(4, 1e-9) >= np.log(1e-9) / np.log(0.75)


@pytest.mark.parametrize("n_qubits", [3, 4])
def test_soundness_on_separable_samples(rng, n_qubits):
    for _ in range(30):
        x = random_separable_xmatrix(n_qubits, rng)
        cert, check = audit(x)
        assert cert.complete
        assert check.ok(), check


@pytest.mark.parametrize("n_qubits", [2, 3, 4, 5])
def test_core_reproduces_formula(rng, n_qubits):
    for _ in range(30):
        x = random_xmatrix(n_qubits, rng, coherence=1.0, concentration=0.2)
        c = gm_concurrence(x).value
        cert, check = audit(x)
        assert check.ok()
        if c > 0:
            assert cert.case == "a"
            assert check.core_concurrence == pytest.approx(c, abs=1e-10)


def test_phases_are_kept(rng):
    x = random_xmatrix(3, rng, coherence=0.7)
    cert, check = audit(x)
    assert check.reconstruction_error <= 1e-12


def test_json_output(ghz3):
    x = damp(ghz3, 0.6)
    cert = biseparability_certificate(x)
    doc = json.loads(cert.dumps())
    assert doc["complete"] is True
    assert doc["residual_trace"] <= 1e-9
    weights = [p["weight"] for p in doc["parts"]]
    assert sum(weights) + doc["residual_trace"] == pytest.approx(1.0, abs=1e-12)
    assert all(1 <= e["index"] <= 4 for p in doc["parts"] for e in p["pairs"])
