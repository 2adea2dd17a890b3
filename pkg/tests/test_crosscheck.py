import numpy as np

from xconc import DampingSpec, XMatrix, random_xmatrix
from xconc.crosscheck import cross_check

from conftest import random_pure_xmatrix


def names(results):
    return {r.name for r in results}


def test_two_qubit_runs_wootters(rng):
    results = cross_check(random_xmatrix(2, rng), spec=DampingSpec((0.2, 0.5)))
    assert {"dense-psd", "wootters", "certificate", "dense-damping"} <= names(results)
    assert all(r.passed for r in results)


def test_pure_state_check(rng):
    results = cross_check(random_pure_xmatrix(5, rng))
    assert "pure-state" in names(results)
    assert all(r.passed for r in results)


def test_two_pair_check(rng):
    n = 8
    a, b, z = np.zeros(n), np.zeros(n), np.zeros(n, dtype=complex)
    a[[2, 5]], b[[2, 5]], z[[2, 5]] = [0.3, 0.1], [0.4, 0.2], [0.3, 0.05j]
    results = cross_check(XMatrix.from_arrays(4, a, b, z))
    assert "two-pair-map" in names(results)
    assert all(r.passed for r in results), results
