import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xconc import (XMatrix, dumps, from_diagonal, gm_concurrence, load, loads,
                   make_xmatrix, maximally_mixed, mix, pair_basis, permute_qubits,
                   random_xmatrix, save)
from xconc.errors import (DimensionMismatch, IndexOutOfRange, InvalidPermutation, RangeError,
                          NormalizationError, ParseError, PositivityViolation, ShapeError,
                          StorageLimit)
from xconc.oracle import to_dense

from conftest import xmatrices


# --- construction and validation -------------------------------------------

def test_single_qubit_ground_state():
    x = make_xmatrix(1, [(1, 0, 0)])
    assert x.n_pairs == 1
    assert x.trace() == 1.0


def test_ghz3_valid(ghz3):
    assert np.allclose(ghz3.pair(1), (0.5, 0.5, 0.5), atol=1e-15)
    assert all(p == (0, 0, 0) for p in ghz3.pairs[1:])


def test_positivity_violation_reports_pair():
    with pytest.raises(PositivityViolation) as err:
        make_xmatrix(2, [(0.5, 0.5, 0.6), (0, 0, 0)])
    assert err.value.index == 1


def test_normalization_error():
    with pytest.raises(NormalizationError):
        make_xmatrix(2, [(0.5, 0.4, 0), (0, 0, 0)])


def test_shape_error():
    with pytest.raises(ShapeError):
        make_xmatrix(3, [(0.5, 0.5, 0.5)])


def test_negative_weight_rejected():
    with pytest.raises(PositivityViolation):
        make_xmatrix(2, [(1.1, -0.1, 0), (0, 0, 0)])


def test_storage_limit():
    with pytest.raises(StorageLimit):
        maximally_mixed(21)


def test_tolerance_is_respected():
    make_xmatrix(2, [(0.5 + 5e-10, 0.5, 0.5), (0, 0, 0)])
    with pytest.raises(NormalizationError):
        make_xmatrix(2, [(0.5 + 5e-9, 0.5, 0.5), (0, 0, 0)])


def test_arrays_are_read_only(ghz3):
    with pytest.raises(ValueError):
        ghz3.a[0] = 1.0


# --- indexing ----------------------------------------------------------------

@pytest.mark.parametrize("i, n, expected", [(1, 3, (0, 7)), (4, 3, (3, 4)), (2, 7, (1, 126))])
def test_pair_basis(i, n, expected):
    assert pair_basis(i, n) == expected


@pytest.mark.parametrize("i", [0, 5])
def test_pair_basis_out_of_range(i):
    with pytest.raises(IndexOutOfRange):
        pair_basis(i, 3)


def test_diagonal_layout():
    x = make_xmatrix(2, [(0.1, 0.2, 0), (0.3, 0.4, 0)])
    # basis order |00>, |01>, |10>, |11>; pair 1 = (0, 3), pair 2 = (1, 2)
    np.testing.assert_allclose(x.diagonal(), [0.1, 0.3, 0.4, 0.2])


# --- concurrence -------------------------------------------------------------

def test_ghz3_concurrence(ghz3):
    report = gm_concurrence(ghz3)
    assert report.value == 1.0
    assert report.witness_pair == 1


def test_diagonal_has_zero_concurrence(rng):
    x = from_diagonal(rng.dirichlet(np.ones(16)))
    assert gm_concurrence(x).value == 0.0


def test_two_qubit_example():
    x = make_xmatrix(2, [(0.375, 0.375, 0.25), (0.125, 0.125, 0)])
    assert gm_concurrence(x).value == pytest.approx(0.25, abs=1e-15)


def test_phase_does_not_matter(rng):
    x = random_xmatrix(4, rng)
    rotated = XMatrix.from_arrays(4, x.a, x.b, x.z * np.exp(1j * rng.uniform(0, 6, x.n_pairs)))
    assert gm_concurrence(rotated).value == pytest.approx(gm_concurrence(x).value, abs=1e-15)


def test_pair_order_does_not_matter(rng):
    x = random_xmatrix(5, rng, coherence=1.0)
    order = rng.permutation(x.n_pairs)
    shuffled = XMatrix.from_arrays(5, x.a[order], x.b[order], x.z[order])
    assert gm_concurrence(shuffled).value == gm_concurrence(x).value


@settings(max_examples=60, deadline=None)
@given(xmatrices())
def test_concurrence_range(x):
    value = gm_concurrence(x).value
    assert 0.0 <= value <= 1.0


# --- mixing ------------------------------------------------------------------

def test_mix_identity(ghz3):
    other = maximally_mixed(3)
    assert mix(1.0, ghz3, other).allclose(ghz3, atol=0)


def test_mix_half(ghz3):
    other = maximally_mixed(3)
    m = mix(0.5, ghz3, other)
    np.testing.assert_allclose(m.a, 0.5 * (ghz3.a + other.a))
    np.testing.assert_allclose(m.z, 0.5 * ghz3.z)


def test_mix_dimension_mismatch(ghz3):
    with pytest.raises(DimensionMismatch):
        mix(0.5, ghz3, maximally_mixed(2))


def test_mix_weight_range(ghz3):
    with pytest.raises(RangeError):
        mix(1.5, ghz3, ghz3)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 5), st.floats(0, 1))
def test_convexity(seed, n_qubits, lam):
    rng = np.random.default_rng(seed)
    x1, x2 = random_xmatrix(n_qubits, rng), random_xmatrix(n_qubits, rng, coherence=1.0)
    left = gm_concurrence(mix(lam, x1, x2)).value
    right = lam * gm_concurrence(x1).value + (1 - lam) * gm_concurrence(x2).value
    assert left <= right + 1e-12


# --- permutations ------------------------------------------------------------

def test_identity_permutation(rng):
    x = random_xmatrix(4, rng)
    assert permute_qubits(x, [1, 2, 3, 4]).allclose(x, atol=0)


def test_two_qubit_swap():
    x = make_xmatrix(2, [(0.3, 0.3, 0.2), (0.25, 0.15, 0.1j)])
    y = permute_qubits(x, [2, 1])
    assert y.pair(1) == pytest.approx((0.3, 0.3, 0.2))
    assert y.pair(2) == pytest.approx((0.15, 0.25, -0.1j))


def test_permutation_matches_dense(rng):
    x = random_xmatrix(3, rng)
    sigma = [3, 1, 2]
    y = permute_qubits(x, sigma)
    rho = to_dense(x).reshape([2] * 6)
    # qubit k of x becomes qubit sigma[k] of y
    axes = [sigma.index(j + 1) for j in range(3)]
    expected = rho.transpose(axes + [a + 3 for a in axes]).reshape(8, 8)
    np.testing.assert_allclose(to_dense(y), expected, atol=1e-15)


def test_concurrence_permutation_invariant(rng):
    x = random_xmatrix(4, rng, coherence=1.0)
    c = gm_concurrence(x).value
    for _ in range(10):
        sigma = list(rng.permutation(4) + 1)
        assert gm_concurrence(permute_qubits(x, sigma)).value == pytest.approx(c, abs=1e-15)


@pytest.mark.parametrize("sigma", [[1, 1, 2], [1, 2], [0, 1, 2], [1, 2, 4]])
def test_invalid_permutation(ghz3, sigma):
    with pytest.raises(InvalidPermutation):
        permute_qubits(ghz3, sigma)


# --- interchange format ------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(xmatrices(1, 6))
def test_json_round_trip_is_exact(x):
    y = loads(dumps(x))
    assert y.n_qubits == x.n_qubits
    assert np.array_equal(y.a, x.a) and np.array_equal(y.b, x.b) and np.array_equal(y.z, x.z)


def test_file_round_trip(tmp_path, rng):
    x = random_xmatrix(3, rng)
    path = tmp_path / "x.json"
    save(x, path)
    assert load(path).allclose(x, atol=0)


def test_parse_error_has_location():
    with pytest.raises(ParseError, match="line 2"):
        loads('{"n_qubits": 1,\n "pairs": [}')


def test_missing_field_is_parse_error():
    with pytest.raises(ParseError):
        loads(json.dumps({"n_qubits": 1, "pairs": [{"a": 1.0, "b": 0.0}]}))


def test_loaded_matrix_is_validated():
    doc = {"n_qubits": 1, "pairs": [{"a": 0.5, "b": 0.5, "z_re": 0.6, "z_im": 0.0}]}
    with pytest.raises(PositivityViolation):
        loads(json.dumps(doc))
