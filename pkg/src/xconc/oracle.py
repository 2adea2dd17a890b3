"""Dense reference computations used to cross-check the compressed code paths.

Nothing here imports the closed-form concurrence; these routines work on plain
complex ndarrays (density matrices and state vectors) with qubit 1 as the most
significant bit.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import NotDensityMatrix, NotTwoPairSupport, ShapeError, StorageLimit
from .xmatrix import DEFAULT_TOL, XMatrix, pair_basis

DENSE_LIMIT = 12
KRAUS_LIMIT = 6
PSD_TOL = 1e-10
HERMITIAN_TOL = 1e-12

_SIGMA_Y = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(_SIGMA_Y, _SIGMA_Y).real  # sigma_y (x) sigma_y is real


def _n_qubits_of(dim):
    n = int(dim).bit_length() - 1
    if dim < 1 or 2 ** n != dim:
        raise ShapeError(f"dimension {dim} is not a power of two")
    return n


# --- dense <-> compressed ----------------------------------------------------

def to_dense(x: XMatrix, max_qubits=DENSE_LIMIT) -> np.ndarray:
    if x.n_qubits > max_qubits:
        raise StorageLimit(f"dense expansion limited to {max_qubits} qubits")
    dim = x.dim
    p = np.arange(x.n_pairs)
    pbar = dim - 1 - p
    rho = np.zeros((dim, dim), dtype=np.complex128)
    rho[p, p] = x.a
    rho[pbar, pbar] = x.b
    rho[p, pbar] = x.z
    rho[pbar, p] = np.conj(x.z)
    return rho


def from_dense(rho, tol=DEFAULT_TOL) -> XMatrix:
    """Compress a dense X-matrix; raises if anything sits off the X."""
    rho = np.asarray(rho, dtype=np.complex128)
    dim = rho.shape[0]
    n_qubits = _n_qubits_of(dim)
    if n_qubits < 1 or rho.shape != (dim, dim):
        raise ShapeError(f"expected a square matrix of size 2^N, got {rho.shape}")
    p = np.arange(dim // 2)
    pbar = dim - 1 - p
    mask = np.ones((dim, dim), dtype=bool)
    mask[np.arange(dim), np.arange(dim)] = False
    mask[p, pbar] = False
    mask[pbar, p] = False
    if np.any(np.abs(rho[mask]) > tol):
        raise ShapeError("matrix has entries outside the diagonal and anti-diagonal")
    if np.any(np.abs(rho[pbar, p] - np.conj(rho[p, pbar])) > tol):
        raise NotDensityMatrix("matrix is not Hermitian")
    return XMatrix.from_arrays(n_qubits, rho[p, p].real, rho[pbar, pbar].real,
                               rho[p, pbar], tol=tol)


# --- generic checks ----------------------------------------------------------

def min_eigenvalue(rho) -> np.ndarray:
    """Smallest eigenvalue of a Hermitian matrix (or stack of them)."""
    return np.linalg.eigvalsh(rho)[..., 0]


def is_psd(rho, tol=PSD_TOL) -> bool:
    return bool(np.all(min_eigenvalue(rho) >= -tol))


def check_density_matrix(rho, tol=DEFAULT_TOL):
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim < 2 or rho.shape[-1] != rho.shape[-2]:
        raise NotDensityMatrix(f"not a square matrix: shape {rho.shape}")
    if np.max(np.abs(rho - np.conj(np.swapaxes(rho, -1, -2))), initial=0.0) > HERMITIAN_TOL:
        raise NotDensityMatrix("matrix is not Hermitian")
    trace = np.trace(rho, axis1=-2, axis2=-1).real
    if np.any(np.abs(trace - 1.0) > tol):
        raise NotDensityMatrix(f"trace {trace} differs from 1")
    if not is_psd(rho):
        raise NotDensityMatrix("matrix has a negative eigenvalue")
    return rho


# --- pure states and bipartitions -------------------------------------------

def bipartitions(n_qubits: int) -> list[tuple[int, ...]]:
    """The 2^(N-1) - 1 bipartitions, each given by the side without qubit 1."""
    rest = range(2, n_qubits + 1)
    return [c for r in range(1, n_qubits) for c in combinations(rest, r)]


def pure_state(amplitudes, tol=HERMITIAN_TOL) -> np.ndarray:
    psi = np.asarray(amplitudes, dtype=np.complex128).ravel()
    _n_qubits_of(psi.shape[0])
    if abs(np.linalg.norm(psi) - 1.0) > tol:
        raise NotDensityMatrix(f"state norm {np.linalg.norm(psi)} is not 1")
    return psi


def schmidt_weights(psi, subset_a) -> np.ndarray:
    """Eigenvalues of the reduced state on ``subset_a`` (1-based qubits), descending."""
    psi = np.asarray(psi, dtype=np.complex128)
    n_qubits = _n_qubits_of(psi.shape[0])
    side_a = sorted(subset_a)
    side_b = [q for q in range(1, n_qubits + 1) if q not in side_a]
    if not side_a or not side_b:
        raise ShapeError(f"{subset_a} is not a proper nonempty subset")
    tensor = psi.reshape((2,) * n_qubits)
    order = [q - 1 for q in side_a + side_b]
    m = np.transpose(tensor, order).reshape(2 ** len(side_a), -1)
    return np.linalg.svd(m, compute_uv=False) ** 2


def purity_of_bipartition(psi, subset_a) -> float:
    lam = schmidt_weights(psi, subset_a)
    return float(np.sum(lam ** 2))


def linear_entropy(psi, subset_a) -> float:
    """``1 - purity`` computed as ``2 sum_{k<l} lam_k lam_l`` (no cancellation)."""
    lam = schmidt_weights(psi, subset_a)
    tail = np.cumsum(lam[::-1])[::-1]  # tail[k] = sum_{l >= k} lam_l
    return float(2.0 * np.sum(lam[:-1] * tail[1:]))


def pure_gm_concurrence(psi) -> float:
    """``min_j sqrt(2 (1 - purity_j))`` over every bipartition."""
    psi = pure_state(psi)
    n_qubits = _n_qubits_of(psi.shape[0])
    if n_qubits > DENSE_LIMIT:
        raise StorageLimit(f"bipartition enumeration limited to {DENSE_LIMIT} qubits")
    if n_qubits == 1:
        return 0.0
    return min(np.sqrt(2.0 * linear_entropy(psi, j)) for j in bipartitions(n_qubits))


def principal_state(rho, tol=1e-10) -> np.ndarray:
    """State vector of a rank-one density matrix."""
    vals, vecs = np.linalg.eigh(rho)
    if abs(vals[-1] - 1.0) > tol:
        raise NotDensityMatrix(f"largest eigenvalue {vals[-1]} (matrix is not pure)")
    return vecs[:, -1]


def psd_factor(rho) -> np.ndarray:
    """``W`` with ``rho = W W^dagger``, from an eigendecomposition of the
    diagonally scaled matrix ``D^-1/2 rho D^-1/2``.

    The scaling keeps tiny diagonal entries (and the columns they generate)
    accurate to relative rather than absolute precision.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    d = np.sqrt(np.clip(np.diagonal(rho, axis1=-2, axis2=-1).real, 0.0, None))
    inv = np.divide(1.0, d, out=np.zeros_like(d), where=d > 0)
    scaled = inv[..., :, None] * rho * inv[..., None, :]
    vals, vecs = np.linalg.eigh(scaled)
    return d[..., :, None] * vecs * np.sqrt(np.clip(vals, 0.0, None))[..., None, :]


# --- two qubits --------------------------------------------------------------

def wootters_concurrence(rho, check=True):
    """Two-qubit concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are the singular values of ``W^T (sy x sy) W`` with
    ``rho = W W^dagger`` (see :func:`psd_factor`); they coincide with the square
    roots of the eigenvalues of ``rho (sy x sy) rho* (sy x sy)`` but stay
    accurate when those are near 0.
    Accepts a stack of matrices with shape ``(..., 4, 4)``.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape[-2:] != (4, 4):
        raise NotDensityMatrix(f"expected 4x4 matrices, got shape {rho.shape}")
    if check:
        check_density_matrix(rho)
    w = psd_factor(rho)
    tau = np.swapaxes(w, -1, -2) @ _YY @ w
    lam = np.linalg.svd(tau, compute_uv=False)
    value = np.maximum(0.0, lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3])
    return float(value) if value.ndim == 0 else value


def two_pair_parties(n_qubits: int, i: int, anchor: int = 1):
    """Qubit groups ``(F, G)`` under which pairs ``anchor`` and ``i`` form two qubits.

    ``G`` holds the qubits where the basis states ``anchor - 1`` and ``i - 1``
    differ, ``F`` the rest.  In the order ``(p_anchor, p_i, pbar_i, pbar_anchor)``
    the four states read ``|dd>, |du>, |ud>, |uu>`` for parties ``F, G``.
    """
    p_m, _ = pair_basis(anchor, n_qubits)
    p_i, _ = pair_basis(i, n_qubits)
    if p_m == p_i:
        raise NotTwoPairSupport("the two pairs must differ")
    diff = p_m ^ p_i
    g = tuple(q for q in range(1, n_qubits + 1) if diff >> (n_qubits - q) & 1)
    f = tuple(q for q in range(1, n_qubits + 1) if q not in g)
    return f, g


def pair_to_two_qubit(x: XMatrix, i: int, anchor: int = 1, tol=DEFAULT_TOL) -> np.ndarray:
    """4x4 matrix of an X-matrix supported on pairs ``anchor`` and ``i`` only.

    Basis order ``(p_anchor, p_i, pbar_i, pbar_anchor)``::

        [[a_m,  0,    0,    z_m],
         [0,    a_i,  z_i,  0  ],
         [0,    z_i*, b_i,  0  ],
         [z_m*, 0,    0,    b_m]]
    """
    n = x.n_pairs
    pair_basis(i, x.n_qubits)
    pair_basis(anchor, x.n_qubits)
    if i == anchor:
        raise NotTwoPairSupport("the two pairs must differ")
    others = np.ones(n, dtype=bool)
    others[[anchor - 1, i - 1]] = False
    spill = np.max(np.abs(np.concatenate([x.a[others], x.b[others], x.z[others]])),
                   initial=0.0)
    if spill > tol:
        raise NotTwoPairSupport(f"weight {spill:.3g} outside pairs {anchor} and {i}")
    m, k = anchor - 1, i - 1
    r = np.zeros((4, 4), dtype=np.complex128)
    r[0, 0], r[3, 3], r[0, 3] = x.a[m], x.b[m], x.z[m]
    r[3, 0] = np.conj(x.z[m])
    r[1, 1], r[2, 2], r[1, 2] = x.a[k], x.b[k], x.z[k]
    r[2, 1] = np.conj(x.z[k])
    return r


# --- Kraus evolution ---------------------------------------------------------

def amplitude_damping_kraus(p: float) -> tuple[np.ndarray, np.ndarray]:
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]])
    k1 = np.array([[0.0, np.sqrt(p)], [0.0, 0.0]])
    return k0, k1


def dense_damp(rho, spec) -> np.ndarray:
    """Apply a single-qubit amplitude damping channel to every qubit of ``rho``.

    ``spec`` is a :class:`~xconc.channels.DampingSpec` or a sequence of
    probabilities, qubit 1 first.
    """
    probs = list(getattr(spec, "probabilities", spec))
    rho = np.asarray(rho, dtype=np.complex128)
    n_qubits = _n_qubits_of(rho.shape[0])
    if n_qubits > KRAUS_LIMIT:
        raise StorageLimit(f"dense Kraus evolution limited to {KRAUS_LIMIT} qubits")
    if len(probs) != n_qubits:
        raise ShapeError(f"{len(probs)} probabilities for {n_qubits} qubits")
    for k, p in enumerate(probs):
        left = np.eye(2 ** k)
        right = np.eye(2 ** (n_qubits - k - 1))
        out = np.zeros_like(rho)
        for op in amplitude_damping_kraus(p):
            full = np.kron(np.kron(left, op), right)
            out += full @ rho @ full.T
        rho = out
    return rho
