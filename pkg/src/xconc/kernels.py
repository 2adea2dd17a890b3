"""Inner loops over the 2^N computational basis.

The damping and relabelling kernels have a vectorised numpy form and a loop
form compiled with numba.
The module-level names ``damp_diagonal`` and ``permute_basis`` are bound to
one or the other at import time, see :mod:`xconc._accel`.
"""
import numpy as np

from ._accel import USE_NUMBA, njit


# --- amplitude damping of the diagonal ---------------------------------------

def damp_diagonal_numpy(diag, probs):
    """Apply independent amplitude damping to a diagonal of length 2^N.

    Qubit ``k`` (0-based) is bit ``N-1-k`` of the basis index, so qubit 0 is
    the most significant bit.  Bit value 1 is the excited level.
    """
    n_qubits = probs.shape[0]
    out = np.array(diag, dtype=np.float64, copy=True)
    for k in range(n_qubits):
        p = probs[k]
        if p == 0.0:
            continue
        view = out.reshape(1 << k, 2, 1 << (n_qubits - 1 - k))
        view[:, 0, :] += p * view[:, 1, :]
        view[:, 1, :] *= 1.0 - p
    return out


@njit
def damp_diagonal_jit(diag, probs):
    n_qubits = probs.shape[0]
    out = diag.copy()
    dim = out.shape[0]
    for k in range(n_qubits):
        p = probs[k]
        if p == 0.0:
            continue
        bit = 1 << (n_qubits - 1 - k)
        keep = 1.0 - p
        for s in range(dim):
            if s & bit:
                out[s ^ bit] += p * out[s]
                out[s] *= keep
    return out


# --- concurrence terms -------------------------------------------------------

def pair_terms_numpy(a, b, absz):
    """Return ``(max_i(|z_i| - w_i), argmax, w)``.

    The total of sqrt(a_i b_i) is summed in sorted order so the result does not
    depend on how the pairs are ordered.
    """
    s = np.sqrt(a * b)
    total = np.sort(s).sum()
    w = total - s
    gap = absz - w
    i = int(np.argmax(gap))
    return float(gap[i]), i, w


# No jitted form: the sort dominates and numpy's sort is several times faster
# than the one numba compiles.
pair_terms = pair_terms_numpy


# --- qubit relabelling -------------------------------------------------------

def permute_basis_numpy(indices, targets, n_qubits):
    """Move the bit of qubit ``k`` to the position of qubit ``targets[k]``."""
    indices = np.asarray(indices, dtype=np.int64)
    out = np.zeros_like(indices)
    for k in range(n_qubits):
        bit = (indices >> (n_qubits - 1 - k)) & 1
        out |= bit << (n_qubits - 1 - targets[k])
    return out


@njit
def permute_basis_jit(indices, targets, n_qubits):
    out = np.zeros_like(indices)
    for j in range(indices.shape[0]):
        src = indices[j]
        dst = 0
        for k in range(n_qubits):
            if (src >> (n_qubits - 1 - k)) & 1:
                dst |= 1 << (n_qubits - 1 - targets[k])
        out[j] = dst
    return out


if USE_NUMBA:
    damp_diagonal = damp_diagonal_jit
    permute_basis = permute_basis_jit
else:
    damp_diagonal = damp_diagonal_numpy
    permute_basis = permute_basis_numpy
