"""Compressed N-qubit X-matrices and their genuinely multipartite concurrence.

An X-matrix on N qubits only has entries on the diagonal and the anti-diagonal
of the 2^N x 2^N density matrix.  It is stored as n = 2^(N-1) pairs.  Pair
``i`` (1-based) couples basis index ``p = i - 1`` with its bitwise complement
``p_bar = 2^N - 1 - p``:

    rho[p, p] = a_i,   rho[p_bar, p_bar] = b_i,   rho[p, p_bar] = z_i.

Qubit 1 is the most significant bit of a basis index.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidPermutation,
    NormalizationError,
    ParseError,
    PositivityViolation,
    RangeError,
    ShapeError,
    StorageLimit,
)

DEFAULT_TOL = 1e-9
MAX_QUBITS = 20


class PairEntry(NamedTuple):
    a: float
    b: float
    z: complex


class ConcurrenceReport(NamedTuple):
    value: float
    witness_pair: int
    w: np.ndarray


@dataclass(frozen=True, eq=False)
class XMatrix:
    """Validated X-form density matrix.

    Use :func:`make_xmatrix` or :meth:`from_arrays` to build one; the arrays are
    stored read-only.
    """

    n_qubits: int
    a: np.ndarray
    b: np.ndarray
    z: np.ndarray

    @classmethod
    def from_arrays(cls, n_qubits, a, b, z, *, tol=DEFAULT_TOL, validate=True,
                    max_qubits=MAX_QUBITS):
        n_qubits = int(n_qubits)
        if n_qubits < 1:
            raise ShapeError(f"n_qubits must be >= 1, got {n_qubits}")
        if n_qubits > max_qubits:
            raise StorageLimit(
                f"{n_qubits} qubits exceeds the explicit storage limit of {max_qubits}"
            )
        a = np.array(a, dtype=np.float64)
        b = np.array(b, dtype=np.float64)
        z = np.array(z, dtype=np.complex128)
        if validate:
            check_pairs(n_qubits, a, b, z, tol=tol)
        for arr in (a, b, z):
            arr.setflags(write=False)
        return cls(n_qubits, a, b, z)

    @property
    def n_pairs(self) -> int:
        return self.a.shape[0]

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    @property
    def pairs(self) -> list[PairEntry]:
        return [PairEntry(float(a), float(b), complex(z))
                for a, b, z in zip(self.a, self.b, self.z)]

    def pair(self, i: int) -> PairEntry:
        pair_basis(i, self.n_qubits)
        return PairEntry(float(self.a[i - 1]), float(self.b[i - 1]), complex(self.z[i - 1]))

    def trace(self) -> float:
        return math.fsum(self.a) + math.fsum(self.b)

    def diagonal(self) -> np.ndarray:
        """Diagonal of the full matrix, indexed by basis state."""
        return np.concatenate([self.a, self.b[::-1]])

    def allclose(self, other: "XMatrix", atol=1e-12) -> bool:
        return (
            self.n_qubits == other.n_qubits
            and np.allclose(self.a, other.a, rtol=0, atol=atol)
            and np.allclose(self.b, other.b, rtol=0, atol=atol)
            and np.allclose(self.z, other.z, rtol=0, atol=atol)
        )

    def __repr__(self):
        return f"XMatrix(n_qubits={self.n_qubits}, n_pairs={self.n_pairs})"


def check_pairs(n_qubits, a, b, z, tol=DEFAULT_TOL):
    """Raise if the pair arrays do not describe a normalized X-matrix."""
    n = 2 ** (n_qubits - 1)
    for name, arr in (("a", a), ("b", b), ("z", z)):
        if arr.ndim != 1 or arr.shape[0] != n:
            raise ShapeError(
                f"expected {n} pairs for {n_qubits} qubits, {name} has shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ShapeError(f"non-finite entry in {name}")
    bad = np.flatnonzero((a < -tol) | (b < -tol))
    if bad.size:
        i = int(bad[0])
        raise PositivityViolation(i + 1, f"negative weight a={a[i]!r}, b={b[i]!r}")
    excess = np.abs(z) ** 2 - a * b
    bad = np.flatnonzero(excess > tol)
    if bad.size:
        i = int(bad[0])
        raise PositivityViolation(
            i + 1, f"|z|^2 exceeds a*b by {excess[i]:.3g} (not positive semidefinite)"
        )
    trace = math.fsum(a) + math.fsum(b)
    if abs(trace - 1.0) > tol:
        raise NormalizationError(trace)


def make_xmatrix(n_qubits: int, pairs: Sequence, tol=DEFAULT_TOL,
                 max_qubits=MAX_QUBITS) -> XMatrix:
    """Build an :class:`XMatrix` from ``(a, b, z)`` triples in pair order.

    Nothing is renormalized or clamped; invalid input raises.

    >>> make_xmatrix(3, [(0.5, 0.5, 0.5), (0, 0, 0), (0, 0, 0), (0, 0, 0)]).n_pairs
    4
    """
    n_qubits = int(n_qubits)
    if n_qubits < 1:
        raise ShapeError(f"n_qubits must be >= 1, got {n_qubits}")
    if n_qubits > max_qubits:
        raise StorageLimit(
            f"{n_qubits} qubits exceeds the explicit storage limit of {max_qubits}"
        )
    pairs = list(pairs)
    n = 2 ** (n_qubits - 1)
    if len(pairs) != n:
        raise ShapeError(f"expected {n} pairs for {n_qubits} qubits, got {len(pairs)}")
    try:
        a = [float(p[0]) for p in pairs]
        b = [float(p[1]) for p in pairs]
        z = [complex(p[2]) for p in pairs]
    except (TypeError, IndexError, ValueError) as exc:
        raise ShapeError(f"each pair must be an (a, b, z) triple: {exc}") from None
    return XMatrix.from_arrays(n_qubits, a, b, z, tol=tol, max_qubits=max_qubits)


def pair_basis(i: int, n_qubits: int) -> tuple[int, int]:
    """Basis indices ``(p, p_bar)`` coupled by pair ``i`` (1-based)."""
    n = 2 ** (n_qubits - 1)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"pair index {i} outside 1..{n}")
    p = i - 1
    return p, 2 ** n_qubits - 1 - p


def gm_concurrence(x: XMatrix) -> ConcurrenceReport:
    """GM concurrence ``2 max(0, max_i |z_i| - w_i)``, ``w_i = sum_{j != i} sqrt(a_j b_j)``.

    The witness is the smallest pair index attaining the maximum.
    """
    gap, arg, w = kernels.pair_terms(x.a, x.b, np.abs(x.z))
    return ConcurrenceReport(2.0 * max(0.0, float(gap)), int(arg) + 1, np.asarray(w))


def mix(lam: float, x1: XMatrix, x2: XMatrix, tol=DEFAULT_TOL) -> XMatrix:
    """Convex combination ``lam * x1 + (1 - lam) * x2``."""
    if not 0.0 <= lam <= 1.0:
        raise RangeError(f"mixing weight {lam} outside [0, 1]")
    if x1.n_qubits != x2.n_qubits:
        raise DimensionMismatch(f"{x1.n_qubits} vs {x2.n_qubits} qubits")
    mu = 1.0 - lam
    return XMatrix.from_arrays(
        x1.n_qubits,
        lam * x1.a + mu * x2.a,
        lam * x1.b + mu * x2.b,
        lam * x1.z + mu * x2.z,
        tol=tol,
    )


def permute_qubits(x: XMatrix, sigma: Sequence[int]) -> XMatrix:
    """Relabel qubits: qubit ``k`` of ``x`` becomes qubit ``sigma[k-1]`` (1-based)."""
    n_qubits = x.n_qubits
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(1, n_qubits + 1)):
        raise InvalidPermutation(f"{sigma} is not a permutation of 1..{n_qubits}")
    targets = np.array(sigma, dtype=np.int64) - 1
    n = x.n_pairs
    moved = kernels.permute_basis(np.arange(n, dtype=np.int64), targets, n_qubits)
    flipped = moved >= n
    dest = np.where(flipped, 2 ** n_qubits - 1 - moved, moved)
    a = np.empty(n)
    b = np.empty(n)
    z = np.empty(n, dtype=np.complex128)
    a[dest] = np.where(flipped, x.b, x.a)
    b[dest] = np.where(flipped, x.a, x.b)
    z[dest] = np.where(flipped, np.conj(x.z), x.z)
    return XMatrix.from_arrays(n_qubits, a, b, z, validate=False)


def from_diagonal(diag, tol=DEFAULT_TOL) -> XMatrix:
    """Diagonal density matrix (all coherences zero) from its 2^N diagonal."""
    diag = np.asarray(diag, dtype=np.float64)
    dim = diag.shape[0]
    n_qubits = dim.bit_length() - 1
    if dim < 2 or 2 ** n_qubits != dim:
        raise ShapeError(f"diagonal length {dim} is not a power of two >= 2")
    n = dim // 2
    return XMatrix.from_arrays(n_qubits, diag[:n], diag[n:][::-1], np.zeros(n), tol=tol)


def maximally_mixed(n_qubits: int) -> XMatrix:
    dim = 2 ** n_qubits
    return from_diagonal(np.full(dim, 1.0 / dim))


def random_xmatrix(n_qubits: int, rng=None, concentration=1.0, coherence=None) -> XMatrix:
    """Random valid X-matrix.

    Weights are Dirichlet(``concentration``) over the 2^N diagonal entries;
    ``|z_i| = u_i sqrt(a_i b_i)`` with ``u_i`` uniform on [0, 1] unless
    ``coherence`` fixes it, and a uniform random phase.
    """
    rng = np.random.default_rng(rng)
    n = 2 ** (n_qubits - 1)
    weights = rng.dirichlet(np.full(2 * n, float(concentration)))
    a, b = weights[:n], weights[n:]
    u = rng.uniform(size=n) if coherence is None else np.full(n, float(coherence))
    phase = np.exp(2j * np.pi * rng.uniform(size=n))
    z = u * np.sqrt(a * b) * phase
    return XMatrix.from_arrays(n_qubits, a, b, z)


# --- interchange file --------------------------------------------------------

def to_dict(x: XMatrix) -> dict:
    return {
        "n_qubits": x.n_qubits,
        "pairs": [
            {"a": float(a), "b": float(b), "z_re": float(z.real), "z_im": float(z.imag)}
            for a, b, z in zip(x.a, x.b, x.z)
        ],
    }


def from_dict(doc, tol=DEFAULT_TOL, max_qubits=MAX_QUBITS) -> XMatrix:
    if not isinstance(doc, dict) or "n_qubits" not in doc or "pairs" not in doc:
        raise ParseError('expected an object with "n_qubits" and "pairs"')
    n_qubits = doc["n_qubits"]
    if not isinstance(n_qubits, int) or isinstance(n_qubits, bool):
        raise ParseError(f'"n_qubits" must be an integer, got {n_qubits!r}')
    if not isinstance(doc["pairs"], list):
        raise ParseError('"pairs" must be a list')
    triples = []
    for i, entry in enumerate(doc["pairs"], start=1):
        try:
            triples.append((float(entry["a"]), float(entry["b"]),
                            complex(float(entry["z_re"]), float(entry["z_im"]))))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"pair {i}: malformed entry {entry!r} ({exc})") from None
    return make_xmatrix(n_qubits, triples, tol=tol, max_qubits=max_qubits)


def dumps(x: XMatrix) -> str:
    # repr-based float output round-trips every double exactly
    return json.dumps(to_dict(x), indent=1) + "\n"


def loads(text: str, tol=DEFAULT_TOL, max_qubits=MAX_QUBITS) -> XMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(doc, tol=tol, max_qubits=max_qubits)


def save(x: XMatrix, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(x))


def load(path, tol=DEFAULT_TOL, max_qubits=MAX_QUBITS) -> XMatrix:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), tol=tol, max_qubits=max_qubits)
