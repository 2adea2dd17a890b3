"""Local amplitude damping acting on X-matrices.

Each qubit decays independently with probability ``p_k`` (``p = 1 - exp(-gamma t)``
for a zero-temperature Markovian reservoir).  Bit value 1 is the excited level,
so diagonal weight flows toward basis index 0.  Damping never populates entries
off the X, which lets the evolution run on the compressed pairs directly.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch, RangeError
from .xmatrix import DEFAULT_TOL, XMatrix, gm_concurrence


def _check_probability(p, what="probability"):
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise RangeError(f"{what} {p!r} outside [0, 1]")
    return p


def decay_probability(gamma: float, t: float) -> float:
    """``1 - exp(-gamma t)``."""
    if gamma < 0 or t < 0:
        raise RangeError("damping rate and time must be non-negative")
    return -math.expm1(-gamma * t)


@dataclass(frozen=True)
class DampingSpec:
    """Per-qubit decay probabilities, qubit 1 first."""

    probabilities: tuple

    def __post_init__(self):
        probs = tuple(_check_probability(p) for p in self.probabilities)
        if not probs:
            raise RangeError("need at least one qubit")
        object.__setattr__(self, "probabilities", probs)

    @classmethod
    def uniform(cls, n_qubits: int, p: float) -> "DampingSpec":
        return cls((float(p),) * int(n_qubits))

    @property
    def n_qubits(self) -> int:
        return len(self.probabilities)

    def then(self, other: "DampingSpec") -> "DampingSpec":
        """Spec equivalent to applying ``self`` and then ``other``."""
        if other.n_qubits != self.n_qubits:
            raise DimensionMismatch(f"{self.n_qubits} vs {other.n_qubits} qubits")
        return DampingSpec(tuple(compose(p, q) for p, q in
                                 zip(self.probabilities, other.probabilities)))

    def coherence_factor(self) -> float:
        """Factor multiplying every anti-diagonal entry."""
        return math.prod(math.sqrt(1.0 - p) for p in self.probabilities)


def compose(p1: float, p2: float) -> float:
    """Decay probability of two damping steps in sequence, ``1 - (1-p1)(1-p2)``."""
    p1 = _check_probability(p1)
    p2 = _check_probability(p2)
    if p1 == 1.0 or p2 == 1.0:
        return 1.0
    return p1 + p2 * (1.0 - p1)


def damp(x: XMatrix, spec: DampingSpec | Sequence[float] | float,
         tol=DEFAULT_TOL) -> XMatrix:
    """Evolve ``x`` through independent amplitude damping channels.

    ``spec`` may also be a bare sequence of probabilities, or one float applied
    to every qubit.
    """
    if not isinstance(spec, DampingSpec):
        if np.ndim(spec) == 0:
            spec = DampingSpec.uniform(x.n_qubits, spec)
        else:
            spec = DampingSpec(tuple(spec))
    if spec.n_qubits != x.n_qubits:
        raise DimensionMismatch(
            f"damping spec has {spec.n_qubits} entries for {x.n_qubits} qubits"
        )
    probs = np.array(spec.probabilities, dtype=np.float64)
    diag = kernels.damp_diagonal(x.diagonal(), probs)
    n = x.n_pairs
    z = x.z * spec.coherence_factor()
    return XMatrix.from_arrays(x.n_qubits, diag[:n], diag[n:][::-1], z, tol=tol)


def concurrence_trajectory(x: XMatrix, grid: Iterable[float],
                           workers: int | None = None) -> list[tuple[float, float]]:
    """``(P, C_GM(damp(x, P)))`` for each grid point, always from the initial state.

    With ``workers > 1`` points are evaluated in a thread pool; output order
    follows the grid.
    """
    grid = [_check_probability(p, "grid value") for p in grid]

    def point(p):
        return p, gm_concurrence(damp(x, p)).value

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(point, grid))
    return [point(p) for p in grid]
