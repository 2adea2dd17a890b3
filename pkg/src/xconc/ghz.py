"""Generalized GHZ states and their closed-form decay under amplitude damping.

The state ``|Phi_N^(k), alpha>`` is ``cos(alpha)`` on "first N-k qubits excited,
last k in the ground level" plus ``sin(alpha)`` on the complementary pattern.
The analytic functions here never build 2^N arrays, so they work for any N.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NoEntanglement, RangeError, ShapeError, StorageLimit
from .xmatrix import MAX_QUBITS, XMatrix

_COS_FLOOR = 1e-15
LN2 = math.log(2.0)


@dataclass(frozen=True)
class GhzParams:
    n_qubits: int
    k: int
    alpha: float

    def __post_init__(self):
        if self.n_qubits < 2:
            raise ShapeError(f"GHZ states need N >= 2, got {self.n_qubits}")
        if not 0 <= self.k <= self.n_qubits:
            raise RangeError(f"k={self.k} outside 0..{self.n_qubits}")
        if not math.isfinite(self.alpha):
            raise DomainError("alpha must be finite")


class CriticalP(NamedTuple):
    p_c: float
    finite_lifetime: bool


class HalfLife(NamedTuple):
    exact: float
    approx: float
    coherence: float


def ghz_xmatrix(params: GhzParams, max_qubits=MAX_QUBITS) -> XMatrix:
    """Rank-one X-matrix of ``|Phi_N^(k), alpha>``."""
    n_qubits, k, alpha = params.n_qubits, params.k, params.alpha
    if n_qubits > max_qubits:
        raise StorageLimit(
            f"{n_qubits} qubits exceeds the explicit storage limit of {max_qubits}; "
            "use the analytic functions instead"
        )
    n = 2 ** (n_qubits - 1)
    p_hi = 2 ** n_qubits - 2 ** k  # first N-k qubits excited
    p_lo = 2 ** k - 1              # last k qubits excited
    c, s = math.cos(alpha), math.sin(alpha)
    a = np.zeros(n)
    b = np.zeros(n)
    z = np.zeros(n, dtype=np.complex128)
    if p_lo < n:
        i = p_lo
        a[i], b[i] = s * s, c * c
    else:
        i = p_hi
        a[i], b[i] = c * c, s * s
    # rho[p_lo, p_hi] = sin*cos is real, so its transpose partner needs no conjugation
    z[i] = c * s
    return XMatrix.from_arrays(n_qubits, a, b, z, max_qubits=max_qubits)


def _check_p(P):
    P = float(P)
    if not 0.0 <= P <= 1.0:
        raise RangeError(f"P={P!r} outside [0, 1]")
    return P


def _check_cos(alpha):
    if abs(math.cos(alpha)) < _COS_FLOOR:
        raise DomainError("cos(alpha) = 0: tan(alpha) diverges")


def _log_pairs_minus_one(n_qubits):
    """``log(2^(N-1) - 1)`` without forming 2^(N-1)."""
    return (n_qubits - 1) * LN2 + math.log1p(-(2.0 ** (1 - n_qubits)))


def q_value(n_qubits: int, alpha: float, P: float) -> float:
    """Signed closed-form concurrence of the damped k=0 GHZ state.

    ``2 cos^2(a) (1-P)^(N/2) (|tan a| - (2^(N-1)-1) P^(N/2))``.  The subtracted
    term is evaluated as one exponent ``(N/2) log(4P(1-P)) + ...`` which never
    exceeds zero, so large N neither overflows nor produces 0 * inf.
    """
    n_qubits = int(n_qubits)
    if n_qubits < 2:
        raise ShapeError(f"need N >= 2, got {n_qubits}")
    P = _check_p(P)
    _check_cos(alpha)
    half = 0.5 * n_qubits
    lead = abs(math.sin(2.0 * alpha))
    if P == 1.0:
        return 0.0
    if P == 0.0:
        return lead
    decay = math.exp(half * math.log1p(-P))
    log_tail = (half * math.log(4.0 * P * (1.0 - P)) - n_qubits * LN2
                + _log_pairs_minus_one(n_qubits))
    tail = 2.0 * math.cos(alpha) ** 2 * math.exp(log_tail)
    return lead * decay - tail


def critical_p(n_qubits: int, alpha: float | None = None, *,
               tan_alpha: float | None = None) -> CriticalP:
    """Damping probability beyond which the k=0 concurrence is exactly zero.

    ``(|tan a| / (2^(N-1) - 1))^(2/N)`` clamped to 1.  Give either ``alpha`` or
    ``tan_alpha``.
    """
    n_qubits = int(n_qubits)
    if n_qubits < 2:
        raise ShapeError(f"need N >= 2, got {n_qubits}")
    if (alpha is None) == (tan_alpha is None):
        raise DomainError("give exactly one of alpha and tan_alpha")
    if tan_alpha is None:
        _check_cos(alpha)
        if abs(math.sin(alpha)) < _COS_FLOOR:
            raise DomainError("sin(alpha) = 0: the state is a product state")
        tan_alpha = math.tan(alpha)
    t = abs(float(tan_alpha))
    if t == 0.0 or not math.isfinite(t):
        raise DomainError(f"|tan(alpha)| = {t} has no critical probability")
    if n_qubits <= 1000:
        p_c = (t / (2.0 ** (n_qubits - 1) - 1.0)) ** (2.0 / n_qubits)
    else:
        p_c = math.exp(2.0 / n_qubits * (math.log(t) - _log_pairs_minus_one(n_qubits)))
    return CriticalP(min(p_c, 1.0), p_c < 1.0)


def concurrence_k0(n_qubits: int, alpha: float, P: float) -> float:
    """``max(0, q_value)``; exactly zero from the critical probability on."""
    q = q_value(n_qubits, alpha, P)
    if abs(math.sin(alpha)) < _COS_FLOOR or P >= critical_p(n_qubits, alpha).p_c:
        return 0.0
    return max(0.0, q)


def concurrence_kpos(n_qubits: int, alpha: float, P: float) -> float:
    """``|sin 2a| (1-P)^(N/2)`` for ``0 < k < N``."""
    P = _check_p(P)
    return abs(math.sin(2.0 * alpha)) * (1.0 - P) ** (0.5 * int(n_qubits))


def ghz_concurrence(params: GhzParams, P: float) -> float:
    """Closed-form concurrence of the damped state for any k.

    ``k = N`` is ``k = 0`` with the qubit order reversed and ``alpha`` replaced by
    ``pi/2 - alpha``.
    """
    k = min(params.k, params.n_qubits - params.k)
    if k > 0:
        return concurrence_kpos(params.n_qubits, params.alpha, P)
    alpha = params.alpha if params.k == 0 else math.pi / 2 - params.alpha
    if abs(math.cos(alpha)) < _COS_FLOOR:
        _check_p(P)
        return 0.0
    return concurrence_k0(params.n_qubits, alpha, P)


def half_life(n_qubits: int, alpha: float) -> HalfLife:
    """Damping probability at which the k=0 concurrence falls to half its start.

    ``exact`` is a bracketed root of ``Q(P) = Q(0)/2`` (tolerance 1e-14),
    ``approx`` is ``2 ln 2 / N`` and ``coherence`` is where ``(1-P)^(N/2) = 1/2``.
    """
    start = concurrence_k0(n_qubits, alpha, 0.0)
    if start <= 0.0:
        raise NoEntanglement("the initial state carries no GM concurrence")
    upper = critical_p(n_qubits, alpha).p_c
    target = 0.5 * start
    exact = brentq(lambda P: q_value(n_qubits, alpha, P) - target, 0.0, upper,
                   xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)
    return HalfLife(exact, 2.0 * LN2 / n_qubits, -math.expm1(-2.0 * LN2 / n_qubits))
