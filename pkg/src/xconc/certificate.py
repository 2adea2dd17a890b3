"""Constructive biseparability certificates for X-matrices.

An X-matrix is split into positive parts supported on at most two anti-diagonal
pairs.  A two-pair part is a two-qubit state across the bipartition of
:func:`xconc.oracle.two_pair_parties`, so its GM concurrence is bounded by its
Wootters concurrence; every part tagged biseparable has Wootters value zero.

Three regimes, with pair ``m`` the one of largest ``s_m = sqrt(a_m b_m)`` and
``w = sum_{i != m} s_i``:

``a``  ``|z_m| > w``: one single-pair core carrying ``2(|z_m| - w)`` of
       concurrence plus zero-concurrence parts ``(m, i)``.
``b``  ``|z_m| <= w <= s_m``: pair ``m`` is shared out over the parts ``(m, i)``
       in proportion ``s_i / w``.
``c``  ``s_m < w``: peel off ``t * (pair m) + r * (rest)`` with
       ``t = w / (w + s_m)``, ``r = 1 - t``, which sits exactly on the boundary
       of regime ``b``; repeat on the remainder ``r * (pair m) + t * (rest)``.

Regime ``c`` shrinks the remaining trace by at least ``t <= 1 - 1/n`` per step.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IterationLimit
from .oracle import min_eigenvalue, pair_to_two_qubit, wootters_concurrence
from .xmatrix import XMatrix

LEMMA1_ZERO = "lemma1-zero"
CASE_B_PART = "case-b-part"
ENTANGLED_CORE = "entangled-core"

DEFAULT_TOL = 1e-9
_DISPATCH_EPS = 1e-14


@dataclass(frozen=True)
class CertificatePart:
    """Normalized part on pairs ``pairs`` (1-based) with its trace ``weight``."""

    weight: float
    tag: str
    pairs: tuple
    a: tuple
    b: tuple
    z: tuple

    def to_xmatrix(self, n_qubits: int) -> XMatrix:
        n = 2 ** (n_qubits - 1)
        a, b, z = np.zeros(n), np.zeros(n), np.zeros(n, dtype=np.complex128)
        idx = np.array(self.pairs) - 1
        a[idx], b[idx], z[idx] = self.a, self.b, self.z
        return XMatrix.from_arrays(n_qubits, a, b, z, validate=False)


@dataclass
class Certificate:
    n_qubits: int
    case: str
    parts: list = field(default_factory=list)
    residual: tuple = ()
    residual_trace: float = 0.0
    case_trace: list = field(default_factory=list)
    permutation: list = field(default_factory=list)
    anchors: list = field(default_factory=list)
    iterations: int = 0
    complete: bool = True
    bound_violations: int = 0
    core_concurrence: float = 0.0
    tol: float = DEFAULT_TOL

    def reconstruct(self):
        """Sum of weighted parts plus residual, as ``(a, b, z)`` arrays."""
        ra, rb, rz = (np.array(v, copy=True) for v in self.residual)
        for part in self.parts:
            idx = np.array(part.pairs) - 1
            ra[idx] += part.weight * np.asarray(part.a)
            rb[idx] += part.weight * np.asarray(part.b)
            rz[idx] += part.weight * np.asarray(part.z)
        return ra, rb, rz

    def to_dict(self) -> dict:
        def entries(indices, a, b, z):
            return [{"index": int(i), "a": float(x), "b": float(y),
                     "z_re": float(complex(w).real), "z_im": float(complex(w).imag)}
                    for i, x, y, w in zip(indices, a, b, z)]

        ra, rb, rz = self.residual
        keep = np.flatnonzero((ra != 0) | (rb != 0) | (rz != 0))
        return {
            "n_qubits": self.n_qubits,
            "case": self.case,
            "complete": self.complete,
            "iterations": self.iterations,
            "tol": self.tol,
            "residual_trace": self.residual_trace,
            "case_trace": list(self.case_trace),
            "permutation": list(self.permutation),
            "anchors": list(self.anchors),
            "bound_violations": self.bound_violations,
            "core_concurrence": self.core_concurrence,
            "parts": [{"weight": p.weight, "tag": p.tag,
                       "pairs": entries(p.pairs, p.a, p.b, p.z)} for p in self.parts],
            "residual": entries(keep + 1, ra[keep], rb[keep], rz[keep]),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def default_max_iter(n_pairs: int, tol: float) -> int:
    """Iterations that the worst-case contraction ``1 - 1/n`` needs to reach ``tol``."""
    if n_pairs < 3:
        return 1
    rate = 1.0 - 1.0 / n_pairs
    return math.ceil(math.log(tol) / math.log(rate)) + 64


def _fsum_trace(a, b):
    return math.fsum(a) + math.fsum(b)


class _Builder:
    def __init__(self, n_qubits):
        self.n_qubits = n_qubits
        self.parts = []

    def add(self, tag, pairs, a, b, z):
        a = np.asarray(a, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        weight = math.fsum(a) + math.fsum(b)
        if weight <= 0.0:
            return
        z = np.asarray(z, dtype=np.complex128)
        self.parts.append(CertificatePart(
            weight, tag, tuple(int(p) + 1 for p in pairs),
            tuple(a / weight), tuple(b / weight), tuple(z / weight)))

    def share_out(self, tag, m, corner_scale, inner_scale, shares, a, b, z):
        """Parts ``corner_scale * shares[i] * (pair m) + inner_scale * (pair i)``."""
        for i in range(a.shape[0]):
            if i == m:
                continue
            if shares[i] > 0.0:
                f = corner_scale * shares[i]
                self.add(tag, (m, i),
                         (f * a[m], inner_scale * a[i]),
                         (f * b[m], inner_scale * b[i]),
                         (f * z[m], inner_scale * z[i]))
            else:
                self.add(tag, (i,), (inner_scale * a[i],), (inner_scale * b[i],),
                         (inner_scale * z[i],))


def biseparability_certificate(x: XMatrix, tol: float = DEFAULT_TOL,
                               max_iter: int | None = None,
                               strict: bool = False) -> Certificate:
    """Decompose ``x`` into biseparable parts (plus an entangled core if any).

    The regime-``c`` loop stops once the remaining trace is at most ``tol`` or
    after ``max_iter`` steps; in the latter case the certificate is returned
    with ``complete=False`` (or :class:`IterationLimit` is raised if ``strict``).
    """
    a = np.array(x.a, dtype=np.float64)
    b = np.array(x.b, dtype=np.float64)
    z = np.array(x.z, dtype=np.complex128)
    n = a.shape[0]
    if max_iter is None:
        max_iter = default_max_iter(n, tol)
    s = np.sqrt(a * b)
    cert = Certificate(
        n_qubits=x.n_qubits, case="",
        permutation=[int(i) + 1 for i in np.argsort(-s, kind="stable")], tol=tol,
    )
    build = _Builder(x.n_qubits)

    while True:
        trace = _fsum_trace(a, b)
        absz = np.abs(z)
        if not np.any(absz):
            # diagonal: a mixture of product states
            for i in np.flatnonzero((a > 0) | (b > 0)):
                build.add(LEMMA1_ZERO, (i,), (a[i],), (b[i],), (0.0,))
            a[:], b[:] = 0.0, 0.0
            cert.case = cert.case or "diagonal"
            break
        s = np.sqrt(a * b)
        m = int(np.argmax(s))
        s1 = s[m]
        w1 = np.sort(s).sum() - s1

        if absz[m] - w1 > _DISPATCH_EPS * trace:
            phase = z[m] / absz[m]
            shrink = 1.0 - w1 / s1
            build.add(ENTANGLED_CORE, (m,), (a[m] * shrink,), (b[m] * shrink,),
                      ((absz[m] - w1) * phase,))
            cert.core_concurrence = 2.0 * (absz[m] - w1)
            ratio = s / s1
            for i in range(n):
                if i == m:
                    continue
                if s[i] > 0.0:
                    build.add(LEMMA1_ZERO, (m, i), (a[m] * ratio[i], a[i]),
                              (b[m] * ratio[i], b[i]), (s[i] * phase, z[i]))
                else:
                    build.add(LEMMA1_ZERO, (i,), (a[i],), (b[i],), (z[i],))
            a[:], b[:], z[:] = 0.0, 0.0, 0.0
            cert.case = cert.case or "a"
            break

        if s1 >= w1:
            build.share_out(CASE_B_PART, m, 1.0, 1.0, s / w1, a, b, z)
            a[:], b[:], z[:] = 0.0, 0.0, 0.0
            cert.case = cert.case or "b"
            break

        cert.case = cert.case or "c"
        if cert.iterations >= max_iter:
            cert.complete = False
            break
        t = w1 / (w1 + s1)
        r = s1 / (w1 + s1)
        build.share_out(CASE_B_PART, m, t, r, s / w1, a, b, z)
        keep_m = (a[m] * r, b[m] * r, z[m] * r)
        a *= t
        b *= t
        z *= t
        a[m], b[m], z[m] = keep_m
        cert.iterations += 1
        cert.anchors.append(m + 1)
        if w1 > 3.0 * s1:
            cert.bound_violations += 1
        remaining = _fsum_trace(a, b)
        cert.case_trace.append(remaining)
        if remaining <= tol:
            break

    cert.parts = build.parts
    cert.residual = (a, b, z)
    cert.residual_trace = _fsum_trace(a, b)
    if cert.residual_trace > tol:
        cert.complete = False
    if strict and not cert.complete:
        raise IterationLimit(cert)
    return cert


@dataclass
class CertificateCheck:
    """``reconstruction_error`` compares parts plus residual with the input."""

    reconstruction_error: float
    min_part_eigenvalue: float
    max_biseparable_concurrence: float
    core_concurrence: float
    residual_trace: float

    def ok(self, residual_tol=DEFAULT_TOL, psd_tol=1e-10, zero_tol=1e-10,
           reconstruction_tol=1e-12) -> bool:
        return (self.reconstruction_error <= reconstruction_tol
                and self.residual_trace <= residual_tol
                and self.min_part_eigenvalue >= -psd_tol
                and self.max_biseparable_concurrence <= zero_tol)


def check_certificate(x: XMatrix, cert: Certificate) -> CertificateCheck:
    """Audit a certificate with the dense oracle routines.

    Each part is mapped to its 4x4 two-qubit matrix; positivity comes from its
    eigenvalues and biseparability from its Wootters concurrence.  The core's
    weighted concurrence is recomputed the same way.
    """
    ra, rb, rz = cert.reconstruct()
    err = max(np.max(np.abs(ra - x.a)), np.max(np.abs(rb - x.b)),
              np.max(np.abs(rz - x.z)))
    n = x.n_pairs
    blocks, tags, weights = [], [], []
    for part in cert.parts:
        px = part.to_xmatrix(x.n_qubits)
        if len(part.pairs) == 2:
            anchor, other = part.pairs
        elif n > 1:
            anchor = part.pairs[0]
            other = 2 if anchor == 1 else 1
        else:
            blocks.append(np.diag([px.a[0], 0, 0, px.b[0]]).astype(complex))
            blocks[-1][0, 3] = px.z[0]
            blocks[-1][3, 0] = np.conj(px.z[0])
            tags.append(part.tag)
            weights.append(part.weight)
            continue
        blocks.append(pair_to_two_qubit(px, other, anchor=anchor))
        tags.append(part.tag)
        weights.append(part.weight)
    if blocks:
        stack = np.array(blocks)
        min_eig = float(np.min(min_eigenvalue(stack)))
        conc = np.atleast_1d(wootters_concurrence(stack, check=False))
        tags = np.array(tags)
        bisep = conc[tags != ENTANGLED_CORE]
        core = conc[tags == ENTANGLED_CORE] * np.array(weights)[tags == ENTANGLED_CORE]
    else:
        min_eig, bisep, core = 0.0, np.zeros(0), np.zeros(0)
    return CertificateCheck(
        reconstruction_error=float(err),
        min_part_eigenvalue=min_eig,
        max_biseparable_concurrence=float(np.max(bisep, initial=0.0)),
        core_concurrence=float(np.sum(core)),
        residual_trace=cert.residual_trace,
    )
