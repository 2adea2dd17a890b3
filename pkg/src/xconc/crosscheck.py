"""Run every applicable oracle comparison on one X-matrix."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .certificate import biseparability_certificate, check_certificate
from .channels import DampingSpec, damp
from .oracle import (DENSE_LIMIT, KRAUS_LIMIT, dense_damp, min_eigenvalue,
                     pair_to_two_qubit, principal_state, pure_gm_concurrence, to_dense,
                     wootters_concurrence)
from .xmatrix import XMatrix, gm_concurrence


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def _diff(name, got, want, tol):
    gap = abs(got - want)
    return CheckResult(name, gap <= tol, f"formula={want!r} oracle={got!r} |diff|={gap:.3g}")


def cross_check(x: XMatrix, spec: DampingSpec | None = None, tol=1e-10,
                certificate_tol=1e-9) -> list[CheckResult]:
    formula = gm_concurrence(x).value
    results = []
    support = np.flatnonzero((x.a != 0) | (x.b != 0) | (x.z != 0))

    if x.n_qubits <= DENSE_LIMIT:
        rho = to_dense(x)
        low = float(min_eigenvalue(rho))
        results.append(CheckResult("dense-psd", low >= -tol, f"min eigenvalue {low:.3g}"))
        if x.n_qubits == 2:
            results.append(_diff("wootters", wootters_concurrence(rho), formula, tol))
        top = np.linalg.eigvalsh(rho)[-1]
        if abs(top - 1.0) <= 1e-10:
            results.append(_diff("pure-state", pure_gm_concurrence(principal_state(rho)),
                                 formula, tol))

    if len(support) == 2 and x.n_qubits > 2:
        s = np.sqrt(x.a * x.b)
        anchor, other = sorted(support, key=lambda i: (-s[i], i))
        r = pair_to_two_qubit(x, int(other) + 1, anchor=int(anchor) + 1)
        results.append(_diff("two-pair-map", wootters_concurrence(r), formula, tol))

    cert = biseparability_certificate(x, tol=certificate_tol)
    audit = check_certificate(x, cert)
    results.append(CheckResult(
        "certificate", audit.ok(residual_tol=certificate_tol),
        f"case={cert.case} iterations={cert.iterations} residual={audit.residual_trace:.3g} "
        f"min_eig={audit.min_part_eigenvalue:.3g} "
        f"max_bisep={audit.max_biseparable_concurrence:.3g}"))
    if formula > 0:
        results.append(_diff("certificate-core", audit.core_concurrence, formula, tol))

    if spec is not None and x.n_qubits <= KRAUS_LIMIT:
        fast = to_dense(damp(x, spec))
        slow = dense_damp(to_dense(x), spec)
        gap = float(np.max(np.abs(fast - slow)))
        results.append(CheckResult("dense-damping", gap <= 1e-12, f"max entry diff {gap:.3g}"))
    return results
