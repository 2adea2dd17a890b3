"""Genuinely multipartite concurrence of N-qubit X-matrices.

Closed-form GM concurrence, local amplitude damping, GHZ decay analytics,
dense cross-check oracles and explicit biseparability certificates.
"""
from .certificate import (Certificate, CertificateCheck, CertificatePart,
                          biseparability_certificate, check_certificate)
from .channels import (DampingSpec, compose, concurrence_trajectory, damp,
                       decay_probability)
from .errors import (DomainError, IterationLimit, NormalizationError, ParseError,
                     PositivityViolation, StorageLimit, ValidationError,
                     VerificationError, XConcError)
from .ghz import (CriticalP, GhzParams, HalfLife, concurrence_k0, concurrence_kpos,
                  critical_p, ghz_concurrence, ghz_xmatrix, half_life, q_value)
from .xmatrix import (ConcurrenceReport, PairEntry, XMatrix, from_diagonal,
                      gm_concurrence, load, loads, make_xmatrix, maximally_mixed, mix,
                      pair_basis, permute_qubits, random_xmatrix, save, dumps)

__version__ = "0.1.0"

__all__ = [
    "Certificate", "CertificateCheck", "CertificatePart", "ConcurrenceReport",
    "CriticalP", "DampingSpec", "DomainError", "GhzParams", "HalfLife",
    "IterationLimit", "NormalizationError", "PairEntry", "ParseError",
    "PositivityViolation", "StorageLimit", "ValidationError", "VerificationError",
    "XConcError", "XMatrix", "biseparability_certificate", "check_certificate",
    "compose", "concurrence_k0", "concurrence_kpos", "concurrence_trajectory",
    "critical_p", "damp", "decay_probability", "dumps", "from_diagonal",
    "ghz_concurrence", "ghz_xmatrix", "gm_concurrence", "half_life", "load", "loads",
    "make_xmatrix", "maximally_mixed", "mix", "pair_basis", "permute_qubits",
    "q_value", "random_xmatrix", "save",
]
