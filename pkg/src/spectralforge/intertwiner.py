"""Unitary intertwiner between isospectral operators and first integrals.

Given a Hermitian H and a synthesized diagonal A with the same spectrum,
the unitary U maps eigenvectors of H onto eigenvectors of A in ascending
eigenvalue order, so UH = AU.  Conjugating the number operators through U
produces a commuting family whose joint eigenvalue tuples separate basis
states.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import spectra
from .errors import InputError, NotIsospectralError
from .fockspace import TruncationBasis, eigendecompose, number_operator

UNITARITY_TOL_PER_DIM = 1e-9
DEFAULT_COMMUTATOR_TOL = 1e-8


def _fix_phases(V: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    out = V.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        j = int(np.argmax(np.abs(col)))
        pivot = col[j]
        if pivot != 0:
            out[:, k] = col * (abs(pivot) / pivot)
    return out


def build_unitary(H: np.ndarray, A: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Unitary U with UH = AU, built from ascending-ordered eigenbases.

    Requires the two spectra to match as multisets within ``tol``
    (default 1e-9 * max(1, spectral range)).
    """
    H = np.asarray(H, dtype=complex)
    A = np.asarray(A, dtype=complex)
    if H.shape != A.shape:
        raise InputError(f"dimension mismatch: {H.shape} vs {A.shape}")
    wH, VH = eigendecompose(H)
    wA, VA = eigendecompose(A)
    if tol is None:
        tol = spectra.default_tolerance(wH, wA)
    report = spectra.completely_isospectral(wH, wA, tol)
    if not report.matched:
        raise NotIsospectralError(
            f"operators are not isospectral within tol={tol:g}", report=report
        )
    VH = _fix_phases(VH)
    VA = _fix_phases(VA)
    return VA @ VH.conj().T


def first_integrals(U: np.ndarray, basis: TruncationBasis) -> list[np.ndarray]:
    """T_i = U† N_i U for each mode of the basis."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (basis.d, basis.d):
        raise InputError(
            f"unitary dimension {U.shape} does not match basis size {basis.d}"
        )
    Ud = U.conj().T
    return [Ud @ number_operator(basis, i) @ U for i in range(1, basis.n + 1)]


@dataclass
class IntegrabilityCertificate:
    """Verification record for a commuting family of first integrals."""

    dim: int
    n_modes: int
    U: np.ndarray = field(repr=False)
    T: list = field(repr=False)
    joint_spectrum: np.ndarray = field(repr=False)
    unitarity_defect: float
    intertwining_residual: float | None
    max_pairwise_commutator: float
    max_hamiltonian_commutator: float
    independence: bool
    commutator_tol: float
    unitarity_tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "n_modes": self.n_modes,
            "unitarity_defect": self.unitarity_defect,
            "intertwining_residual": self.intertwining_residual,
            "max_pairwise_commutator": self.max_pairwise_commutator,
            "max_hamiltonian_commutator": self.max_hamiltonian_commutator,
            "independence": self.independence,
            "commutator_tol": self.commutator_tol,
            "unitarity_tol": self.unitarity_tol,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _frob(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, "fro"))


def verify_integrability(
    H: np.ndarray,
    U: np.ndarray,
    T: list[np.ndarray],
    basis: TruncationBasis,
    A: np.ndarray | None = None,
    commutator_tol: float = DEFAULT_COMMUTATOR_TOL,
) -> IntegrabilityCertificate:
    """Measure commutators, unitarity, and joint-spectrum injectivity.

    Failures are reported in the certificate, never raised.
    """
    H = np.asarray(H, dtype=complex)
    d = H.shape[0]
    if any(Ti.shape != (d, d) for Ti in T) or U.shape != (d, d):
        raise InputError("all matrices must share the Hamiltonian's dimension")

    unit_defect = float(np.abs(U.conj().T @ U - np.eye(d)).max())
    inter_res = None
    if A is not None:
        inter_res = _frob(U @ H - np.asarray(A, dtype=complex) @ U)

    max_pair = 0.0
    for i in range(len(T)):
        for j in range(i + 1, len(T)):
            max_pair = max(max_pair, _frob(T[i] @ T[j] - T[j] @ T[i]))
    max_ham = max((_frob(H @ Ti - Ti @ H) for Ti in T), default=0.0)

    # exact integer check: the quantum-number tuples must separate states
    tuples = {tuple(int(v) for v in row) for row in basis.indices}
    independence = len(tuples) == basis.d

    scale = _frob(H) + sum(_frob(Ti) for Ti in T)
    passed = (
        independence
        and max(max_pair, max_ham) <= commutator_tol * max(1.0, scale)
        and unit_defect <= UNITARITY_TOL_PER_DIM * d
    )
    return IntegrabilityCertificate(
        dim=d,
        n_modes=basis.n,
        U=U,
        T=list(T),
        joint_spectrum=basis.indices.copy(),
        unitarity_defect=unit_defect,
        intertwining_residual=inter_res,
        max_pairwise_commutator=max_pair,
        max_hamiltonian_commutator=max_ham,
        independence=independence,
        commutator_tol=commutator_tol,
        unitarity_tol=UNITARITY_TOL_PER_DIM * d,
        passed=passed,
    )


def certify(H: np.ndarray, seq, n_modes: int, tol: float | None = None) -> IntegrabilityCertificate:
    """Full pipeline: synthesize A from ``seq``, intertwine, verify.

    ``seq`` defaults to the spectrum of H itself when given as None.
    """
    from .fockspace import synthesize  # local import avoids cycle at module load

    H = np.asarray(H, dtype=complex)
    d = H.shape[0]
    if seq is None:
        seq, _ = eigendecompose(H)
    basis = TruncationBasis.build(n_modes, d)
    A = synthesize(seq, basis)
    U = build_unitary(H, A, tol=tol)
    T = first_integrals(U, basis)
    return verify_integrability(H, U, T, basis, A=A)
