"""Spectral linear algebra: eigendecompositions, matrix exp/log, Hermitian norms.

The unitary eigendecomposition splits G into commuting Hermitian parts
A = (G + G†)/2 and B = (G - G†)/(2i), diagonalizes A, and rediagonalizes
B inside each degenerate eigenspace of A. This reuses the Hermitian
solver and yields orthonormal eigenvectors even for degenerate unitary
spectra, where a generic non-symmetric solver would not.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadPError, ConvergenceFailureError, NotHermitianError
from .gates import HERMITICITY_TOL, UnitaryGate, hermiticity_defect

# Eigenvalues of A closer than this are treated as one degenerate cluster.
DEGENERACY_TOL = 1e-8
# Eigenphases within this of -pi are reported as +pi, so lambda = -1 is deterministic.
BRANCH_TOL = 1e-12


@dataclass(frozen=True)
class HermitianSpectrum:
    """Ascending eigenvalues and orthonormal eigenvector columns of a Hermitian matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class UnitarySpectrum:
    """Ascending eigenphases in (-pi, pi] and orthonormal eigenvector columns of a unitary."""

    eigenphases: np.ndarray
    eigenvectors: np.ndarray


def _as_hermitian(h, *, tol: float = HERMITICITY_TOL) -> np.ndarray:
    m = np.asarray(h, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if not np.isfinite(defect) or defect > tol * m.shape[0]:
        raise NotHermitianError(f"||h - h†||_F = {defect:.3e} exceeds {tol:g} * dim")
    return 0.5 * (m + m.conj().T)


def _eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(f"eigendecomposition failed: {exc}") from exc


def hermitian_spectrum(h) -> HermitianSpectrum:
    """Diagonalize a Hermitian matrix; eigenvalues come back sorted ascending."""
    m = _as_hermitian(h)
    values, vectors = _eigh(m)
    values = np.asarray(values, dtype=float)
    values.setflags(write=False)
    vectors.setflags(write=False)
    return HermitianSpectrum(values, vectors)


def op_norm(h) -> float:
    """Operator norm of a Hermitian matrix: max |eigenvalue|."""
    m = _as_hermitian(h)
    values = np.linalg.eigvalsh(m)
    return float(np.max(np.abs(values))) if values.size else 0.0


def schatten_norm(h, p) -> float:
    """Schatten p-norm (sum |E_n|^p)^(1/p) of a Hermitian matrix; p = inf gives op_norm."""
    if p != math.inf and p < 1:
        raise BadPError(f"Schatten order must satisfy p >= 1, got {p!r}")
    m = _as_hermitian(h)
    magnitudes = np.abs(np.linalg.eigvalsh(m))
    if p == math.inf:
        return float(magnitudes.max())
    return float(np.sum(magnitudes ** p) ** (1.0 / p))


def evolve_exp(h, dt: float, hbar: float = 1.0) -> np.ndarray:
    """Propagator exp(-i h dt / hbar) of a constant Hermitian segment.

    Computed on the eigenbasis, V diag(e^{-i E_n dt/hbar}) V†, so the
    result is unitary to machine precision with no stepper error.
    """
    spec = hermitian_spectrum(h)
    phases = np.exp(-1j * spec.eigenvalues * (dt / hbar))
    return (spec.eigenvectors * phases) @ spec.eigenvectors.conj().T


def unitary_spectrum(g) -> UnitarySpectrum:
    """Eigenphases in (-pi, pi] and orthonormal eigenvectors of a unitary matrix.

    Accepts a UnitaryGate or a raw unitary ndarray.
    """
    m = g.matrix if isinstance(g, UnitaryGate) else UnitaryGate(g).matrix
    a = 0.5 * (m + m.conj().T)
    b = (m - m.conj().T) / 2j
    a_vals, vectors = _eigh(a)
    vectors = np.array(vectors)

    # Refine each degenerate cluster of A with the commuting part B.
    tol = DEGENERACY_TOL * max(1.0, float(np.max(np.abs(a_vals))) if a_vals.size else 0.0)
    splits = np.nonzero(np.diff(a_vals) > tol)[0] + 1
    for block in np.split(np.arange(len(a_vals)), splits):
        if block.size < 2:
            continue
        sub = vectors[:, block]
        b_sub = sub.conj().T @ b @ sub
        _, w = _eigh(0.5 * (b_sub + b_sub.conj().T))
        vectors[:, block] = sub @ w

    lam = np.einsum("ij,jk,ki->i", vectors.conj().T, m, vectors)
    phases = np.angle(lam)
    phases[phases <= -math.pi + BRANCH_TOL] = math.pi
    order = np.argsort(phases, kind="stable")
    phases = phases[order]
    vectors = vectors[:, order]
    phases.setflags(write=False)
    vectors.setflags(write=False)
    return UnitarySpectrum(phases, vectors)


def unitary_log(g, tau: float, hbar: float = 1.0, centering: str = "centered") -> np.ndarray:
    """Constant Hamiltonian H = i hbar ln(G) / tau whose evolution over tau yields G.

    centering="principal" takes eigenphases on the branch (-pi, pi] as
    they come; centering="centered" first multiplies G by the global
    phase that makes its shortest covering eigenphase arc symmetric
    about 0, which minimizes the operator norm of H.
    """
    if centering not in ("centered", "principal"):
        raise ValueError(f"centering must be 'centered' or 'principal', got {centering!r}")
    gate = g if isinstance(g, UnitaryGate) else UnitaryGate(g)
    if centering == "centered":
        from .arcs import phase_center

        gate, _ = phase_center(gate)
    spec = unitary_spectrum(gate)
    energies = -hbar * spec.eigenphases / tau
    h = (spec.eigenvectors * energies) @ spec.eigenvectors.conj().T
    return 0.5 * (h + h.conj().T)
