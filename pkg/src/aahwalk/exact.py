"""Exact propagation by dense eigendecomposition (the oracle for everything).

Basis convention: amplitude index bit i is the state of site/qubit i,
little-endian (site 0 = least significant bit).  |00100> with site 2
occupied therefore lives at index 4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams, bond_coefficient

HERMITICITY_TOL = 1e-9


@dataclass
class StateVector:
    """2^L complex amplitudes over the computational basis."""

    amplitudes: np.ndarray
    L: int

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.L)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def prepare_fock_state(L: int, occupied: list[int]) -> StateVector:
    """Computational basis state with 1-bits exactly at the occupied sites."""
    if len(set(occupied)) != len(occupied):
        raise ValueError(f"duplicate sites in {occupied}")
    for s in occupied:
        if not 0 <= s < L:
            raise IndexError(f"site {s} out of range [0, {L - 1}]")
    amps = np.zeros(2**L, dtype=complex)
    amps[sum(1 << s for s in occupied)] = 1.0
    return StateVector(amps, L)


@dataclass
class SpectralDecomposition:
    """Eigendecomposition H = U diag(E) U^dag with ascending eigenvalues."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def evolve(self, psi: StateVector, t: float) -> StateVector:
        coeffs = self.eigenvectors.conj().T @ psi.amplitudes
        amps = self.eigenvectors @ (np.exp(-1j * self.eigenvalues * t) * coeffs)
        return StateVector(amps, psi.L)


def _check_hermitian(H: np.ndarray) -> None:
    if np.abs(H - H.conj().T).max() > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian")


def spectrum(H: np.ndarray) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix; eigenvalues come back ascending."""
    _check_hermitian(H)
    evals, evecs = np.linalg.eigh(H)
    return SpectralDecomposition(evals, evecs)


def exact_evolve(H: np.ndarray, psi0: StateVector, t: float) -> StateVector:
    """Apply exp(-iHt) to psi0 through the spectral decomposition."""
    if H.shape[0] != psi0.amplitudes.size:
        raise ValueError("dimension mismatch between H and state")
    return spectrum(H).evolve(psi0, t)


def single_particle_hamiltonian(params: ModelParams) -> np.ndarray:
    """L x L hopping matrix of the one-particle sector (V plays no role)."""
    L = params.L
    H1 = np.zeros((L, L))
    for b in range(L - 1):
        jb = bond_coefficient(params, b)
        H1[b, b + 1] = H1[b + 1, b] = jb
    return H1


def spectrum_csv(decomp: SpectralDecomposition) -> str:
    """Spectrum dump: CSV with columns index,eigenvalue."""
    lines = ["index,eigenvalue"]
    lines += [f"{i},{e!r}" for i, e in enumerate(decomp.eigenvalues)]
    return "\n".join(lines) + "\n"
