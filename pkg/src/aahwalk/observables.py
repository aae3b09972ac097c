"""Measured quantities: densities, edge/radial diagnostics, correlations,
participation entropy.

Density is the occupation probability (1 - <Z>)/2, consistent with |1>
marking an occupied site.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import CountsTable, counts_expectation_z, expectation_z
from .exact import StateVector
from .noise import ReadoutModel, mitigate_expectation_z

SOURCE_EXACT = "exact"
SOURCE_TROTTER_EXACT = "trotter-exact"
SOURCE_TROTTER_SAMPLED = "trotter-sampled"
SOURCE_TROTTER_MITIGATED = "trotter-sampled-mitigated"


@dataclass
class DensityProfile:
    time: float
    values: np.ndarray
    source: str

    @property
    def L(self) -> int:
        return self.values.size


@dataclass
class CorrelationMatrix:
    time: float
    values: np.ndarray
    source: str


def _z_vector(state) -> np.ndarray:
    if isinstance(state, StateVector):
        return np.array([expectation_z(state, i) for i in range(state.L)])
    if isinstance(state, CountsTable):
        return np.array([counts_expectation_z(state, i) for i in range(state.L)])
    raise TypeError(f"expected StateVector or CountsTable, got {type(state)!r}")


def density(state, site: int) -> float:
    """Occupation probability of one site from a state or counts table."""
    z = (expectation_z(state, site) if isinstance(state, StateVector)
         else counts_expectation_z(state, site))
    return (1.0 - z) / 2.0


def density_profile(state, time: float, source: str,
                    model: ReadoutModel | None = None) -> DensityProfile:
    """Full site-resolved density; pass a ReadoutModel to apply mitigation."""
    if model is not None:
        if not isinstance(state, CountsTable):
            raise TypeError("mitigated profiles require a CountsTable")
        z = np.array([mitigate_expectation_z(state, model, i)
                      for i in range(state.L)])
    else:
        z = _z_vector(state)
    return DensityProfile(time, (1.0 - z) / 2.0, source)


def edge_probability_P0(profile: DensityProfile) -> float:
    """Density at the first site."""
    return float(profile.values[0])


def radial_distribution(profile: DensityProfile) -> float:
    """Density-weighted mean site index, sum_i i * n_i (0-based i)."""
    return float(np.dot(np.arange(profile.L), profile.values))


def edge_density_nE(profile: DensityProfile) -> float:
    """(n_first + n_last)/2."""
    return float((profile.values[0] + profile.values[-1]) / 2.0)


def correlation(state, time: float = 0.0, source: str = SOURCE_EXACT) -> CorrelationMatrix:
    """C_ij = <Z_i><Z_j>: the literal product of single-site expectations."""
    z = _z_vector(state)
    return CorrelationMatrix(time, np.outer(z, z), source)


def connected_correlation(psi: StateVector, time: float = 0.0,
                          source: str = SOURCE_EXACT) -> CorrelationMatrix:
    """<Z_i Z_j> - <Z_i><Z_j> from exact amplitudes (not the literal form)."""
    probs = np.abs(psi.amplitudes) ** 2
    idx = np.arange(probs.size)
    zbits = 1.0 - 2.0 * np.array([(idx >> i) & 1 for i in range(psi.L)])
    z = zbits @ probs
    zz = (zbits * probs) @ zbits.T
    return CorrelationMatrix(time, zz - np.outer(z, z), source)


def participation_entropy(profile: DensityProfile, k: int = 2, N: int = 1) -> float:
    """Renyi-style spread measure over p_i = n_i / N.

    Returns (1/(1-k)) * ln((1/N) * sum_i p_i^k); natural logarithm.
    """
    if k < 2 or int(k) != k:
        raise ValueError("entropy order k must be an integer >= 2")
    if N < 1:
        raise ValueError("particle count N must be >= 1")
    total = float(np.sum(profile.values))
    if total <= 0:
        raise ValueError("participation entropy undefined for an all-zero profile")
    p = profile.values / N
    return float(math.log(float(np.sum(p**k)) / N) / (1 - k))
