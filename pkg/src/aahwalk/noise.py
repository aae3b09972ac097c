"""Synthetic readout errors and their mitigation.

Each qubit flips independently during readout: a true 0 is reported as 1
with probability p01 and a true 1 as 0 with probability p10.  The
per-qubit confusion matrix A = [[1-p01, p10], [p01, 1-p10]] is
column-stochastic and invertible whenever p01 + p10 < 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import CountsTable, bitstring_to_index, counts_expectation_z, index_to_bitstring
from .errors import NonInvertibleChannelError, ResourceLimitError

MAX_FULL_MITIGATION_SITES = 12


@dataclass(frozen=True)
class ReadoutModel:
    """Per-qubit flip probabilities; scalars broadcast to every qubit."""

    p01: float | tuple[float, ...]
    p10: float | tuple[float, ...]

    def rates(self, L: int) -> tuple[np.ndarray, np.ndarray]:
        p01 = np.broadcast_to(np.asarray(self.p01, dtype=float), (L,)).copy()
        p10 = np.broadcast_to(np.asarray(self.p10, dtype=float), (L,)).copy()
        if np.any(p01 < 0) or np.any(p01 >= 0.5) or np.any(p10 < 0) or np.any(p10 >= 0.5):
            raise ValueError("flip probabilities must lie in [0, 0.5)")
        return p01, p10


def corrupt(counts: CountsTable, model: ReadoutModel, seed: int) -> CountsTable:
    """Flip each recorded bit independently; shot total is preserved."""
    L = counts.L
    p01, p10 = model.rates(L)
    rng = np.random.default_rng(seed)
    # Expand to a shots x L bit array so flips are independent per shot.
    bits = np.empty((counts.shots, L), dtype=np.uint8)
    row = 0
    for key in sorted(counts.counts):
        c = counts.counts[key]
        bits[row:row + c] = [1 if ch == "1" else 0 for ch in key]
        row += c
    flip_prob = np.where(bits == 0, p01[None, :], p10[None, :])
    bits ^= (rng.random(bits.shape) < flip_prob).astype(np.uint8)
    out: dict[str, int] = {}
    for rowbits in bits:
        key = "".join("1" if b else "0" for b in rowbits)
        out[key] = out.get(key, 0) + 1
    return CountsTable(counts.shots, out, L, seed,
                       {"corrupted": True, **counts.metadata})


def mitigate_expectation_z(counts: CountsTable, model: ReadoutModel, site: int) -> float:
    """Invert the single-qubit readout channel on the measured <Z_site>."""
    p01, p10 = model.rates(counts.L)
    scale = 1.0 - p01[site] - p10[site]
    if scale <= 0:
        raise NonInvertibleChannelError(f"p01 + p10 >= 1 at qubit {site}")
    z_meas = counts_expectation_z(counts, site)
    return (z_meas - (p10[site] - p01[site])) / scale


def mitigate_counts_full(counts: CountsTable, model: ReadoutModel) -> dict[str, float]:
    """Tensor-product inversion of the full confusion matrix.

    Returns a quasi-probability table; entries may be slightly negative
    and are deliberately not clipped.
    """
    L = counts.L
    if L > MAX_FULL_MITIGATION_SITES:
        raise ResourceLimitError(f"full mitigation limited to L <= {MAX_FULL_MITIGATION_SITES}")
    p01, p10 = model.rates(L)
    dist = np.zeros(2**L)
    for key, c in counts.counts.items():
        dist[bitstring_to_index(key)] = c / counts.shots
    tensor = dist.reshape([2] * L)
    for site in range(L):
        a = np.array([[1 - p01[site], p10[site]], [p01[site], 1 - p10[site]]])
        ainv = np.linalg.inv(a)
        axis = L - 1 - site  # axis 0 holds the highest site (C-order reshape)
        tensor = np.moveaxis(np.tensordot(ainv, tensor, axes=([1], [axis])), 0, axis)
    flat = tensor.reshape(-1)
    return {index_to_bitstring(i, L): float(v)
            for i, v in enumerate(flat) if v != 0.0}
