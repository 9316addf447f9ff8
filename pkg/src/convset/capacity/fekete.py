"""Leja sequences, exchange-refined Fekete surrogates and the n-th diameter."""

from __future__ import annotations

import math

import numpy as np

from ..errors import PreconditionError
from .sets import CompactSet

__all__ = [
    "leja_points",
    "leja_indices",
    "refine_exchange",
    "vandermonde_mean",
    "fekete_points",
    "transfinite_diameter",
]

_TIE = 1e-12


def _logdist(cands: np.ndarray, z: complex) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(cands - z))


def _start_index(cands: np.ndarray) -> int:
    # largest modulus, ties broken by smallest argument in [0, 2pi)
    mod = np.abs(cands)
    near = np.flatnonzero(mod >= mod.max() * (1 - _TIE))
    args = np.mod(np.angle(cands[near]), 2 * np.pi)
    args[args > 2 * np.pi - _TIE] = 0.0
    return int(near[np.argmin(args)])


def leja_indices(cands: np.ndarray, n: int) -> list[int]:
    if n < 1:
        raise PreconditionError("need at least one point")
    if n > len(cands):
        raise PreconditionError(f"n = {n} exceeds the {len(cands)} available samples")
    idx = [_start_index(cands)]
    score = _logdist(cands, cands[idx[0]])
    for _ in range(1, n):
        k = int(np.argmax(score))  # first maximiser: deterministic tie-break
        idx.append(k)
        score = score + _logdist(cands, cands[k])
    return idx


def leja_points(K: CompactSet, n: int) -> np.ndarray:
    """Greedy sequence z_{k+1} = argmax_z prod_{i<=k} |z - z_i| over the samples."""
    if n < 2:
        raise PreconditionError("leja_points needs n >= 2")
    cands = K.candidates
    return cands[leja_indices(cands, n)]


def refine_exchange(cands: np.ndarray, idx, max_sweeps: int = 500) -> list[int]:
    """Single-point exchange: replace z_i by the sample maximising
    prod_{j != i} |z - z_j| until a full sweep makes no strict improvement."""
    idx = list(idx)
    n = len(idx)
    LD = np.empty((len(cands), n))
    for i, k in enumerate(idx):
        LD[:, i] = _logdist(cands, cands[k])
    # finite part of the log-product and the number of coincident factors
    hits = np.isneginf(LD)
    finite = np.where(hits, 0.0, LD)
    total = finite.sum(axis=1)
    zeros = hits.sum(axis=1)
    for _ in range(max_sweeps):
        moved = False
        for i in range(n):
            score = total - finite[:, i]
            score[zeros - hits[:, i] > 0] = -np.inf
            cur = score[idx[i]]
            best = int(np.argmax(score))
            if score[best] > cur + _TIE * max(1.0, abs(cur)):
                idx[i] = best
                total -= finite[:, i]
                zeros -= hits[:, i]
                LD[:, i] = _logdist(cands, cands[best])
                hits[:, i] = np.isneginf(LD[:, i])
                finite[:, i] = np.where(hits[:, i], 0.0, LD[:, i])
                total += finite[:, i]
                zeros += hits[:, i]
                moved = True
        if not moved:
            break
    return idx


def vandermonde_mean(z) -> float:
    """(prod_{i<j} |z_i - z_j|)^(2/(n(n-1))); zero if two points coincide."""
    z = np.asarray(z, dtype=complex)
    n = len(z)
    if n < 2:
        raise PreconditionError("need at least two points")
    iu = np.triu_indices(n, 1)
    d = np.abs(z[:, None] - z[None, :])[iu]
    if np.any(d == 0):
        return 0.0
    return float(math.exp(2.0 * np.log(d).sum() / (n * (n - 1))))


def fekete_points(K: CompactSet, n: int, refine: bool = True) -> np.ndarray:
    cands = K.candidates
    idx = leja_indices(cands, n)
    if refine:
        idx = refine_exchange(cands, idx)
    return cands[idx]


def transfinite_diameter(K: CompactSet, n: int, refine: bool = True) -> float:
    """n-th diameter d_n over a Leja (optionally exchange-refined) configuration."""
    if n < 2:
        raise PreconditionError("transfinite_diameter needs n >= 2")
    if n > len(K.candidates):
        return 0.0  # any n samples repeat a point
    return vandermonde_mean(fekete_points(K, n, refine))
