"""Capacity estimates from both routes, and checks of the capacity laws."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import PreconditionError
from .chebyshev import chebyshev_constant
from .fekete import transfinite_diameter
from .sets import CompactSet, make_set, preimage, union

__all__ = ["LADDER", "POLAR_THRESHOLD", "CapacityEstimate", "capacity", "LawReport", "law_check"]

LADDER = (8, 16, 32, 64)
POLAR_THRESHOLD = 0.01


@dataclass(frozen=True)
class CapacityEstimate:
    d_n_sequence: tuple        # ((n, d_n), ...)
    rho_n_sequence: tuple      # ((n, rho_n^(1/n)), ...)
    extrapolated: float        # d-route value
    rho_extrapolated: float
    spread: float
    fineness: float
    descriptor: str = ""

    @property
    def polar_like(self) -> bool:
        return self.extrapolated < POLAR_THRESHOLD

    def csv_rows(self) -> list[tuple]:
        rho = dict(self.rho_n_sequence)
        return [
            (n, d, rho.get(n, 0.0), self.extrapolated, self.spread, self.fineness)
            for n, d in self.d_n_sequence
        ]


def _richardson(seq) -> float:
    """d_inf from d_n ~ d_inf + c/n on the last two rungs, floored at 0."""
    if not seq:
        return 0.0
    if len(seq) == 1:
        return max(seq[0][1], 0.0)
    (n1, v1), (n2, v2) = seq[-2], seq[-1]
    return max((n2 * v2 - n1 * v1) / (n2 - n1), 0.0)


def _rungs(K: CompactSet, ladder) -> list[int]:
    N = len(K.candidates)
    if K.fineness == 0:
        # an exact finite set: rungs past N are meaningful and give zero
        return [n for n in ladder if n >= 2]
    rungs = [n for n in ladder if 2 <= n <= N]
    if not rungs and N >= 2:
        rungs = [N]
    return rungs


def capacity(K, ladder=LADDER, h: float = 1e-3, refine: bool = True) -> CapacityEstimate:
    """Estimate c(K) by the n-th diameter and by Chebyshev constants over a ladder of n.

    A cloud sampling a continuum (fineness > 0) only uses rungs n <= number
    of samples; an exact finite set keeps all rungs, where d_n = 0 once n
    exceeds its size.
    """
    K = make_set(K, h)
    d_seq, r_seq = [], []
    for n in _rungs(K, ladder):
        d_seq.append((n, transfinite_diameter(K, n, refine)))
        r_seq.append((n, chebyshev_constant(K, n)))
    d_inf, r_inf = _richardson(d_seq), _richardson(r_seq)
    top = max(d_inf, r_inf)
    spread = abs(d_inf - r_inf) / top if top > 0 else 0.0
    return CapacityEstimate(tuple(d_seq), tuple(r_seq), d_inf, r_inf, spread, K.fineness, K.descriptor)


@dataclass(frozen=True)
class LawReport:
    law: str
    lhs: float
    rhs: float
    rel_error: float
    holds: bool
    detail: str = ""


def law_check(law: str, *, K=None, lam=None, poly=None, sets=None, tol: float = 0.03,
              ladder=LADDER, h: float = 1e-3) -> LawReport:
    """Compare both sides of a capacity law with the estimator.

    scaling:  c(lam K) = |lam| c(K)
    preimage: c(P^{-1}(K)) = c(K)^(1/deg P) for monic P (descending coefficients)
    union:    a finite union of polar-like sets stays polar-like
    """
    if law == "scaling":
        if K is None or lam is None:
            raise PreconditionError("scaling law needs K and lam")
        K = make_set(K, h)
        lhs = capacity(K.scaled(lam), ladder).extrapolated
        rhs = abs(complex(lam)) * capacity(K, ladder).extrapolated
        detail = f"lam={lam}"
    elif law == "preimage":
        if K is None or poly is None:
            raise PreconditionError("preimage law needs K and a monic polynomial")
        K = make_set(K, h)
        lhs = capacity(preimage(K, poly), ladder).extrapolated
        rhs = capacity(K, ladder).extrapolated ** (1.0 / (len(poly) - 1))
        detail = f"P={list(poly)}"
    elif law == "union":
        if not sets:
            raise PreconditionError("union law needs at least one set")
        parts = [make_set(s, h) for s in sets]
        lhs = capacity(union(parts), ladder).extrapolated
        rhs = max(capacity(s, ladder).extrapolated for s in parts)
        return LawReport(law, lhs, rhs, float("nan"), bool(lhs < POLAR_THRESHOLD),
                         f"threshold={POLAR_THRESHOLD}")
    else:
        raise PreconditionError(f"unknown law {law!r}")
    rel = abs(lhs - rhs) / abs(rhs) if rhs else (0.0 if lhs == 0 else np.inf)
    return LawReport(law, lhs, rhs, float(rel), bool(rel <= tol), detail)
