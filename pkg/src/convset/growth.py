"""Coefficient-growth diagnostics: per-degree root-test profile and verdict."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import PreconditionError
from .scalars import QQi, log_abs
from .series import TruncatedSeries

__all__ = [
    "CONVERGENT",
    "DIVERGENT",
    "INCONCLUSIVE",
    "VerdictRule",
    "GrowthProfile",
    "growth_profile",
]

CONVERGENT = "CONVERGENT-LIKE"
DIVERGENT = "DIVERGENT-LIKE"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class VerdictRule:
    """Thresholds for reading a finite profile rho_1..rho_D.

    The fit uses log rho_m against log m over the top half of degrees,
    skipping degrees with no terms.
    """

    divergent_slope: float = 0.2
    divergent_floor: float = 1.0
    convergent_slope: float = 0.05
    convergent_ceiling: float = 1e3

    def decide(self, slope: float, rho_last: float, rho_peak: float) -> str:
        if slope > self.divergent_slope and rho_last > self.divergent_floor:
            return DIVERGENT
        if slope <= self.convergent_slope and rho_peak <= self.convergent_ceiling:
            return CONVERGENT
        return INCONCLUSIVE


DEFAULT_RULE = VerdictRule()


@dataclass(frozen=True)
class GrowthProfile:
    rho: tuple  # ((m, rho_m), ...) for m = 1..D
    verdict: str
    degree: int
    slope: float
    rho_last: float
    en_index: int = 1
    log_max: tuple = field(default=(), repr=False)

    def rho_at(self, m: int) -> float:
        return self.rho[m - 1][1]


def _fit_slope(points) -> float:
    if len(points) < 2:
        return 0.0
    xs = [math.log(m) for m, _ in points]
    ys = [math.log(r) for _, r in points]
    return statistics.linear_regression(xs, ys).slope


def _exceeds(c, n: int, m: int) -> bool:
    """|c| > n**m, exactly for rational coefficients."""
    if isinstance(c, QQi):
        return c.abs2() > mpq(n) ** (2 * m)
    return log_abs(c) > m * math.log(n) * (1 + 1e-15)


def _en_index(series: TruncatedSeries, logmax: list[float]) -> int:
    # smallest n >= 1 with |a_alpha| <= n^|alpha| for all 1 <= |alpha| <= D
    top = max(
        (lm / m for m, lm in enumerate(logmax, start=1) if lm > -math.inf), default=-math.inf
    )
    n = max(1, math.ceil(math.exp(top)) if top > -math.inf else 1)

    def ok(k):
        return not any(
            _exceeds(c, k, sum(e)) for e, c in series.terms.items() if sum(e) >= 1
        )

    while not ok(n):
        n += 1
    while n > 1 and ok(n - 1):
        n -= 1
    return n


def growth_profile(f: TruncatedSeries, rule: VerdictRule = DEFAULT_RULE) -> GrowthProfile:
    """rho_m = max_{|alpha|=m} |a_alpha|^(1/m) for m = 1..D, plus a verdict.

    Exact coefficients are measured through their logarithms, so profiles
    stay finite even when coefficients exceed the float range.
    """
    D = f.degree
    if D < 4:
        raise PreconditionError("growth profile needs degree bound D >= 4")
    logmax = [-math.inf] * D
    for e, c in f.terms.items():
        m = sum(e)
        if m >= 1:
            lc = log_abs(c)
            if lc > logmax[m - 1]:
                logmax[m - 1] = lc
    rho = tuple(
        (m, math.exp(lm / m) if lm > -math.inf else 0.0)
        for m, lm in enumerate(logmax, start=1)
    )
    top = [(m, r) for m, r in rho if m >= math.ceil(D / 2)]
    populated = [(m, r) for m, r in top if r > 0]
    slope = _fit_slope(populated)
    rho_last = populated[-1][1] if populated else 0.0
    rho_peak = max((r for _, r in top), default=0.0)
    return GrowthProfile(
        rho=rho,
        verdict=rule.decide(slope, rho_last, rho_peak),
        degree=D,
        slope=slope,
        rho_last=rho_last,
        en_index=_en_index(f, logmax),
        log_max=tuple(logmax),
    )
