"""Random rational curves and coefficient tables for round-trip fuzzing."""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .curve import (
    ATable,
    Curve,
    forward_map_multinomial,
    forward_map_substitution,
    inverse_closed_form,
    inverse_solve,
    lambda_poly,
    triangularity_check,
)
from .scalars import QQi
from .series import TruncatedSeries

__all__ = ["random_rational", "random_curve", "random_atable", "FuzzCase", "check_case", "run_fuzz"]


def random_rational(rng: random.Random, size: int = 5, complex_: bool = True) -> QQi:
    def one():
        return mpq(rng.randint(-size, size), rng.randint(1, size))

    return QQi(one(), one() if complex_ and rng.random() < 0.5 else mpq(0))


def _random_x_series(rng, nx, degree, density, size):
    terms = {}
    for k in range(degree + 1):
        if rng.random() < density:
            terms[(k,) if nx == 1 else (k,) + (0,) * (nx - 1)] = random_rational(rng, size)
    return TruncatedSeries(nx, degree, terms)


def random_curve(rng: random.Random, degree: int, max_J: int = 4, nx: int = 1) -> Curve:
    J = rng.randint(1, max_J)
    b1 = _random_x_series(rng, nx, degree, 0.5, 3)
    b1 = b1 - TruncatedSeries.constant(b1.constant_term(), nx, degree) + TruncatedSeries.constant(1, nx, degree)
    rest = [_random_x_series(rng, nx, degree, 0.4, 3) for _ in range(J - 1)]
    return Curve([b1] + rest)


def random_atable(rng: random.Random, degree: int, nx: int = 1, density: float = 0.25) -> ATable:
    entries = {}
    for m in range(degree + 1):
        for i in range(m + 1):
            if rng.random() < density:
                entries[i, m - i] = _random_x_series(rng, nx, degree - m, 0.5, 9)
    return ATable(entries, nx, degree)


@dataclass(frozen=True)
class FuzzCase:
    roundtrip: bool
    closed_form: bool
    dual_route: bool
    triangular: bool
    lambda_degree: bool

    @property
    def ok(self) -> bool:
        return all((self.roundtrip, self.closed_form, self.dual_route, self.triangular, self.lambda_degree))


def check_case(a: ATable, curve: Curve, degree: int) -> FuzzCase:
    d = forward_map_multinomial(a, curve, degree)
    d_sub = forward_map_substitution(a, curve, degree)
    tri = bool(triangularity_check(d))
    lam_ok = True
    for q in range(degree + 1):
        ks = {k for (p, qq), s in d.items() if qq == q for k in s.terms}
        if any(len(lambda_poly(d, q, k)) - 1 > q for k in ks):
            lam_ok = False
    return FuzzCase(
        roundtrip=inverse_solve(d, curve, degree) == a,
        closed_form=inverse_closed_form(d, curve, degree) == a,
        dual_route=d == d_sub,
        triangular=tri,
        lambda_degree=lam_ok,
    )


def run_fuzz(cases: int, seed: int, degree: int = 10, max_J: int = 4):
    """Yield (index, FuzzCase) for ``cases`` random rational instances."""
    rng = random.Random(seed)
    for n in range(cases):
        curve = random_curve(rng, degree, max_J)
        a = random_atable(rng, degree)
        yield n, check_case(a, curve, degree)
