"""Explicit divergent series with prescribed phi-convergence sets, and s-grid scans."""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .curve import ATable, Curve, DTable, inverse_solve, phi_at, probe
from .errors import PreconditionError
from .growth import DEFAULT_RULE, GrowthProfile, VerdictRule
from .scalars import RATIONAL, QQi
from .series import TruncatedSeries

__all__ = [
    "SGrid",
    "example_curve_member",
    "gen_example_f",
    "gen_example_g",
    "finite_set_dtable",
    "construct_for_finite_set",
    "ScanRow",
    "scan",
]


def example_curve_member(curve: Curve, s_j, degree: int, anchor: str = "family") -> TruncatedSeries:
    """The curve phi_j paired with parameter s_j in the f and g generators.

    anchor="family" uses phi_j = phi_{s_j}, the member of the probed family,
    so that phi_s - phi_j = (s - s_j) b_1(x) t.  anchor="shifted" uses the
    literal phi_j = s_j t + phi(t, x), which coincides with phi_{s_j + 1}
    when b_1 = 1.
    """
    if anchor == "family":
        return phi_at(curve, s_j, degree)
    if anchor == "shifted":
        phi = phi_at(curve, 1, degree)
        return phi + TruncatedSeries.monomial((1,) + (0,) * curve.nx, 1 + curve.nx, degree, s_j, curve.backend)
    raise PreconditionError(f"unknown anchor {anchor!r}")


def _cyclic(sequence, N):
    if not sequence:
        raise PreconditionError("empty parameter sequence")
    return [sequence[(n - 1) % len(sequence)] for n in range(1, N + 1)]


def _y_minus(curve, member, degree):
    nv = 2 + curve.nx
    y = TruncatedSeries.variable(0, nv, degree, curve.backend)
    return y - member.embed(nv, list(range(1, nv)))


def gen_example_f(sequence, N: int, curve: Curve, degree: int, anchor: str = "family") -> ATable:
    """f = sum_{n=1}^N n^n prod_{j=1}^n (y - phi_j(t, x)), truncated at D.

    The sequence is extended cyclically when shorter than N.
    """
    if N < 1:
        raise PreconditionError("N must be at least 1")
    params = _cyclic(list(sequence), N)
    nv = 2 + curve.nx
    product = TruncatedSeries.constant(1, nv, degree, curve.backend)
    f = TruncatedSeries.zero(nv, degree, curve.backend)
    for n, s_j in enumerate(params, start=1):
        product = product * _y_minus(curve, example_curve_member(curve, s_j, degree, anchor), degree)
        if not product:
            break
        f = f + product.scale(n**n)
    return ATable.from_series(f)


def gen_example_g(sequence, N: int, curve: Curve, degree: int, anchor: str = "family") -> ATable:
    """g = sum_{i=1}^N [ i! t^i + (i!)^2 (y - phi_i(t, x))^i ], truncated at D.

    The summand's curve is paired with the summation index (phi_i).
    """
    if N < 1:
        raise PreconditionError("N must be at least 1")
    params = _cyclic(list(sequence), N)
    nv = 2 + curve.nx
    g = TruncatedSeries.zero(nv, degree, curve.backend)
    t_exp = (0, 1) + (0,) * curve.nx
    for i, s_i in enumerate(params, start=1):
        if i > degree:
            break
        fact = math.factorial(i)
        g = g + TruncatedSeries.monomial(tuple(i * e for e in t_exp), nv, degree, fact, curve.backend)
        diff = _y_minus(curve, example_curve_member(curve, s_i, degree, anchor), degree)
        g = g + diff.pow_trunc(i).scale(fact * fact)
    return ATable.from_series(g)


def _poly_from_roots(roots, backend):
    coeffs = [backend.one]  # ascending powers of s
    for r in roots:
        shifted = [backend.zero] + coeffs
        for k, c in enumerate(coeffs):
            shifted[k] = shifted[k] - r * c
        coeffs = shifted
    return coeffs


def _poly_mul(a, b, zero):
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return out


def finite_set_dtable(targets, nx: int, degree: int, backend=None) -> DTable:
    """d_pq of psi_s(t) = sum_j j^j P(s)^j t^(j m) with P(s) = prod (s - s_i).

    P_j = j^j P^j has degree j m = q_j, so each term sits in its own stratum.
    """
    backend = backend or RATIONAL
    roots = [backend.coerce(s) for s in targets]
    m = len(roots)
    if m < 1:
        raise PreconditionError("target set must be nonempty")
    for i in range(m):
        for k in range(i):
            if roots[i] == roots[k]:
                raise PreconditionError(f"duplicate target {targets[i]!r}")
    P = _poly_from_roots(roots, backend)
    entries = {}
    Pj = [backend.one]
    for j in range(1, degree // m + 1):
        Pj = _poly_mul(Pj, P, backend.zero)
        q = j * m
        for p, c in enumerate(Pj):
            if c:
                entries[p, q] = TruncatedSeries.constant(c * j**j, nx, degree - q, backend)
    return DTable(entries, nx, degree, backend)


def construct_for_finite_set(targets, curve: Curve, degree: int) -> ATable:
    """Divergent f with f(phi_s(t, x), t, x) = psi_s(t), converging exactly on the targets."""
    m = len(targets)
    if m < 1:
        raise PreconditionError("target set must be nonempty")
    if degree < 2 * m:
        raise PreconditionError(f"need D >= 2m = {2 * m}, got {degree}")
    d = finite_set_dtable(targets, curve.nx, degree, curve.backend)
    return inverse_solve(d, curve, degree)


@dataclass(frozen=True)
class SGrid:
    """Square n x n lattice of s values on [cx-r, cx+r] x [cy-r, cy+r], plus extras.

    Coordinates are exact fractions so grid points such as 0 or 1 are hit
    exactly.  Samples are ordered by imaginary then real part, with extra
    points appended; duplicates are dropped.
    """

    cx: Fraction = Fraction(0)
    cy: Fraction = Fraction(0)
    radius: Fraction = Fraction(1)
    resolution: int = 1
    extra: tuple = ()

    @classmethod
    def parse(cls, text: str, extra=()) -> "SGrid":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise PreconditionError("grid spec must be cx,cy,r,n")
        cx, cy, r = (Fraction(p) for p in parts[:3])
        return cls(cx, cy, r, int(parts[3]), tuple(extra))

    def samples(self) -> list[QQi]:
        n = self.resolution
        if n < 1:
            raise PreconditionError("grid resolution must be at least 1")
        r = Fraction(self.radius)
        offsets = [Fraction(0)] if n == 1 else [-r + 2 * r * k / (n - 1) for k in range(n)]
        pts = [QQi(self.cx + ox, self.cy + oy) for oy in offsets for ox in offsets]
        pts += [QQi.coerce(z) for z in self.extra]
        out, seen = [], set()
        for z in pts:
            if z not in seen:
                seen.add(z)
                out.append(z)
        return out


@dataclass(frozen=True)
class ScanRow:
    s: QQi
    profile: GrowthProfile

    def csv_row(self) -> tuple:
        z = complex(self.s)
        return (z.real, z.imag, self.profile.verdict, self.profile.rho_last, self.profile.en_index, self.profile.degree)


def _probe_task(args):
    a, curve, s, degree, rule = args
    return probe(a, curve, s, degree, rule)


def scan(
    a: ATable,
    curve: Curve,
    samples,
    degree: int,
    rule: VerdictRule = DEFAULT_RULE,
    workers: int = 1,
) -> tuple[list[ScanRow], Counter]:
    """Probe every sample; rows come back in sample order regardless of workers."""
    samples = list(samples.samples() if isinstance(samples, SGrid) else samples)
    if not samples:
        raise PreconditionError("empty s-grid")
    tasks = [(a, curve, s, degree, rule) for s in samples]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            profiles = list(pool.map(_probe_task, tasks))
    else:
        profiles = [_probe_task(t) for t in tasks]
    rows = [ScanRow(QQi.coerce(s), p) for s, p in zip(samples, profiles)]
    return rows, Counter(r.profile.verdict for r in rows)
