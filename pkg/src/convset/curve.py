"""Curve families phi_s, the coefficient map a_ij -> d_pq and its inverse.

Conventions.  A series f(y, t, x) is stored with variables ordered
(y, t, x_1..x_n).  The curve is phi(t, x) = sum_j b_j(x) t^j with b_1(0) = 1,
and phi_s(t, x) = s b_1(x) t + sum_{j>=2} b_j(x) t^j.  Substituting gives

    f(phi_s(t, x), t, x) = sum_{p<=q} d_pq(x) s^p t^q .

Truncation is by total degree in (t, x): a_ij(x) keeps x-degree <= D-i-j
and d_pq(x) keeps x-degree <= D-q.  The parameter s has weight zero, which
is consistent because s only ever appears multiplied by t.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import PreconditionError, StructureError, TriangularityError
from .growth import DEFAULT_RULE, GrowthProfile, VerdictRule, growth_profile
from .scalars import RATIONAL, Backend
from .series import TruncatedSeries, multinomial, substitute_y

__all__ = [
    "Curve",
    "ATable",
    "DTable",
    "TriangularityReport",
    "phi_at",
    "forward_map",
    "forward_map_multinomial",
    "forward_map_substitution",
    "triangularity_check",
    "inverse_solve",
    "inverse_closed_form",
    "lambda_poly",
    "probe",
    "probe_series",
    "probe_rows",
]


class Curve:
    """phi(t, x) = sum_{j=1}^J b_j(x) t^j with b_1(0) = 1."""

    def __init__(self, b, degree: int | None = None):
        b = list(b)
        if not b:
            raise PreconditionError("a curve needs at least b_1")
        nx, backend = b[0].nvars, b[0].backend
        for bj in b:
            if bj.nvars != nx or bj.backend != backend:
                raise StructureError("all b_j must share variable count and backend")
        if b[0].constant_term() != backend.one:
            raise PreconditionError("curve must satisfy b_1(0) = 1")
        if degree is not None:
            b = [bj.truncate(degree) for bj in b]
        self.b = tuple(b)
        self.nx = nx
        self.backend = backend

    @classmethod
    def from_coefficients(cls, rows, degree: int, backend: Backend = RATIONAL):
        """Univariate-x curve from dense coefficient lists, rows[j-1] = b_j."""
        b = [
            TruncatedSeries(1, degree, {(k,): c for k, c in enumerate(row)}, backend)
            for row in rows
        ]
        return cls(b)

    @classmethod
    def linear(cls, nx: int = 1, degree: int = 0, backend: Backend = RATIONAL):
        """The linear family phi_s = s t."""
        return cls([TruncatedSeries.constant(1, nx, degree, backend)])

    @property
    def J(self) -> int:
        return len(self.b)

    def coefficient(self, j: int, degree: int) -> TruncatedSeries:
        """b_j(x) with bound ``degree`` (zero beyond the table)."""
        if 1 <= j <= self.J:
            return self.b[j - 1].with_degree(degree)
        return TruncatedSeries.zero(self.nx, degree, self.backend)

    def to_backend(self, backend: Backend) -> "Curve":
        return Curve([bj.to_backend(backend) for bj in self.b])

    def __eq__(self, other):
        return isinstance(other, Curve) and self.b == other.b

    def __repr__(self):
        return f"Curve(J={self.J}, nx={self.nx})"


class _Table:
    """Finite map (index pair) -> series in x with a global degree bound."""

    kind = ""

    def __init__(self, entries: Mapping, nx: int, degree: int, backend: Backend = RATIONAL):
        clean = {}
        for key, s in entries.items():
            key = (int(key[0]), int(key[1]))
            if key[0] < 0 or key[1] < 0:
                raise StructureError(f"negative index {key}")
            if s.nvars != nx or s.backend != backend:
                raise StructureError(f"entry {key} has wrong variable count or backend")
            bound = degree - self._stratum(key)
            if bound < 0:
                continue
            s = s.with_degree(bound)
            if s:
                clean[key] = clean[key] + s if key in clean else s
        self._entries = {k: v for k, v in clean.items() if v}
        self.nx = nx
        self.degree = degree
        self.backend = backend

    @staticmethod
    def _stratum(key) -> int:
        raise NotImplementedError

    def __getitem__(self, key) -> TruncatedSeries:
        key = tuple(key)
        if key in self._entries:
            return self._entries[key]
        return TruncatedSeries.zero(self.nx, max(self.degree - self._stratum(key), 0), self.backend)

    def items(self) -> Iterator:
        return iter(sorted(self._entries.items()))

    def keys(self):
        return sorted(self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and self.nx == other.nx
            and self.backend == other.backend
            and self._entries == other._entries
        )

    def __add__(self, other):
        if type(other) is not type(self) or other.nx != self.nx:
            raise StructureError("table shape mismatch")
        degree = min(self.degree, other.degree)
        entries = dict(self._entries)
        for k, v in other._entries.items():
            entries[k] = entries[k] + v if k in entries else v
        return type(self)(entries, self.nx, degree, self.backend)

    def __repr__(self):
        return f"{type(self).__name__}({len(self)} entries, nx={self.nx}, D={self.degree})"


class ATable(_Table):
    """a_ij(x) with f(y, t, x) = sum a_ij(x) y^i t^j."""

    kind = "atable"

    @staticmethod
    def _stratum(key) -> int:
        return key[0] + key[1]

    def to_series(self) -> TruncatedSeries:
        """f as a series in (y, t, x)."""
        terms = {}
        for (i, j), s in self._entries.items():
            for e, c in s.terms.items():
                terms[(i, j) + e] = c
        return TruncatedSeries(2 + self.nx, self.degree, terms, self.backend)

    @classmethod
    def from_series(cls, f: TruncatedSeries) -> "ATable":
        nx = f.nvars - 2
        if nx < 1:
            raise StructureError("series in (y, t, x) needs at least one x variable")
        buckets: dict = {}
        for e, c in f.terms.items():
            buckets.setdefault((e[0], e[1]), {})[e[2:]] = c
        entries = {
            k: TruncatedSeries(nx, f.degree - k[0] - k[1], v, f.backend)
            for k, v in buckets.items()
        }
        return cls(entries, nx, f.degree, f.backend)

    def to_backend(self, backend: Backend) -> "ATable":
        return ATable({k: v.to_backend(backend) for k, v in self._entries.items()}, self.nx, self.degree, backend)


class DTable(_Table):
    """d_pq(x) with g(s; t, x) = sum d_pq(x) s^p t^q."""

    kind = "dtable"

    @staticmethod
    def _stratum(key) -> int:
        return key[1]

    def to_series(self) -> TruncatedSeries:
        """g as a series in (s, t, x); bound 2D since s carries weight one here."""
        terms = {}
        for (p, q), s in self._entries.items():
            for e, c in s.terms.items():
                terms[(p, q) + e] = c
        return TruncatedSeries(2 + self.nx, 2 * self.degree, terms, self.backend)


@dataclass(frozen=True)
class TriangularityReport:
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def phi_at(curve: Curve, s, degree: int) -> TruncatedSeries:
    """phi_s(t, x) as a series in (t, x) with total-degree bound ``degree``."""
    backend = curve.backend
    s = backend.coerce(s)
    terms = {}
    for j in range(1, min(curve.J, degree) + 1):
        scale = s if j == 1 else None
        for e, c in curve.b[j - 1].terms.items():
            if j + sum(e) <= degree:
                terms[(j,) + e] = c * scale if scale is not None else c
    return TruncatedSeries(1 + curve.nx, degree, terms, backend)


def _formal_phi(curve: Curve, degree: int) -> TruncatedSeries:
    """phi_s with w = s*t adjoined: w b_1(x) + sum_{j>=2} b_j(x) t^j in (w, t, x)."""
    terms = {}
    for e, c in curve.b[0].terms.items():
        if 1 + sum(e) <= degree:
            terms[(1, 0) + e] = c
    for j in range(2, min(curve.J, degree) + 1):
        for e, c in curve.b[j - 1].terms.items():
            if j + sum(e) <= degree:
                terms[(0, j) + e] = c
    return TruncatedSeries(2 + curve.nx, degree, terms, curve.backend)


def _check_compatible(a, curve):
    if a.nx != curve.nx or a.backend != curve.backend:
        raise StructureError("table and curve disagree on x variables or backend")


def forward_map_substitution(a: ATable, curve: Curve, degree: int) -> DTable:
    """d_pq by direct substitution y := phi_s with s adjoined as a formal variable.

    s is carried through w = s t so that total degree in (w, t, x) equals the
    (t, x)-degree; d_pq is the coefficient of w^p t^(q-p).
    """
    _check_compatible(a, curve)
    degree = min(degree, a.degree)
    nx = curve.nx
    f = a.to_series().truncate(degree)
    # (y, t, x) -> (y, w, t, x)
    f4 = f.embed(3 + nx, [0, 2] + list(range(3, 3 + nx)))
    g = substitute_y(f4, _formal_phi(curve, degree))
    buckets: dict = {}
    for e, c in g.terms.items():
        p, tq = e[0], e[1]
        buckets.setdefault((p, p + tq), {})[e[2:]] = c
    entries = {
        k: TruncatedSeries(nx, degree - k[1], v, curve.backend) for k, v in buckets.items()
    }
    return DTable(entries, nx, degree, curve.backend)


class _Multinomial:
    """Contributions of single a_ij(x) y^i t^j to the d_pq table.

    y^i = (s b_1 t + b_2 t^2 + ...)^i expands over m_1 + m_2 + ... = i into
    multinomial(m) s^{m_1} t^{sum k m_k} prod b_k^{m_k}.
    """

    def __init__(self, curve: Curve, degree: int):
        self.curve = curve
        self.degree = degree
        self.J = min(curve.J, degree) if degree > 0 else 1
        self._powers: dict = {}

    def power(self, k: int, m: int) -> TruncatedSeries:
        key = (k, m)
        if key not in self._powers:
            b = self.curve.coefficient(k, self.degree)
            if m == 0:
                val = TruncatedSeries.constant(1, self.curve.nx, self.degree, self.curve.backend)
            else:
                val = self.power(k, m - 1) * b
            self._powers[key] = val
        return self._powers[key]

    def compositions(self, i: int, budget: int):
        """(m_1..m_J) summing to i with sum k m_k <= budget."""
        J = self.J

        def rec(k, left, used, acc):
            if k > J:
                if left == 0:
                    yield tuple(acc)
                return
            if k == J:
                if used + k * left <= budget:
                    yield tuple(acc) + (left,)
                return
            for m in range(left, -1, -1):
                if used + k * m > budget:
                    continue
                # remaining parts need at least (k+1) per unit
                if used + k * m + (k + 1) * (left - m) > budget:
                    continue
                yield from rec(k + 1, left - m, used + k * m, acc + [m])

        yield from rec(1, i, 0, [])

    def contributions(self, i: int, j: int, a_ij: TruncatedSeries):
        """Yield (p, q, series) for a_ij(x) y^i t^j."""
        D = self.degree
        if i + j > D or not a_ij:
            return
        for ms in self.compositions(i, D - j):
            q = j + sum(k * m for k, m in enumerate(ms, start=1))
            xdeg = D - q
            prod = a_ij.truncate(xdeg)
            for k, m in enumerate(ms, start=1):
                if m:
                    prod = prod * self.power(k, m).truncate(xdeg)
                    if not prod:
                        break
            if prod:
                yield ms[0], q, prod.scale(multinomial(ms))


def forward_map_multinomial(a: ATable, curve: Curve, degree: int) -> DTable:
    """d_pq(x) = sum' a_ij(x) i!/(p! m_2! ...) b_1^p b_2^{m_2} ...

    The sum runs over j + p + 2 m_2 + 3 m_3 + ... = q and p + m_2 + ... = i.
    """
    _check_compatible(a, curve)
    degree = min(degree, a.degree)
    expander = _Multinomial(curve, degree)
    acc: dict = {}
    for (i, j), a_ij in a.items():
        for p, q, s in expander.contributions(i, j, a_ij):
            acc[p, q] = acc[p, q] + s if (p, q) in acc else s
    return DTable(acc, curve.nx, degree, curve.backend)


def forward_map(a: ATable, curve: Curve, degree: int) -> DTable:
    return forward_map_multinomial(a, curve, degree)


def triangularity_check(d: DTable) -> TriangularityReport:
    for p, q in d.keys():
        if p > q:
            return TriangularityReport(False, (p, q))
    return TriangularityReport(True)


def inverse_solve(d: DTable, curve: Curve, degree: int) -> ATable:
    """The unique a with forward_map(a) = d up to degree D.

    Strata q = i + j are solved in increasing order.  Inside stratum q,
    a_{p,q-p} b_1^p is the only unknown contribution to d_pq; everything
    else comes from strata already solved and is accumulated in ``known``.
    """
    report = triangularity_check(d)
    if not report:
        raise TriangularityError(report.witness)
    _check_compatible(d, curve)
    degree = min(degree, d.degree)
    expander = _Multinomial(curve, degree)
    b1_inv = curve.coefficient(1, degree).inverse()
    inv_powers = [TruncatedSeries.constant(1, curve.nx, degree, curve.backend)]
    known: dict = {}
    solved: dict = {}
    for q in range(degree + 1):
        xdeg = degree - q
        for p in range(q, -1, -1):
            rhs = d[p, q].truncate(xdeg)
            if (p, q) in known:
                rhs = rhs - known.pop((p, q)).truncate(xdeg)
            if not rhs:
                continue
            while len(inv_powers) <= p:
                inv_powers.append(inv_powers[-1] * b1_inv)
            a_pq = rhs * inv_powers[p].truncate(xdeg)
            if not a_pq:
                continue
            i, j = p, q - p
            solved[i, j] = a_pq
            for pp, qq, s in expander.contributions(i, j, a_pq):
                if qq == q:
                    continue
                known[pp, qq] = known[pp, qq] + s if (pp, qq) in known else s
    return ATable(solved, curve.nx, degree, curve.backend)


def inverse_closed_form(d: DTable, curve: Curve, degree: int) -> ATable:
    """Independent inverse: s = (y - h)/(b_1 t) with h = sum_{j>=2} b_j t^j, so

        f(y, t, x) = sum_{p<=q} d_pq(x) b_1(x)^{-p} (y - h)^p t^{q-p}.
    """
    report = triangularity_check(d)
    if not report:
        raise TriangularityError(report.witness)
    _check_compatible(d, curve)
    degree = min(degree, d.degree)
    nx, backend = curve.nx, curve.backend
    nv = 2 + nx
    xpos = list(range(2, nv))
    terms = {(1, 0) + (0,) * nx: 1}
    for j in range(2, min(curve.J, degree) + 1):
        for e, c in curve.b[j - 1].terms.items():
            terms[(0, j) + e] = terms.get((0, j) + e, 0) - c
    y_minus_h = TruncatedSeries(nv, degree, terms, backend)
    b1_inv = curve.coefficient(1, degree).inverse().embed(nv, xpos)
    step = y_minus_h * b1_inv
    powers = [TruncatedSeries.constant(1, nv, degree, backend)]
    f = TruncatedSeries.zero(nv, degree, backend)
    for (p, q), dpq in d.items():
        while len(powers) <= p:
            powers.append(powers[-1] * step)
        lifted = dpq.embed(nv, xpos).with_degree(degree).shift((0, q - p) + (0,) * nx)
        f = f + lifted * powers[p]
    return ATable.from_series(f)


def lambda_poly(d: DTable, q: int, k) -> list:
    """Coefficients [d_0qk, d_1qk, ...] of lambda_qk(s), trailing zeros removed."""
    k = tuple(k)
    top = max((p for p, qq in d.keys() if qq == q), default=-1)
    coeffs = [d[p, q][k] for p in range(top + 1)]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def probe_series(a: ATable, curve: Curve, s, degree: int) -> TruncatedSeries:
    """f(phi_s(t, x), t, x) = sum_{q,k} lambda_qk(s) t^q x^k at a numeric s."""
    _check_compatible(a, curve)
    degree = min(degree, a.degree)
    return substitute_y(a.to_series().truncate(degree), phi_at(curve, s, degree))


def probe(
    a: ATable,
    curve: Curve,
    s,
    degree: int,
    rule: VerdictRule = DEFAULT_RULE,
    backend: Backend | None = None,
) -> GrowthProfile:
    """Growth profile of f along phi_s, including the exhaustion index n.

    The index is the least n with |lambda_qk(s)| <= n^(q+k) for all
    1 <= q + k <= D.  With the rational backend and an exactly representable
    s the whole evaluation is exact; ``backend`` switches to floats.
    """
    if backend is not None and backend != a.backend:
        a = a.to_backend(backend)
        curve = curve.to_backend(backend)
    return growth_profile(probe_series(a, curve, s, degree), rule)


def probe_rows(profile: GrowthProfile, s) -> list[tuple]:
    """CSV rows (s_re, s_im, m, rho_m, verdict, E_n_index) for one probe."""
    s = complex(s)
    return [
        (s.real, s.imag, m, r, profile.verdict, profile.en_index) for m, r in profile.rho
    ]
