"""Sparse multivariate formal power series truncated at a total degree.

A :class:`TruncatedSeries` is an immutable map from exponent tuples to
nonzero coefficients.  Every operation drops terms whose total degree
exceeds the degree bound, so results are exact "up to degree D".
"""

from __future__ import annotations

from collections import defaultdict
from operator import add as _add
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, StructureError
from .scalars import RATIONAL, Backend

__all__ = ["TruncatedSeries", "substitute_y", "degree_of", "multinomial"]

Exponent = tuple


def degree_of(exp: Sequence[int]) -> int:
    return sum(exp)


def multinomial(parts: Sequence[int]) -> int:
    """n! / (k_1! k_2! ...) for n = sum(parts)."""
    result, n = 1, 0
    for k in parts:
        for i in range(1, k + 1):
            n += 1
            result = result * n // i
    return result


class TruncatedSeries:
    """Element of K[[z_1..z_n]] / (terms of total degree > D)."""

    __slots__ = ("nvars", "degree", "backend", "_terms")

    def __init__(
        self,
        nvars: int,
        degree: int,
        terms: Mapping[Sequence[int], object] | Iterable | None = None,
        backend: Backend = RATIONAL,
    ):
        if nvars < 1:
            raise StructureError("a series needs at least one variable")
        if degree < 0:
            raise StructureError("degree bound must be non-negative")
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise StructureError(f"exponent {exp} does not have {nvars} entries")
            if any(e < 0 for e in exp):
                raise StructureError(f"negative exponent in {exp}")
            if sum(exp) > degree:
                continue
            c = backend.coerce(coeff)
            if exp in clean:
                c = clean[exp] + c
            clean[exp] = c
        self.nvars = nvars
        self.degree = degree
        self.backend = backend
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, nvars, degree, backend, terms) -> "TruncatedSeries":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.degree = degree
        obj.backend = backend
        obj._terms = terms
        return obj

    # ----- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars, degree, backend=RATIONAL):
        return cls._raw(nvars, degree, backend, {})

    @classmethod
    def constant(cls, value, nvars, degree, backend=RATIONAL):
        return cls(nvars, degree, {(0,) * nvars: value}, backend)

    @classmethod
    def monomial(cls, exp, nvars, degree, coeff=1, backend=RATIONAL):
        return cls(nvars, degree, {tuple(exp): coeff}, backend)

    @classmethod
    def variable(cls, index, nvars, degree, backend=RATIONAL):
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, degree, {tuple(exp): 1}, backend)

    # ----- inspection ---------------------------------------------------
    @property
    def terms(self) -> Mapping[tuple, object]:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, exp):
        return self._terms.get(tuple(exp), self.backend.zero)

    def coefficient(self, exp):
        return self[exp]

    def constant_term(self):
        return self[(0,) * self.nvars]

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def by_degree(self) -> dict[int, list]:
        groups = defaultdict(list)
        for e, c in self._terms.items():
            groups[sum(e)].append((e, c))
        return groups

    def max_term_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.backend == other.backend
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms)))

    def __repr__(self):
        if not self._terms:
            return f"TruncatedSeries(0, nvars={self.nvars}, D={self.degree})"
        shown = " + ".join(f"{c}*{e}" for e, c in self.sorted_terms()[:6])
        more = " + ..." if len(self._terms) > 6 else ""
        return f"TruncatedSeries({shown}{more}, D={self.degree})"

    # ----- structure helpers -------------------------------------------
    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise StructureError(f"expected a series, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise StructureError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )
        if other.backend != self.backend:
            raise StructureError(
                f"backend mismatch: {self.backend.label()} vs {other.backend.label()}"
            )

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        return TruncatedSeries.constant(other, self.nvars, self.degree, self.backend)

    def truncate(self, degree: int) -> "TruncatedSeries":
        """Drop terms above ``degree``; the bound never grows."""
        degree = min(degree, self.degree)
        if degree < 0:
            return TruncatedSeries.zero(self.nvars, 0, self.backend)
        terms = {e: c for e, c in self._terms.items() if sum(e) <= degree}
        return TruncatedSeries._raw(self.nvars, degree, self.backend, terms)

    def with_degree(self, degree: int) -> "TruncatedSeries":
        """Re-label the degree bound, truncating if it shrinks."""
        if degree <= self.degree:
            return self.truncate(degree)
        return TruncatedSeries._raw(self.nvars, degree, self.backend, dict(self._terms))

    def to_backend(self, backend: Backend) -> "TruncatedSeries":
        if backend == self.backend:
            return self
        return TruncatedSeries(
            self.nvars, self.degree, {e: backend.coerce(c) for e, c in self._terms.items()}, backend
        )

    def embed(self, nvars: int, positions: Sequence[int]) -> "TruncatedSeries":
        """Map variable k to variable positions[k] of an ``nvars``-variable ring."""
        if len(positions) != self.nvars:
            raise StructureError("one target position per variable required")
        terms = {}
        for e, c in self._terms.items():
            new = [0] * nvars
            for k, pos in enumerate(positions):
                new[pos] = e[k]
            terms[tuple(new)] = c
        return TruncatedSeries._raw(nvars, self.degree, self.backend, terms)

    def shift(self, exp: Sequence[int]) -> "TruncatedSeries":
        """Multiply by the monomial z^exp (truncating)."""
        d = sum(exp)
        terms = {
            tuple(map(_add, e, exp)): c
            for e, c in self._terms.items()
            if sum(e) + d <= self.degree
        }
        return TruncatedSeries._raw(self.nvars, self.degree, self.backend, terms)

    def map_coefficients(self, fn) -> "TruncatedSeries":
        return TruncatedSeries(
            self.nvars, self.degree, {e: fn(c) for e, c in self._terms.items()}, self.backend
        )

    # ----- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        degree = min(self.degree, other.degree)
        terms = {e: c for e, c in self._terms.items() if sum(e) <= degree}
        for e, c in other._terms.items():
            if sum(e) > degree:
                continue
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return TruncatedSeries._raw(self.nvars, degree, self.backend, terms)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(
            self.nvars, self.degree, self.backend, {e: -c for e, c in self._terms.items()}
        )

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, factor) -> "TruncatedSeries":
        factor = self.backend.coerce(factor)
        if not factor:
            return TruncatedSeries.zero(self.nvars, self.degree, self.backend)
        return TruncatedSeries._raw(
            self.nvars, self.degree, self.backend, {e: c * factor for e, c in self._terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        degree = min(self.degree, other.degree)
        a_groups = self.by_degree()
        b_groups = other.by_degree()
        acc: dict = {}
        get = acc.get
        for da, a_terms in a_groups.items():
            for db, b_terms in b_groups.items():
                if da + db > degree:
                    continue
                for ea, ca in a_terms:
                    for eb, cb in b_terms:
                        e = tuple(map(_add, ea, eb))
                        prev = get(e)
                        acc[e] = ca * cb if prev is None else prev + ca * cb
        terms = {e: c for e, c in acc.items() if c}
        return TruncatedSeries._raw(self.nvars, degree, self.backend, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        return self.pow_trunc(e)

    def pow_trunc(self, e: int) -> "TruncatedSeries":
        """Truncated power; f**0 is the constant 1."""
        if e < 0:
            raise PreconditionError("negative exponent; use inverse() first")
        result = TruncatedSeries.constant(1, self.nvars, self.degree, self.backend)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse by Newton iteration g <- g(2 - f g).

        Requires a nonzero constant term; each step doubles the number of
        correct degrees.
        """
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        one = self.backend.one
        g = TruncatedSeries.constant(one / c0, self.nvars, 0, self.backend)
        prec = 0
        while prec < self.degree:
            prec = min(2 * prec + 1, self.degree)
            g = g.with_degree(prec)
            fg = self.truncate(prec) * g
            g = g * (2 - fg)
        return g.with_degree(self.degree)

    def substitute(self, var: int, value) -> "TruncatedSeries":
        """Set variable ``var`` to a scalar, keeping the variable slot (exponent 0)."""
        value = self.backend.coerce(value)
        acc: dict = {}
        for e, c in self._terms.items():
            k = e[var]
            new = e[:var] + (0,) + e[var + 1 :]
            term = c * value**k if k else c
            acc[new] = acc[new] + term if new in acc else term
        terms = {e: c for e, c in acc.items() if c}
        return TruncatedSeries._raw(self.nvars, self.degree, self.backend, terms)


def substitute_y(f: TruncatedSeries, u: TruncatedSeries) -> TruncatedSeries:
    """Formal substitution y := u in f(y, z), returning a series in z.

    Variable 0 of ``f`` is y; its remaining variables must match those of
    ``u``.  ``u`` must have zero constant term so that each output degree
    depends on finitely many terms of ``f``.  Evaluated by Horner's rule in y.
    """
    if f.nvars != u.nvars + 1:
        raise StructureError(
            f"f has {f.nvars} variables, expected {u.nvars + 1} (y plus u's variables)"
        )
    if f.backend != u.backend:
        raise StructureError("backend mismatch in substitution")
    if u.constant_term():
        raise PreconditionError("substituted series must have zero constant term")
    degree = min(f.degree, u.degree)
    slices: dict[int, dict] = defaultdict(dict)
    for e, c in f.terms.items():
        if sum(e) <= degree:
            slices[e[0]][e[1:]] = c
    u = u.truncate(degree)
    result = TruncatedSeries.zero(u.nvars, degree, f.backend)
    for i in range(max(slices, default=-1), -1, -1):
        if result:
            result = result * u
        if i in slices:
            result = result + TruncatedSeries._raw(u.nvars, degree, f.backend, slices[i])
    return result
