"""Discretized planar compacts and the set-descriptor mini-language.

Descriptors::

    disk:cx,cy,r   circle:cx,cy,r   square:cx,cy,side   segment:x0,x1
    points:z1;z2;...   cantor:l1,l2,...:depth   union(spec|spec|...)

Every generator records which samples may sit on the outer boundary
(``outer``).  Both capacity routes only look at those samples: the maximum
of |P| and of a product of distances over a compact is attained on its
outer boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import PreconditionError
from ..scalars import parse_complex

__all__ = [
    "CompactSet",
    "make_set",
    "parse_descriptor",
    "disk",
    "circle",
    "square",
    "segment",
    "finite_set",
    "cantor",
    "union",
    "preimage",
]


@dataclass(frozen=True, eq=False)
class CompactSet:
    points: np.ndarray
    fineness: float
    descriptor: str
    outer: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex)
        if pts.size == 0:
            raise PreconditionError("a compact set needs at least one point")
        outer = np.asarray(self.outer, dtype=bool)
        if outer.shape != pts.shape:
            raise PreconditionError("outer mask must match the point array")
        pts.setflags(write=False)
        outer.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "outer", outer)

    def __len__(self):
        return len(self.points)

    @property
    def candidates(self) -> np.ndarray:
        """Samples that can carry extremal configurations."""
        return self.points[self.outer]

    def scaled(self, lam) -> "CompactSet":
        lam = complex(lam)
        return CompactSet(
            self.points * lam, self.fineness * abs(lam), f"{lam}*({self.descriptor})", self.outer.copy()
        )

    def is_subset_of(self, other: "CompactSet") -> bool:
        return bool(np.isin(self.points, other.points).all())


def _dedupe(points, outer):
    # first occurrence wins; order preserved
    _, idx = np.unique(points, return_index=True)
    idx = np.sort(idx)
    return points[idx], outer[idx]


def circle(center, r, h) -> CompactSet:
    if r <= 0 or h <= 0:
        raise PreconditionError("circle needs r > 0 and h > 0")
    n = max(3, math.ceil(2 * math.pi * r / h))
    pts = center + r * np.exp(2j * np.pi * np.arange(n) / n)
    return CompactSet(pts, math.pi * r / n, f"circle:{center.real},{center.imag},{r}", np.ones(n, bool))


def disk(center, r, h) -> CompactSet:
    """Boundary circle plus an interior square lattice of spacing h."""
    rim = circle(center, r, h)
    k = int(math.floor(r / h))
    g = np.arange(-k, k + 1) * h
    X, Y = np.meshgrid(g, g)
    inner = (X + 1j * Y).ravel()
    inner = inner[np.abs(inner) < r - 0.5 * h] + center
    pts = np.concatenate([rim.points, inner])
    outer = np.concatenate([np.ones(len(rim), bool), np.zeros(len(inner), bool)])
    fine = max(rim.fineness, h / math.sqrt(2))
    return CompactSet(pts, fine, f"disk:{center.real},{center.imag},{r}", outer)


def square(center, side, h) -> CompactSet:
    """Closed square with axis-parallel sides: perimeter samples plus interior lattice."""
    if side <= 0 or h <= 0:
        raise PreconditionError("square needs side > 0 and h > 0")
    half = side / 2
    n = max(1, math.ceil(side / h))
    s = np.linspace(-half, half, n + 1)[:-1]
    rim = np.concatenate([s - 1j * half, half + 1j * s, -s + 1j * half, -half - 1j * s]) + center
    g = np.linspace(-half, half, n + 1)[1:-1]
    X, Y = np.meshgrid(g, g)
    inner = (X + 1j * Y).ravel() + center
    pts = np.concatenate([rim, inner])
    outer = np.concatenate([np.ones(len(rim), bool), np.zeros(len(inner), bool)])
    return CompactSet(pts, side / n / math.sqrt(2), f"square:{center.real},{center.imag},{side}", outer)


def segment(x0, x1, h) -> CompactSet:
    """Real interval [x0, x1] sampled at spacing <= h."""
    if not x1 > x0 or h <= 0:
        raise PreconditionError("segment needs x0 < x1 and h > 0")
    n = max(1, math.ceil((x1 - x0) / h))
    pts = np.linspace(x0, x1, n + 1).astype(complex)
    return CompactSet(pts, (x1 - x0) / n / 2, f"segment:{x0},{x1}", np.ones(n + 1, bool))


def finite_set(points) -> CompactSet:
    pts = np.asarray([complex(z) for z in points])
    pts, outer = _dedupe(pts, np.ones(len(pts), bool))
    desc = "points:" + ";".join(f"{z.real}{z.imag:+}j" for z in pts)
    return CompactSet(pts, 0.0, desc, outer)


def cantor(ratios, depth: int, h: float) -> CompactSet:
    """Depth-k generalized Cantor approximant on [0, 1].

    Step k keeps, from each interval of length L, the two end pieces of
    length l_k L.  The ratio list is extended by its last entry.  Each of
    the 2^depth intervals is sampled at its endpoints, midpoint and, when
    intervals are longer than 2h, at interior points of spacing <= 2h.
    """
    ratios = [float(r) for r in ratios]
    if not ratios:
        raise PreconditionError("cantor needs at least one ratio")
    if any(not 0 < r <= 0.5 for r in ratios):
        raise PreconditionError("cantor ratios must lie in (0, 1/2]")
    if depth < 0:
        raise PreconditionError("cantor depth must be non-negative")
    left = np.array([0.0])
    length = 1.0
    for k in range(depth):
        l = ratios[min(k, len(ratios) - 1)]
        new_length = length * l
        left = np.concatenate([left, left + (length - new_length)])
        length = new_length
    left.sort()
    per = max(3, math.ceil(length / (2 * h)) + 1) if h > 0 else 3
    offsets = np.linspace(0.0, length, per)
    pts = (left[:, None] + offsets[None, :]).ravel().astype(complex)
    pts, outer = _dedupe(pts, np.ones(len(pts), bool))
    desc = f"cantor:{','.join(repr(r) for r in ratios)}:{depth}"
    return CompactSet(pts, length / (per - 1) / 2, desc, outer)


def union(sets) -> CompactSet:
    sets = list(sets)
    if not sets:
        raise PreconditionError("empty union")
    pts = np.concatenate([s.points for s in sets])
    outer = np.concatenate([s.outer for s in sets])
    pts, outer = _dedupe(pts, outer)
    desc = "union(" + "|".join(s.descriptor for s in sets) + ")"
    return CompactSet(pts, max(s.fineness for s in sets), desc, outer)


def preimage(K: CompactSet, coeffs) -> CompactSet:
    """Samples of P^{-1}(K) for monic P given by descending coefficients.

    Only the outer samples of K are pulled back; P^{-1} of the outer
    boundary contains the outer boundary of the preimage.
    """
    coeffs = [complex(c) for c in coeffs]
    if len(coeffs) < 2 or coeffs[0] != 1:
        raise PreconditionError("preimage needs a monic polynomial of degree >= 1")
    deg = len(coeffs) - 1
    w = K.candidates
    comp = np.zeros((len(w), deg, deg), dtype=complex)
    comp[:, 0, :] = -np.asarray(coeffs[1:])[None, :]
    comp[:, 0, -1] = comp[:, 0, -1] + w
    if deg > 1:
        comp[:, np.arange(1, deg), np.arange(deg - 1)] = 1.0
    roots = np.linalg.eigvals(comp).ravel()
    dP = np.polyval(np.polyder(np.asarray(coeffs)), roots)
    fine = K.fineness / max(np.min(np.abs(dP)), 1e-300) if K.fineness else 0.0
    roots, outer = _dedupe(roots, np.ones(len(roots), bool))
    return CompactSet(roots, float(fine), f"preimage[{coeffs}]({K.descriptor})", outer)


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _floats(body: str, n: int, name: str) -> list[float]:
    vals = [float(v) for v in body.split(",")]
    if len(vals) != n:
        raise PreconditionError(f"{name} needs {n} numbers, got {len(vals)}")
    return vals


def parse_descriptor(spec: str, h: float) -> CompactSet:
    spec = spec.strip()
    if not spec:
        raise PreconditionError("empty set descriptor")
    try:
        if spec.startswith("union(") and spec.endswith(")"):
            return union(parse_descriptor(p, h) for p in _split_top(spec[6:-1], "|"))
        kind, _, body = spec.partition(":")
        if kind == "disk":
            cx, cy, r = _floats(body, 3, "disk")
            return disk(complex(cx, cy), r, h)
        if kind == "circle":
            cx, cy, r = _floats(body, 3, "circle")
            return circle(complex(cx, cy), r, h)
        if kind == "square":
            cx, cy, side = _floats(body, 3, "square")
            return square(complex(cx, cy), side, h)
        if kind == "segment":
            x0, x1 = _floats(body, 2, "segment")
            return segment(x0, x1, h)
        if kind == "points":
            zs = []
            for z in body.split(";"):
                re_, im_ = parse_complex(z)
                zs.append(complex(float(re_), float(im_)))
            return finite_set(zs)
        if kind == "cantor":
            ratio_txt, _, depth_txt = body.rpartition(":")
            ratios = []
            for r in ratio_txt.split(","):
                re_, _ = parse_complex(r)
                ratios.append(float(re_))
            return cantor(ratios, int(depth_txt), h)
    except ValueError as exc:
        raise PreconditionError(f"bad descriptor {spec!r}: {exc}") from exc
    raise PreconditionError(f"unknown set descriptor {spec!r}")


def make_set(descriptor, h: float = 1e-3) -> CompactSet:
    if isinstance(descriptor, CompactSet):
        return descriptor
    return parse_descriptor(descriptor, h)
