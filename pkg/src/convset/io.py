"""JSON documents for series, coefficient tables and curves, plus CSV output.

Rational coefficients are written as "p/q" (or "p") strings and read back
bit-exactly.  Float coefficients are written as decimal strings carrying
the full working precision.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .curve import ATable, Curve, DTable
from .errors import ConvsetError, StructureError
from .scalars import Backend, QQi, to_mpq
from .series import TruncatedSeries

__all__ = [
    "series_to_doc",
    "series_from_doc",
    "table_to_doc",
    "table_from_doc",
    "curve_to_doc",
    "curve_from_doc",
    "dump",
    "load",
    "format_float",
    "write_csv",
]


def _rational_str(q) -> str:
    q = to_mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _coeff_pair(c, backend: Backend) -> tuple[str, str]:
    if backend.exact:
        return _rational_str(c.re), _rational_str(c.im)
    ctx = backend.context
    digits = int(math.ceil(backend.precision * math.log10(2))) + 2
    return ctx.nstr(c.real, digits), ctx.nstr(c.imag, digits)


def _backend_doc(backend: Backend) -> dict:
    doc = {"backend": backend.kind}
    if not backend.exact:
        doc["precision"] = backend.precision
    return doc


def _backend_from(doc: dict) -> Backend:
    return Backend(doc.get("backend", "rational"), int(doc.get("precision", 128)))


def series_to_doc(f: TruncatedSeries, variables=None) -> dict:
    variables = list(variables or [f"z{k}" for k in range(f.nvars)])
    if len(variables) != f.nvars:
        raise StructureError("one variable name per series variable required")
    terms = []
    for e, c in f.sorted_terms():
        re_, im_ = _coeff_pair(c, f.backend)
        terms.append({"exp": list(e), "re": re_, "im": im_})
    return {
        "variables": variables,
        "degree_bound": f.degree,
        **_backend_doc(f.backend),
        "terms": terms,
    }


def series_from_doc(doc: dict) -> TruncatedSeries:
    try:
        backend = _backend_from(doc)
        nvars = len(doc["variables"])
        terms = {}
        for t in doc["terms"]:
            if backend.exact:
                c = QQi(to_mpq(t.get("re", "0")), to_mpq(t.get("im", "0")))
            else:
                ctx = backend.context
                c = ctx.mpc(ctx.mpf(t.get("re", "0")), ctx.mpf(t.get("im", "0")))
            terms[tuple(t["exp"])] = c
        return TruncatedSeries(nvars, int(doc["degree_bound"]), terms, backend)
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed series document: {exc}") from exc


def _xnames(nx):
    return ["x"] if nx == 1 else [f"x{k}" for k in range(1, nx + 1)]


def table_to_doc(table) -> dict:
    keys = ("i", "j") if isinstance(table, ATable) else ("p", "q")
    entries = [
        {keys[0]: k[0], keys[1]: k[1], "series": series_to_doc(s, _xnames(table.nx))}
        for k, s in table.items()
    ]
    return {
        "kind": table.kind,
        "x_variables": _xnames(table.nx),
        "degree_bound": table.degree,
        **_backend_doc(table.backend),
        "entries": entries,
    }


def table_from_doc(doc: dict):
    kind = doc.get("kind")
    if kind not in ("atable", "dtable"):
        raise StructureError(f"unknown table kind {kind!r}")
    cls, keys = (ATable, ("i", "j")) if kind == "atable" else (DTable, ("p", "q"))
    nx = len(doc["x_variables"])
    entries = {}
    for e in doc["entries"]:
        key = (int(e[keys[0]]), int(e[keys[1]]))
        entries[key] = series_from_doc(e["series"])
    return cls(entries, nx, int(doc["degree_bound"]), _backend_from(doc))


def curve_to_doc(curve: Curve) -> dict:
    return {"kind": "curve", "b": [series_to_doc(bj, _xnames(curve.nx)) for bj in curve.b]}


def curve_from_doc(doc: dict) -> Curve:
    if doc.get("kind") != "curve":
        raise StructureError("not a curve document")
    return Curve([series_from_doc(b) for b in doc["b"]])


def dump(obj, path) -> None:
    if isinstance(obj, TruncatedSeries):
        doc = series_to_doc(obj)
    elif isinstance(obj, (ATable, DTable)):
        doc = table_to_doc(obj)
    elif isinstance(obj, Curve):
        doc = curve_to_doc(obj)
    else:
        doc = obj
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=False) + "\n")


def load(path):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConvsetError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise StructureError(f"{path}: invalid JSON ({exc})") from exc
    kind = doc.get("kind")
    if kind in ("atable", "dtable"):
        return table_from_doc(doc)
    if kind == "curve":
        return curve_from_doc(doc)
    return series_from_doc(doc)


def format_float(x) -> str:
    return format(float(x), ".17g")


def _cell(v) -> str:
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def write_csv(header, rows, path=None) -> str:
    """Render rows with fixed float formatting; write to ``path`` if given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    text = buf.getvalue()
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise ConvsetError(f"cannot write {path}: {exc.strerror}") from exc
    return text
