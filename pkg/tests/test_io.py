import json
import random

import pytest

from convset import io
from convset.curve import Curve, forward_map
from convset.errors import ConvsetError, StructureError
from convset.fuzz import random_atable, random_curve
from convset.scalars import QQi, float_backend
from convset.series import TruncatedSeries


def test_series_round_trip_is_bit_exact(tmp_path):
    f = TruncatedSeries(2, 6, {(1, 2): QQi(10**40 + 1, -3), (0, 0): QQi(1, 7) / QQi(3)})
    io.dump(f, tmp_path / "f.json")
    assert io.load(tmp_path / "f.json") == f
    doc = json.loads((tmp_path / "f.json").read_text())
    assert doc["degree_bound"] == 6 and doc["backend"] == "rational"


def test_tables_and_curves_round_trip(tmp_path):
    rng = random.Random(1)
    curve, a = random_curve(rng, 6), random_atable(rng, 6)
    d = forward_map(a, curve, 6)
    for obj, name in ((a, "a"), (d, "d"), (curve, "c")):
        io.dump(obj, tmp_path / f"{name}.json")
    assert io.load(tmp_path / "a.json") == a
    assert io.load(tmp_path / "d.json") == d
    back = io.load(tmp_path / "c.json")
    assert isinstance(back, Curve) and back.b == curve.b


def test_float_series_round_trip(tmp_path):
    fb = float_backend(96)
    f = TruncatedSeries(1, 3, {(1,): QQi(1, 3), (2,): QQi(-2, 7)}).to_backend(fb)
    io.dump(f, tmp_path / "f.json")
    g = io.load(tmp_path / "f.json")
    assert g.backend == fb
    for e in f.terms:
        assert g[e] == f[e]


def test_malformed_documents(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(StructureError):
        io.load(p)
    p.write_text(json.dumps({"variables": ["z"], "terms": []}))
    with pytest.raises(StructureError):
        io.load(p)
    with pytest.raises(ConvsetError):
        io.load(tmp_path / "missing.json")


def test_csv_formatting(tmp_path):
    text = io.write_csv(("a", "b"), [(0.1, "x"), (1, 2.0)])
    assert text == "a,b\n0.10000000000000001,x\n1,2\n"
    with pytest.raises(ConvsetError):
        io.write_csv(("a",), [], tmp_path / "no" / "such" / "dir.csv")
