from fractions import Fraction

import pytest

from convset.constructions import (
    SGrid,
    construct_for_finite_set,
    finite_set_dtable,
    gen_example_f,
    gen_example_g,
    scan,
)
from convset.curve import ATable, Curve, forward_map, probe
from convset.errors import PreconditionError
from convset.growth import CONVERGENT, DIVERGENT, growth_profile
from convset.scalars import QQi
from convset.series import TruncatedSeries


def X(*coeffs, degree):
    return TruncatedSeries(1, degree, {(k,): c for k, c in enumerate(coeffs)})


def test_example_f_single_term_shifted():
    curve = Curve([X(1, degree=6)])
    a = gen_example_f([0], 1, curve, 6, anchor="shifted")
    assert dict(a.items()) == {(1, 0): X(1, degree=5), (0, 1): X(-1, degree=5)}


def test_example_g_single_term():
    curve = Curve([X(1, degree=6)])
    g = gen_example_g([QQi(2)], 1, curve, 6)
    # g = t + (y - 2t)
    assert dict(g.items()) == {(1, 0): X(1, degree=5), (0, 1): X(-1, degree=5)}


def test_example_g_itself_diverges():
    curve = Curve([X(1, degree=16)])
    g = gen_example_g([0, 1, 2], 16, curve, 16)
    assert growth_profile(g.to_series()).verdict == DIVERGENT


def test_example_f_probe_pattern():
    D = 30
    curve = Curve([X(1, degree=D)])
    f = gen_example_f([0, 1, 2], 30, curve, D)
    for s in (0, 1, 2):
        assert probe(f, curve, s, D).verdict == CONVERGENT
    assert probe(f, curve, 5, D).verdict == DIVERGENT


def test_example_g_diverges_on_anchors():
    D = 20
    curve = Curve([X(1, degree=D)])
    g = gen_example_g([0, 1, 2], 20, curve, D)
    for s in (0, 1, 2):
        assert probe(g, curve, s, D).verdict == DIVERGENT


def test_construct_single_target():
    D = 12
    curve = Curve([X(1, 1, degree=D), X(0, 1, degree=D)])
    a = construct_for_finite_set([0], curve, D)
    p = probe(a, curve, 0, D)
    assert all(r == 0 for _, r in p.rho) and p.verdict == CONVERGENT


def test_construct_two_targets_midpoint_diverges():
    D = 40
    curve = Curve([X(1, degree=D)])
    a = construct_for_finite_set([0, 1], curve, D)
    p = probe(a, curve, Fraction(1, 2), D)
    assert p.rho_at(40) == pytest.approx((20**20 / 4**20) ** (1 / 40))
    assert p.verdict == DIVERGENT


def test_construct_round_trip_and_own_divergence():
    D = 16
    curve = Curve([X(1, 1, degree=D), X(0, 2, degree=D), X(1, degree=D)])
    targets = [0, 1, QQi(0, 1)]
    a = construct_for_finite_set(targets, curve, D)
    assert forward_map(a, curve, D) == finite_set_dtable(targets, 1, D)
    assert growth_profile(a.to_series()).verdict == DIVERGENT


def test_construct_preconditions():
    curve = Curve([X(1, degree=6)])
    with pytest.raises(PreconditionError):
        construct_for_finite_set([0, 0], curve, 6)
    with pytest.raises(PreconditionError):
        construct_for_finite_set([0, 1, 2, 3], curve, 6)
    with pytest.raises(PreconditionError):
        construct_for_finite_set([], curve, 6)


def test_sgrid_samples():
    g = SGrid.parse("0,0,1,3", extra=[QQi(0), QQi(5)])
    pts = g.samples()
    assert len(pts) == 10
    assert pts[0] == QQi(-1, -1) and pts[1] == QQi(0, -1)
    assert pts[-1] == QQi(5)
    assert SGrid.parse("2,0,1,1").samples() == [QQi(2)]
    with pytest.raises(PreconditionError):
        SGrid.parse("0,0,1")
    with pytest.raises(PreconditionError):
        SGrid.parse("0,0,1,0").samples()


def test_scan_of_y_is_all_convergent():
    D = 8
    curve = Curve([X(1, degree=D), X(1, degree=D)])
    a = ATable({(1, 0): X(1, degree=D)}, 1, D)
    rows, counts = scan(a, curve, SGrid.parse("0,0,2,3"), D)
    assert counts == {CONVERGENT: 9}


def test_scan_two_targets_and_worker_independence():
    D = 24
    curve = Curve([X(1, degree=D)])
    a = construct_for_finite_set([0, 1], curve, D)
    grid = SGrid.parse("0,0,2,5", extra=[QQi(1)])
    rows, counts = scan(a, curve, grid, D)
    assert len(rows) == 25  # 0 and 1 are lattice points; the extra is deduplicated
    assert {complex(r.s) for r in rows if r.profile.verdict == CONVERGENT} == {0, 1}
    rows2, _ = scan(a, curve, grid, D, workers=3)
    assert [r.csv_row() for r in rows] == [r.csv_row() for r in rows2]
