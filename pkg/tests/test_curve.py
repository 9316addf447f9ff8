import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convset.constructions import gen_example_f
from convset.curve import (
    ATable,
    Curve,
    DTable,
    forward_map,
    forward_map_multinomial,
    forward_map_substitution,
    inverse_closed_form,
    inverse_solve,
    lambda_poly,
    phi_at,
    probe,
    probe_series,
    triangularity_check,
)
from convset.errors import PreconditionError, StructureError, TriangularityError
from convset.fuzz import random_atable, random_curve
from convset.growth import CONVERGENT, DIVERGENT
from convset.scalars import QQi
from convset.series import TruncatedSeries

D = 8


def X(*coeffs, degree=D):
    """Series in one x variable from ascending coefficients."""
    return TruncatedSeries(1, degree, {(k,): c for k, c in enumerate(coeffs)})


def TX(terms, degree=D):
    """Series in (t, x)."""
    return TruncatedSeries(2, degree, terms)


def parabola():
    return Curve([X(1), X(1)])


def test_curve_requires_unit_b1():
    with pytest.raises(PreconditionError):
        Curve([X(2)])
    with pytest.raises(PreconditionError):
        Curve([X(0, 1)])
    with pytest.raises(PreconditionError):
        Curve([])


def test_phi_examples():
    assert phi_at(Curve([X(1)]), QQi(3, 1), D) == TX({(1, 0): QQi(3, 1)})
    assert phi_at(parabola(), 2, D) == TX({(1, 0): 2, (2, 0): 1})
    c = Curve([X(1, 1), X(0, 1)])
    assert phi_at(c, 1, D) == TX({(1, 0): 1, (1, 1): 1, (2, 1): 1})


def test_forward_map_examples():
    c = QQi(2, -1)
    d = forward_map(ATable({(1, 0): X(c)}, 1, D), parabola(), D)
    assert dict(d.items()) == {(1, 1): X(c, degree=D - 1), (0, 2): X(c, degree=D - 2)}
    d = forward_map(ATable({(2, 1): X(1)}, 1, D), parabola(), D)
    assert dict(d.items()) == {(2, 3): X(1, degree=5), (1, 4): X(2, degree=4), (0, 5): X(1, degree=3)}
    assert lambda_poly(d, 3, (0,)) == [QQi(0), QQi(0), QQi(1)]  # s^2


def test_diagonal_coefficient_is_a_times_b1_power():
    alpha, b1 = X(3, 0, 1), X(1, 2)
    curve = Curve([b1, X(0, 1)])
    for q in range(4):
        d = forward_map(ATable({(q, 0): alpha}, 1, D), curve, D)
        assert d[q, q] == (alpha * b1.pow_trunc(q)).truncate(D - q)


def test_triangularity_check():
    d = DTable({(2, 1): X(1)}, 1, D)
    rep = triangularity_check(d)
    assert not rep and rep.witness == (2, 1)
    assert triangularity_check(DTable({}, 1, D))
    with pytest.raises(TriangularityError):
        inverse_solve(d, parabola(), D)


def test_inverse_examples():
    c = QQi(5)
    a = inverse_solve(DTable({(1, 1): X(c, degree=D - 1)}, 1, D), parabola(), D)
    assert dict(a.items()) == {(1, 0): X(c, degree=D - 1), (0, 2): X(-c, degree=D - 2)}
    assert inverse_solve(DTable({}, 1, D), parabola(), D) == ATable({}, 1, D)


def test_lambda_of_zero_table():
    assert lambda_poly(DTable({}, 1, D), 3, (0,)) == []


def test_table_and_curve_must_agree():
    a = ATable({(1, 0): TruncatedSeries(2, D, {(0, 0): 1})}, 2, D)
    with pytest.raises(StructureError):
        forward_map(a, parabola(), D)


@pytest.mark.parametrize("seed", range(12))
def test_random_round_trip_and_dual_routes(seed):
    rng = random.Random(seed)
    curve = random_curve(rng, D, max_J=4)
    a = random_atable(rng, D, density=0.3)
    d = forward_map_multinomial(a, curve, D)
    assert d == forward_map_substitution(a, curve, D)
    assert triangularity_check(d)
    assert inverse_solve(d, curve, D) == a
    assert inverse_closed_form(d, curve, D) == a


@given(st.integers(0, 10**6), st.integers(-4, 4))
@settings(max_examples=15, deadline=None)
def test_forward_map_is_linear(seed, k):
    rng = random.Random(seed)
    curve = random_curve(rng, 6)
    a1, a2 = random_atable(rng, 6), random_atable(rng, 6)
    combo = ATable({key: a1[key].scale(k) + a2[key] for key in set(a1.keys()) | set(a2.keys())}, 1, 6)
    lhs = forward_map(combo, curve, 6)
    d1, d2 = forward_map(a1, curve, 6), forward_map(a2, curve, 6)
    rhs = DTable({key: d1[key].scale(k) + d2[key] for key in set(d1.keys()) | set(d2.keys())}, 1, 6)
    assert lhs == rhs


def test_linear_curve_probe_is_f_of_st_t():
    rng = random.Random(5)
    a = random_atable(rng, D)
    s = QQi(2, 1)
    expected = {}
    for (i, j), series in a.items():
        for (k,), c in series.terms.items():
            e = (i + j, k)
            expected[e] = expected.get(e, QQi(0)) + c * s ** i
    assert probe_series(a, Curve([X(1)]), s, D) == TX(expected)


def test_probe_of_y_is_convergent():
    a = ATable({(1, 0): X(1)}, 1, D)
    for s in (0, 1, QQi(3, -2), 100):
        assert probe(a, parabola(), s, D).verdict == CONVERGENT


def test_probe_float_backend_agrees():
    rng = random.Random(9)
    a = random_atable(rng, D)
    curve = random_curve(rng, D)
    exact = probe(a, curve, QQi(1, 1), D)
    from convset.scalars import float_backend

    approx = probe(a, curve, QQi(1, 1), D, backend=float_backend(128))
    assert approx.verdict == exact.verdict
    for (m, r1), (_, r2) in zip(exact.rho, approx.rho):
        assert r2 == pytest.approx(r1, rel=1e-12, abs=1e-30)


def test_n_power_n_series_diverges_off_its_anchor():
    # f = sum n^n (y - t)^n along b_1 = 1: f(phi_s) = sum n^n ((s - 1) t)^n
    a = gen_example_f([1], 25, Curve([X(1, degree=25)]), 25)
    assert probe(a, Curve([X(1, degree=25)]), 1, 25).verdict == CONVERGENT
    p = probe(a, Curve([X(1, degree=25)]), 2, 25)
    assert p.rho_at(25) == pytest.approx(25.0)
    assert p.verdict == DIVERGENT


def test_constant_anchor_gives_single_convergence_point():
    # every phi_j equal to phi = phi_1: f(phi_s) = sum n^n ((s - 1) b_1 t)^n
    D2 = 24
    curve = Curve([X(1, 1, degree=D2), X(0, 1, degree=D2)])
    a = gen_example_f([1], 24, curve, D2)
    verdicts = {s: probe(a, curve, s, D2).verdict for s in (0, 1, 2, QQi(1, 1))}
    assert verdicts == {0: DIVERGENT, 1: CONVERGENT, 2: DIVERGENT, QQi(1, 1): DIVERGENT}
