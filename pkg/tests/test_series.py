from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convset.errors import PreconditionError, StructureError
from convset.scalars import QQi, float_backend
from convset.series import TruncatedSeries, multinomial, substitute_y

from strategies import series


def T(terms, nvars=1, degree=5):
    return TruncatedSeries(nvars, degree, terms)


# ---- examples ---------------------------------------------------------------

def test_add_examples():
    # variables (y, t)
    assert T({(1, 0): 1, (0, 1): 1}, 2) + T({(1, 0): -1}, 2) == T({(0, 1): 1}, 2)
    assert T({(1,): 1, (2,): 1}, degree=2) + T({(1,): 1}, degree=2) == T({(1,): 2, (2,): 1}, degree=2)


def test_mul_examples():
    assert T({(0,): 1, (1,): 1}, degree=2) * T({(0,): 1, (1,): -1}, degree=2) == T({(0,): 1, (2,): -1}, degree=2)
    t = T({(1,): 1}, degree=5)
    assert (t.pow_trunc(5) * t) == TruncatedSeries.zero(1, 5)


def test_pow_examples():
    assert T({(1,): 1}).pow_trunc(3) == T({(3,): 1})
    assert T({(0,): 1, (1,): 1}, degree=1).pow_trunc(2) == T({(0,): 1, (1,): 2}, degree=1)
    # (s t + t^2)^2 in (s, t)
    u = T({(1, 1): 1, (0, 2): 1}, 2)
    assert u.pow_trunc(2) == T({(2, 2): 1, (1, 3): 2, (0, 4): 1}, 2)


def test_substitute_y_examples():
    # f in (y, t); u in (t,) lifted to (y, t) with y-exponent 0
    y, t = T({(1, 0): 1}, 2), T({(1,): 1})
    assert substitute_y(y, t) == t
    f = T({(2, 1): 1}, 2)
    assert substitute_y(f, t) == T({(3,): 1})
    # f = y^2 t in (y, s, t), u = s t + t^2 in (s, t)
    f3 = TruncatedSeries(3, 5, {(2, 0, 1): 1})
    u2 = TruncatedSeries(2, 5, {(1, 1): 1, (0, 2): 1})
    assert substitute_y(f3, u2) == TruncatedSeries(2, 5, {(2, 3): 1, (1, 4): 2, (0, 5): 1})


def test_substitute_y_needs_zero_constant_term():
    f = T({(1, 0): 1}, 2)
    with pytest.raises(PreconditionError):
        substitute_y(f, T({(0,): 1}))


def test_structure_errors():
    with pytest.raises(StructureError):
        T({(1, 2): 1})
    with pytest.raises(StructureError):
        T({(-1,): 1})
    with pytest.raises(StructureError):
        T({(1,): 1}) + T({(1, 0): 1}, 2)


def test_terms_above_degree_are_dropped():
    f = T({(6,): 1, (2,): 3})
    assert f == T({(2,): 3})
    assert T({(1,): 1}).truncate(0) == TruncatedSeries.zero(1, 0)


def test_inverse_geometric():
    one_minus_t = T({(0,): 1, (1,): -1}, degree=8)
    assert one_minus_t.inverse() == T({(k,): 1 for k in range(9)}, degree=8)
    with pytest.raises(ZeroDivisionError):
        T({(1,): 1}).inverse()


def test_multinomial():
    assert multinomial([2, 1]) == 3
    assert multinomial([1, 1, 1]) == 6
    assert multinomial([]) == 1


def test_float_backend_matches_rational():
    f = T({(0,): Fraction(1, 3), (1,): QQi(1, 2), (3,): -7})
    g = T({(0,): 2, (2,): Fraction(5, 9)})
    fb = float_backend(128)
    exact = (f * g).to_backend(fb)
    approx = f.to_backend(fb) * g.to_backend(fb)
    for e in exact.terms:
        assert abs(complex(exact[e]) - complex(approx[e])) < 1e-30


# ---- properties -------------------------------------------------------------

@given(series(), series(), series())
@settings(max_examples=60, deadline=None)
def test_ring_laws(f, g, h):
    zero = TruncatedSeries.zero(2, 5)
    one = TruncatedSeries.constant(1, 2, 5)
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f + zero == f and f - f == zero
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * one == f


@given(series(), series(), st.integers(0, 5))
@settings(max_examples=60, deadline=None)
def test_truncation_is_a_ring_morphism(f, g, k):
    assert (f * g).truncate(k) == f.truncate(k) * g.truncate(k)
    assert (f + g).truncate(k) == f.truncate(k) + g.truncate(k)


@given(series(), series())
@settings(max_examples=60, deadline=None)
def test_mul_matches_dense_convolution(f, g):
    dense = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = (e1[0] + e2[0], e1[1] + e2[1])
            if sum(e) <= 5:
                dense[e] = dense.get(e, QQi(0)) + c1 * c2
    assert f * g == TruncatedSeries(2, 5, dense)


@given(series(), series(), series(nvars=1))
@settings(max_examples=40, deadline=None)
def test_substitute_y_is_a_morphism(f, g, u):
    # y := u with u(0) = 0 respects sums and products
    u = u - TruncatedSeries.constant(u.constant_term(), 1, 5)
    assert substitute_y(f + g, u) == substitute_y(f, u) + substitute_y(g, u)
    assert substitute_y(f * g, u) == substitute_y(f, u) * substitute_y(g, u)


@given(series(nvars=1, degree=7))
@settings(max_examples=40, deadline=None)
def test_inverse_property(f):
    f = f + TruncatedSeries.constant(1, 1, 7) - TruncatedSeries.constant(f.constant_term(), 1, 7)
    assert f * f.inverse() == TruncatedSeries.constant(1, 1, 7)
