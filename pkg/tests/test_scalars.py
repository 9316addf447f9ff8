import math
from fractions import Fraction

import pytest
from gmpy2 import mpq

from convset.scalars import RATIONAL, Backend, QQi, float_backend, log_abs, parse_complex


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1/2", (mpq(1, 2), mpq(0))),
        ("1+2j", (mpq(1), mpq(2))),
        ("-j", (mpq(0), mpq(-1))),
        ("1e-3", (mpq(1, 1000), mpq(0))),
        ("-1/3-2/5j", (mpq(-1, 3), mpq(-2, 5))),
    ],
)
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


def test_parse_complex_rejects_garbage():
    with pytest.raises(ValueError):
        parse_complex("one")


def test_gaussian_field_ops():
    a, b = QQi(1, 2), QQi(Fraction(1, 2), -1)
    assert a * b == QQi(Fraction(5, 2), 0)
    assert (a / b) * b == a
    assert a - a == QQi(0)
    assert not QQi(0)
    assert a ** 2 == QQi(-3, 4)
    assert a.conjugate() == QQi(1, -2)
    assert a.abs2() == 5
    with pytest.raises(ZeroDivisionError):
        a / QQi(0)


def test_coerce_and_complex():
    assert QQi.coerce(0.5) == QQi(Fraction(1, 2))
    assert QQi.coerce("2-j") == QQi(2, -1)
    assert complex(QQi(1, -3)) == 1 - 3j
    with pytest.raises(TypeError):
        QQi.coerce(object())


def test_log_abs_exact_for_huge_values():
    big = QQi(mpq(10) ** 400)
    assert log_abs(big) == pytest.approx(400 * math.log(10))
    assert log_abs(QQi(0)) == -math.inf


def test_backends():
    assert RATIONAL.exact and RATIONAL.label() == "rational"
    fb = float_backend(64)
    assert not fb.exact and fb.label() == "float64"
    assert complex(fb.coerce(QQi(1, 3))) == pytest.approx(1 + 3j)
    with pytest.raises(ValueError):
        Backend("float", 20)
