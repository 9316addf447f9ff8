import math

import pytest

from convset.errors import PreconditionError
from convset.growth import CONVERGENT, DIVERGENT, INCONCLUSIVE, VerdictRule, growth_profile
from convset.series import TruncatedSeries


def univariate(coeffs, degree):
    return TruncatedSeries(1, degree, {(m,): c for m, c in coeffs.items()})


def test_geometric_is_convergent():
    p = growth_profile(univariate({m: 1 for m in range(21)}, 20))
    assert all(r == 1.0 for _, r in p.rho)
    assert p.verdict == CONVERGENT
    assert p.en_index == 1


def test_factorial_is_divergent():
    p = growth_profile(univariate({m: math.factorial(m) for m in range(21)}, 20))
    assert p.rho_at(20) == pytest.approx(math.factorial(20) ** (1 / 20))
    assert p.rho_at(20) == pytest.approx(8.30, abs=0.005)
    assert p.verdict == DIVERGENT


def test_zero_series():
    p = growth_profile(TruncatedSeries.zero(2, 10))
    assert all(r == 0.0 for _, r in p.rho)
    assert p.verdict == CONVERGENT


def test_exhaustion_index_is_exact():
    # |a_m| = 3^m exactly; n = 3 is the least n with |a_m| <= n^m
    p = growth_profile(univariate({m: 3 ** m for m in range(1, 9)}, 8))
    assert p.en_index == 3
    p = growth_profile(univariate({m: 3 ** m + (1 if m == 8 else 0) for m in range(1, 9)}, 8))
    assert p.en_index == 4


def test_huge_exact_coefficients_stay_finite():
    p = growth_profile(univariate({m: math.factorial(m) ** 3 for m in range(1, 61)}, 60))
    assert math.isfinite(p.rho_at(60)) and p.verdict == DIVERGENT


def test_degree_precondition():
    with pytest.raises(PreconditionError):
        growth_profile(TruncatedSeries.zero(1, 3))


def test_rule_thresholds_are_overridable():
    f = univariate({m: m ** m for m in range(1, 13)}, 12)
    assert growth_profile(f).verdict == DIVERGENT
    strict = VerdictRule(divergent_floor=1e6, convergent_ceiling=1.0)
    assert growth_profile(f, strict).verdict == INCONCLUSIVE
