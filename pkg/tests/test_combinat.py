import pytest

from src.opcalc.combinat import (
    A_coeff, a_coeff, a_coeff_vanishes, b_coeff, binomial, compositions, exact_div, stirling2,
    stirling2_recurrence,
)
from src.opcalc.combinat.checks import combinat_suite
from src.opcalc.exceptions import ExactnessError


@pytest.mark.parametrize("m,i,expected", [(0, 0, 1), (3, 2, 3), (5, 2, 15), (5, 3, 25), (4, 0, 0), (2, 3, 0)])
def test_stirling_values(m, i, expected):
    assert stirling2(m, i) == expected
    assert stirling2_recurrence(m, i) == expected


def test_binomial_outside_range_is_zero():
    assert binomial(3, 4) == 0
    assert binomial(3, -1) == 0
    assert binomial(-2, 1) == 0
    assert binomial(6, 3) == 20


def test_compositions_strict_and_weak():
    assert list(compositions(3, 2)) == [(1, 2), (2, 1)]
    assert list(compositions(2, 2, weak=True)) == [(0, 2), (1, 1), (2, 0)]
    assert list(compositions(0, 0)) == [()]
    assert list(compositions(2, 3)) == []


def test_A_coeff_small_values():
    # A_0(i,n) = delta_{i,0}; A_1(i,n) = C(n,i)
    assert A_coeff(0, 0, 5) == 1
    assert A_coeff(0, 2, 5) == 0
    assert A_coeff(1, 2, 4) == 6
    # (1,2) and (2,1): C(2,1) C(2,2) each
    assert A_coeff(2, 3, 2) == 4


def test_a_coeff_and_support():
    assert a_coeff([3], 0) == 1
    assert a_coeff([3], 1) == 0
    assert a_coeff([1, 1], 1) == 1
    assert a_coeff_vanishes([2, 0], 1)
    assert a_coeff([2, 0], 1) == 0


def test_b_coeff_matches_closed_form_on_example():
    # b(2,1;2) = 2 = 2!/1! * A_1(2,2)
    assert b_coeff(2, 1, 2) == 2
    assert b_coeff(1, 0, 1) == 1


def test_exact_div_refuses_remainders():
    assert exact_div(12, 4) == 3
    with pytest.raises(ExactnessError) as info:
        exact_div(7, 2, "halving")
    assert info.value.exit_code == 3
    assert info.value.context["operation"] == "halving"


def test_combinat_suite_passes():
    results = combinat_suite(6)
    assert [r.identity for r in results] == ["stirling2-recurrence", "A-recursion", "b-closed-form", "a-support"]
    for result in results:
        assert result.passed, result.failures[:3]
        assert result.checked > 0
