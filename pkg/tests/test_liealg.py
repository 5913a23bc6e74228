import pytest

from src.opcalc.exceptions import RingError, RingMismatchError, ValidationError
from src.opcalc.liealg import L, LieElem, bracket, bracket_L, centralize, from_L_basis, to_L_basis
from src.opcalc.liealg.checks import (
    antisymmetry_check, bidegree_additivity_check, centrality_check,
    heisenberg_subrelations_check, hv_bracket_check, super_jacobi_check,
)


def P(ring, m, k, a=None):
    return LieElem.P(ring, m, k, ring.one() if a is None else a)


def test_heisenberg_pair_brackets_to_center(chow2):
    value = bracket(P(chow2, 0, 1), P(chow2, 1, 0))
    assert value == P(chow2, 0, 0)
    assert str(value) == "P(0,0; 1)"


def test_bracket_uses_a0_for_higher_contractions(chow2):
    value = bracket(P(chow2, 2, 0), P(chow2, 0, 2))
    expected = P(chow2, 1, 1) * -4 + P(chow2, 0, 0, chow2.K * 2)
    assert value == expected


def test_weight_operator_grades(cohomology2):
    a = cohomology2.gen("alpha1")
    assert bracket(P(cohomology2, 1, 1), P(cohomology2, 1, 0, a)) == P(cohomology2, 1, 0, a)
    assert bracket(P(cohomology2, 1, 1), P(cohomology2, 0, 1, a)) == -P(cohomology2, 0, 1, a)


def test_odd_classes_carry_koszul_sign(cohomology2):
    a1, b1 = cohomology2.gen("alpha1"), cohomology2.gen("beta1")
    left = bracket(P(cohomology2, 1, 0, a1), P(cohomology2, 0, 1, b1))
    right = bracket(P(cohomology2, 0, 1, b1), P(cohomology2, 1, 0, a1))
    # both odd: the super bracket is symmetric
    assert left == right
    rest, scalar = centralize(left)
    assert rest.is_zero()
    assert scalar == -cohomology2.one()


def test_p_is_linear_in_the_class(chow2):
    x = P(chow2, 2, 1, chow2.K + chow2.point_class * 3)
    assert x == P(chow2, 2, 1, chow2.K) + P(chow2, 2, 1, chow2.point_class) * 3
    psi_scaled = P(chow2, 1, 0, chow2.psi * chow2.point_class)
    assert psi_scaled == P(chow2, 1, 0, chow2.point_class) * chow2.psi


def test_invalid_constructions(chow2, cohomology2):
    with pytest.raises(ValidationError):
        P(chow2, -1, 0)
    with pytest.raises(RingMismatchError):
        LieElem.P(chow2, 1, 0, cohomology2.one())
    with pytest.raises(ValidationError):
        P(chow2, 1, 0) * chow2.point_class


def test_l_basis_round_trip(cohomology2):
    a = cohomology2.gen("beta2")
    x = L(cohomology2, 2, 3, a) + L(cohomology2, 1, 1, cohomology2.one())
    assert to_L_basis(from_L_basis(x)) == x
    assert from_L_basis(L(cohomology2, 1, 1, cohomology2.one())) == P(cohomology2, 1, 1) - P(cohomology2, 0, 0, cohomology2.gen("pt"))


def test_l_basis_bracket_closed_form(cohomology2):
    one = cohomology2.one()
    value = bracket_L(L(cohomology2, 2, 0, one), L(cohomology2, 0, 2, one))
    assert value == L(cohomology2, 1, 1, one) * -4


def test_l_basis_needs_trivial_family(chow2):
    with pytest.raises((RingError, ValidationError)):
        from_L_basis(L(chow2, 1, 1, chow2.one()))


def test_small_sweeps_pass(cohomology2, chow2_truncated):
    assert super_jacobi_check(cohomology2, 1, 1, threads=1).passed
    assert super_jacobi_check(chow2_truncated, 1, 1, basis_degree=1, threads=1).passed
    assert antisymmetry_check(cohomology2, 2, 2).passed
    assert bidegree_additivity_check(chow2_truncated, 2, 2, basis_degree=1).passed
    assert centrality_check(chow2_truncated, max_index=2, basis_degree=1).passed
    assert heisenberg_subrelations_check(cohomology2).passed
    assert hv_bracket_check(cohomology2, total=2).passed


@pytest.mark.slow
def test_jacobi_sweep_reports_basis(cohomology2):
    result = super_jacobi_check(cohomology2, 1, 0, threads=1)
    assert result.data["basis_size"] == 2 * 6
    assert result.checked == 12 * 13 * 14 // 6
