from fractions import Fraction

import pytest

from src.opcalc.env import EnvElem
from src.opcalc.exceptions import ErrorCode, NonNilpotentError, RingMismatchError, ValidationError
from src.opcalc.liealg import LieElem
from src.opcalc.models import (
    ActionTable, FockVector, TautAlgebra, decompose_module, delta_apply, expand, fock_action_table,
    fock_apply, format_diff_term, lefschetz_power, pontryagin_identity_check, realize, realize_P,
)
from src.opcalc.models.checks import (
    bookkeeping_check, collino_module_check, fock_decomposition_check, fock_sl2_check,
    homomorphism_check, lefschetz_bijection_check, pullback_p11_check,
)
from src.opcalc.models.zero_cycle import P_m1_values_check, grading_check, witt_P_m1_check, witt_delta_check


def test_fock_operators():
    v = FockVector.basis(0, 2)
    assert fock_apply([("t", 1), ("du", 1)], v) == FockVector.basis(1, 1)
    assert fock_apply([("u", 1)], FockVector.basis(0, 1)) == FockVector.basis(0, 2, 2)
    assert fock_apply([("dt", 2)], FockVector.basis(3, 0)) == FockVector.basis(1, 0, 3)
    assert fock_apply([("h", 1)], FockVector.basis(2, 5)) == FockVector.basis(2, 5, -3)
    assert lefschetz_power(1, 3) == FockVector.basis(3, 1)
    assert str(FockVector.basis(2, 1, 3) - FockVector.basis(0, 0)) == "-1 + 3*t^2*u^[1]"
    with pytest.raises(ValidationError):
        lefschetz_power(3, 1)


def test_fock_checks_pass():
    assert fock_sl2_check(5).passed
    assert lefschetz_bijection_check(6).passed


def test_taut_products(chow2, cohomology2):
    algebra = TautAlgebra(chow2)
    assert algebra.u() * algebra.u() == algebra.u(2) * 2
    assert str(algebra.u(2)) == "x(1; 1)^[2]"
    assert str(algebra.t() * algebra.t()) == "x(1; p0)^2"
    assert algebra.x(0, chow2.K) == algebra.scalar(2)
    assert (algebra.t() * algebra.t()).derivative((1, chow2.point_class_monomial())) == algebra.t() * 2

    odd = TautAlgebra(cohomology2)
    a, b = odd.x(1, cohomology2.gen("alpha1")), odd.x(1, cohomology2.gen("beta1"))
    assert (a * a).is_zero()
    assert a * b == -(b * a)


def test_taut_algebras_do_not_mix(chow2, chow2_rational):
    with pytest.raises(RingMismatchError):
        TautAlgebra(chow2).one() + TautAlgebra(chow2, section_relation=True).one()
    assert TautAlgebra(chow2).one() != TautAlgebra(chow2_rational).one()


def test_taut_algebras_compare_by_value(chow2):
    first, second = TautAlgebra(chow2), TautAlgebra(chow2)
    assert first == second and hash(first) == hash(second)
    assert first != TautAlgebra(chow2, section_relation=True)
    u = first.x(1, chow2.one())
    assert u + second.x(1, chow2.one()) == u.scale(2)
    assert {u: 1}[second.x(1, chow2.one())] == 1


def test_section_relation(chow2):
    algebra = TautAlgebra(chow2, section_relation=True)
    assert algebra.x(3, chow2.point_class) == algebra.power(algebra.t(), 3)


def test_realized_operators(chow2):
    algebra = TautAlgebra(chow2)
    p0, one = chow2.point_class, chow2.one()
    assert realize_P(algebra, 1, 0, p0)(algebra.one()) == algebra.t()
    assert realize_P(algebra, 0, 1, p0)(algebra.u(2)) == algebra.u(1)
    assert realize_P(algebra, 0, 1, one)(algebra.t()) == algebra.one()
    assert realize(algebra, LieElem.P(chow2, 1, 1, p0))(algebra.u()) == algebra.t()
    column = EnvElem.tower(chow2, "heis", 1, 2, "col")
    assert realize(algebra, column)(algebra.power(algebra.t(), 2)) == algebra.one()


def test_expand_lists_derivative_terms(chow2):
    algebra = TautAlgebra(chow2)
    terms = expand(algebra, 0, 1, chow2.point_class, max_index=1, basis_degree=1)
    lines = [format_diff_term(algebra, term) for term in terms]
    assert lines[0] == "1*d[x(1; 1)]"
    assert len(lines) == 3
    assert [format_diff_term(algebra, term) for term in expand(algebra, 2, 0, chow2.K, 1)] == ["x(2; K)"]


def test_taut_realization_sweeps(chow2, chow2_truncated):
    result = homomorphism_check(chow2_truncated, max_index=1, max_weight=2, basis_degree=1, threads=1)
    assert result.passed
    assert result.data["operators"] == 4 * 3
    assert bookkeeping_check(chow2, max_index=2, max_weight=3, basis_degree=1).passed
    assert collino_module_check(chow2, max_weight=3).passed
    assert pullback_p11_check(chow2, max_j=3, max_n=3).passed


def test_zero_cycle_model():
    assert P_m1_values_check(max_m=3, genus=3, generators=2).passed
    assert witt_delta_check(max_m=3, genus=3, generators=2, trials=20, seed=1).passed
    assert witt_P_m1_check(max_m=2, genus=2, generators=2, max_t=1).passed
    assert grading_check(genus=3, generators=2).passed
    assert pontryagin_identity_check(4).passed


def test_delta_needs_positive_index():
    from src.opcalc.models import ZeroCycleModel

    with pytest.raises(ValidationError):
        delta_apply(0, ZeroCycleModel(2).x(1))


def test_fock_module_decomposes():
    decomposition = decompose_module(fock_action_table(3))
    payload = decomposition.to_dict()
    assert payload["m0_dimension"] == 1
    assert payload["m0_basis"] == ["t^0*u^[0]"]
    assert payload["t_injective"] and payload["du_surjective"] and payload["recomposed"]
    assert fock_decomposition_check(4).passed


def _two_state_table(du):
    return ActionTable(
        basis=["a", "b"],
        weights={"a": 0, "b": 1},
        max_weight=1,
        ops={"du": du, "dt[1]": {}, "t": {"a": {"b": Fraction(1)}}},
    )


def test_decompose_rejects_bad_tables():
    with pytest.raises(NonNilpotentError):
        decompose_module(_two_state_table({"a": {"b": Fraction(1)}, "b": {"a": Fraction(1)}}))
    table = _two_state_table({"b": {"a": Fraction(1)}})
    del table.ops["dt[1]"]
    with pytest.raises(ValidationError) as info:
        decompose_module(table)
    assert info.value.error_code is ErrorCode.INVALID_ACTION_TABLE
