from dataclasses import replace

import pytest

from src.opcalc.env import EnvElem
from src.opcalc.exceptions import RingError, ValidationError
from src.opcalc.jaccalc import (
    T_from_P, TRealizer, XElem, ad_ladder_check, fourier_involution_check, gamma_ek,
    gross_schoen_general_check, gs_identity_check, involution, relation_terms, relations_T_check, sl2_triple,
    sl2_verify, tau_closed_form, tau_pullback, tau_pullback_check, tau_vanishing, to_X_basis, to_Xt_basis,
    x_bracket, x_ladder_check, x_rel_equiv_check, x_tilde,
)
from src.opcalc.jaccalc.pullback import gs_rhs, pullback_algebra
from src.opcalc.jaccalc.t_operators import M, M2
from src.opcalc.liealg import LieElem
from src.opcalc.models import TautAlgebra, TautPoly, realize


def test_t_operator_of_order_zero_is_a_row_operator(chow2):
    p0 = chow2.point_class
    assert T_from_P(chow2, 0, 2, p0) == EnvElem.from_lie(LieElem.P(chow2, 2, 0, p0), "free")
    with pytest.raises(ValidationError):
        T_from_P(chow2, -1, 0, p0)


def test_t_relations_hold_exactly(chow2_truncated):
    result = relations_T_check(chow2_truncated, max_k_total=1, max_m=1, max_weight=2, threads=1)
    assert result.passed
    assert result.checked > 0
    assert result.data["k_pairs"] == [[0, 0], [0, 1], [1, 0]]


def test_single_t_terms_carry_the_missing_points(chow2_truncated):
    ring = chow2_truncated
    _, rhs = relation_terms(ring, 1, 1, ring.point_class, ring.one())
    single = [term for term in rhs if len(term.ops) == 1 and term.ops[0].m in (M, M2)]
    assert single
    assert all(term.points == (M2 if term.ops[0].m == M else M) for term in single)

    algebra = TautAlgebra(ring, section_relation=True)
    realizer = TRealizer(algebra)
    samples = [TautPoly(algebra, {mono: ring.one()})
               for mono in algebra.monomial_basis(2, ring.fiber_basis(1))]
    dropped = 0
    for k, k2 in [(0, 1), (1, 0), (1, 1)]:
        for a in (ring.one(), ring.point_class, ring.K):
            for a2 in (ring.one(), ring.point_class, ring.K):
                lhs_terms, rhs_terms = relation_terms(ring, k, k2, a, a2)
                without_points = [replace(term, points=0) for term in rhs_terms]
                for m in range(2):
                    for m2 in range(2):
                        for f in samples:
                            lhs = realizer.evaluate(lhs_terms, m, m2, f)
                            assert lhs == realizer.evaluate(rhs_terms, m, m2, f)
                            if lhs != realizer.evaluate(without_points, m, m2, f):
                                dropped += 1
    assert dropped > 0


def test_x_symbols_vanish_on_construction(chow2):
    p0, one = chow2.point_class, chow2.one()
    assert XElem.symbol(chow2, "Xt", 0, 0, p0) == XElem.scalar(chow2, 1)
    assert x_tilde(chow2, 1, 0, one).is_zero()
    assert x_tilde(chow2, -1, 2, p0).is_zero()
    assert x_tilde(chow2, 5, 0, p0, bound=4).is_zero()
    assert not x_tilde(chow2, 4, 0, p0, bound=4).is_zero()
    assert str(x_tilde(chow2, 2, 1, p0)) == "Xt(2,1; p0)"


def test_x_words_are_inert(chow2):
    a, b = x_tilde(chow2, 2, 0, chow2.one()), x_tilde(chow2, 0, 2, chow2.one())
    assert a * b != b * a
    with pytest.raises(ValidationError):
        x_bracket(a * b, a)


def test_x_relation_matches_t_relation(chow2):
    assert x_rel_equiv_check(chow2, max_k=1, max_n=2, threads=1).passed


def test_sl2_triple(chow2, chow2_rational):
    with pytest.raises(RingError):
        sl2_triple(chow2)
    triple = sl2_triple(chow2_rational)
    e, f, h = triple["e"], triple["f"], triple["h"]
    assert x_bracket(e, f) == h
    assert x_bracket(h, e) == e.scale(2)
    assert sl2_verify(chow2_rational, max_index=2).passed


def test_x_basis_and_involution(chow2_rational):
    p0 = chow2_rational.point_class
    x = x_tilde(chow2_rational, 2, 2, chow2_rational.one())
    assert to_Xt_basis(to_X_basis(x)) == x
    y = XElem.symbol(chow2_rational, "X", 2, 1, p0)
    assert involution(involution(y)) == y.scale(-1)
    assert involution(y) == XElem.symbol(chow2_rational, "X", 1, 2, p0).scale(-1)


def test_ladders_and_fourier(chow2_rational):
    assert x_ladder_check(chow2_rational, max_total=3).passed
    assert fourier_involution_check(chow2_rational, max_total=3).passed
    assert ad_ladder_check(chow2_rational, max_total=3).passed


@pytest.mark.slow
def test_tau_pullback_routes_agree(chow2_truncated):
    pullback = tau_pullback(chow2_truncated, 2)
    assert pullback.closed_form == pullback.operator_route
    algebra = pullback.closed_form.algebra
    op = realize(algebra, T_from_P(chow2_truncated, 2, 0, chow2_truncated.one()))
    assert pullback.closed_form.evaluate(9) == op(algebra.u(9))
    payload = pullback.to_dict()
    assert payload["k"] == 2
    assert set(payload) == {"k", "closed_form", "operator_route", "vanishes_by_dimension", "value"}


def test_tau_pullback_small_cases(chow2, chow2_split):
    assert not tau_closed_form(chow2, 0)
    assert tau_pullback_check(chow2_split, max_k=3).passed
    assert not tau_vanishing(chow2, 10)
    assert tau_vanishing(chow2_split, 4)
    assert not tau_vanishing(chow2_split, 3)
    assert not tau_pullback(chow2_split, 4).value


def test_gamma_ek(chow2_split):
    algebra = pullback_algebra(chow2_split)
    one = chow2_split.one()
    assert gamma_ek(algebra, 2) == algebra.x(2, one) - algebra.u() * algebra.t() * 2


def test_modified_diagonal_identities(chow2, chow2_split, chow2_trivial):
    assert gs_identity_check(chow2_split, max_k=3).passed
    assert gross_schoen_general_check(chow2_trivial, max_k=3).passed
    with pytest.raises(RingError):
        gs_identity_check(chow2)
    with pytest.raises(RingError):
        gs_identity_check(chow2_trivial)
    with pytest.raises(ValidationError):
        gs_rhs(chow2_split, 1)


def test_optional_index_bound(chow2):
    from src.opcalc.jaccalc.xcalc import x_bound
    p0 = chow2.point_class
    bound = x_bound(chow2, True)
    assert bound == 4
    assert x_bound(chow2, False) is None
    assert x_tilde(chow2, 4, 1, p0, bound=bound).is_zero()
    assert not x_tilde(chow2, 3, 1, p0, bound=bound).is_zero()
    assert not x_tilde(chow2, 4, 1, p0).is_zero()
