import pytest

from src.opcalc.exceptions import ParseError, RingError, ValidationError
from src.opcalc.ring import make_curve_chow_symbolic, make_curve_cohomology, pairing
from src.opcalc.ring.checks import ring_suite, symplectic_pairing_check
from src.opcalc.ring.expr_parser import parse_ring_expr


def test_chow_section_relations(chow2):
    p0, K, psi = chow2.point_class, chow2.K, chow2.psi
    assert p0 * p0 == -(psi * p0)
    assert K * p0 == psi * p0
    assert p0 ** 3 == psi * psi * p0


def test_chow_pushforward_and_restriction(chow2):
    p0, K, psi = chow2.point_class, chow2.K, chow2.psi
    assert p0.pushforward() == chow2.one()
    assert K.pushforward() == chow2.scalar(2)
    assert (psi * p0).pushforward() == psi
    # unlisted fiber monomials push forward to 0
    assert (K * K).pushforward().is_zero()
    assert p0.restrict() == -psi
    assert K.restrict() == psi


def test_homogeneity(chow2):
    assert (chow2.K + chow2.psi).is_homogeneous()
    assert not (chow2.K + chow2.one()).is_homogeneous()


def test_chow_options():
    point = make_curve_chow_symbolic(3, over_point=True, canonical_split=True)
    assert point.psi.is_zero()
    assert point.K == point.point_class * 4
    truncated = make_curve_chow_symbolic(2, psi_truncation=2)
    assert (truncated.psi ** 2).is_zero()
    assert not truncated.psi.is_zero()
    with pytest.raises(ValidationError):
        make_curve_chow_symbolic(2, canonical_split=True)


def test_cohomology_signs(cohomology2):
    a1, b1, pt = cohomology2.gen("alpha1"), cohomology2.gen("beta1"), cohomology2.gen("pt")
    assert a1 * b1 == pt
    assert b1 * a1 == -pt
    assert (a1 * a1).is_zero()
    assert (cohomology2.gen("alpha1") * cohomology2.gen("beta2")).is_zero()
    assert (pt * a1).is_zero()
    assert pairing(a1, b1) == cohomology2.one()
    assert pairing(b1, a1) == -cohomology2.one()


def test_theta_characteristic_and_eta(cohomology2, chow2, chow2_rational):
    assert cohomology2.theta_characteristic() == cohomology2.gen("pt")
    with pytest.raises(RingError):
        chow2.eta()
    expected = parse_ring_expr("1/2*K + p0 + 1/2*psi", chow2_rational)
    assert chow2_rational.eta() == expected


def test_ring_expression_parser(chow2):
    value = parse_ring_expr("p0^2 + 2*K", chow2)
    assert value == chow2.K * 2 - chow2.psi * chow2.point_class
    assert parse_ring_expr("a0 - K", chow2).is_zero()
    assert parse_ring_expr("C", chow2) == chow2.one()


def test_ring_expression_errors(chow2):
    with pytest.raises(ParseError):
        parse_ring_expr("p0 +", chow2)
    with pytest.raises(ParseError) as info:
        parse_ring_expr("p0 + zeta", chow2)
    assert info.value.context["column"] == 6
    with pytest.raises(ValidationError):
        parse_ring_expr("p0/2", chow2)


def test_fingerprints_identify_rings():
    assert make_curve_chow_symbolic(2).fingerprint() == make_curve_chow_symbolic(2).fingerprint()
    assert make_curve_chow_symbolic(2).fingerprint() != make_curve_chow_symbolic(3).fingerprint()
    assert make_curve_cohomology(2).fingerprint() != make_curve_chow_symbolic(2).fingerprint()


def test_fiber_basis_is_reduced(chow2, cohomology2):
    names = [chow2.format_monomial(m) for m in chow2.fiber_basis(2)]
    assert names == ["1", "K", "p0", "K^2"]
    assert len(cohomology2.fiber_basis(2)) == 1 + 4 + 1


@pytest.mark.parametrize("fixture", ["cohomology2", "chow2", "chow2_truncated"])
def test_ring_suite_passes(fixture, request):
    ring = request.getfixturevalue(fixture)
    for result in ring_suite(ring):
        assert result.passed, result.failures[:3]


def test_symplectic_pairing_genus_three():
    assert symplectic_pairing_check(make_curve_cohomology(3)).passed
