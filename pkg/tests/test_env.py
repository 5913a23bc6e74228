import pytest

from src.opcalc.env import EnvElem, FockGenerator, PGen, Tower, commutator, rational_heisenberg_embed
from src.opcalc.env.checks import (
    confluence_check, divided_commute_check, divided_sweep, genus_one_example_check,
    heisenberg_contract_check, lefschetz_relations_check, pbw_identity_check, pbw_sweep,
    relation_iii_d1_check, row_column_commute_check,
)
from src.opcalc.exceptions import RingError, ValidationError
from src.opcalc.liealg import LieElem, bracket


def lie(ring, m, k, a=None):
    return LieElem.P(ring, m, k, ring.one() if a is None else a)


def test_row_generators_become_towers(chow2):
    x = EnvElem.from_lie(lie(chow2, 1, 0), "U1")
    assert list(x.terms) == [(Tower(1, 1, "row"),)]
    assert str(x) == "Tr(1,1)"
    # columns are plain letters in U1
    y = EnvElem.from_lie(lie(chow2, 0, 1), "U1")
    assert isinstance(next(iter(y.terms))[0], PGen)


def test_tower_products(chow2):
    t1 = EnvElem.tower(chow2, "U1", 1, 1, "row")
    t2 = EnvElem.tower(chow2, "U1", 2, 1, "row")
    assert t1 * t1 == EnvElem.tower(chow2, "U1", 1, 2, "row") * 2
    assert str(t2 * t1) == "Tr(1,1)*Tr(2,1)"
    assert EnvElem.tower(chow2, "U1", 1, 0, "row") == EnvElem.one(chow2, "U1")


def test_moving_a_tower_left_produces_the_bracket(chow2):
    p01 = EnvElem.from_lie(lie(chow2, 0, 1), "U1")
    tower = EnvElem.tower(chow2, "U1", 1, 1, "row")
    center = EnvElem.from_lie(lie(chow2, 0, 0), "U1")
    assert p01 * tower == tower * p01 + center


def test_odd_letters(cohomology2):
    a1, b1 = cohomology2.gen("alpha1"), cohomology2.gen("beta1")
    x = EnvElem.from_lie(lie(cohomology2, 1, 0, a1), "U2")
    y = EnvElem.from_lie(lie(cohomology2, 0, 1, b1), "U2")
    assert (x * x).is_zero()
    expected = EnvElem.from_lie(bracket(lie(cohomology2, 1, 0, a1), lie(cohomology2, 0, 1, b1)), "U2")
    assert commutator(x, y) == expected


def test_free_words_are_kept(chow2):
    unit = (0, 0, 0)
    word = (PGen(2, 0, unit), PGen(0, 1, unit))
    raw = EnvElem(chow2, "free", {word: chow2.one()})
    assert raw.concat(raw).terms == {word + word: chow2.one()}
    assert (raw * raw).terms == {word + word: chow2.one()}
    assert raw.with_algebra("U1") != raw


def test_letter_validation(chow2):
    with pytest.raises(ValidationError):
        EnvElem(chow2, "U1", {(Tower(1, 1, "col"),): chow2.one()})
    with pytest.raises(ValidationError):
        EnvElem(chow2, "heis", {(Tower(2, 1, "row"),): chow2.one()})
    with pytest.raises(ValidationError):
        EnvElem.tower(chow2, "U1", 0, 1, "row")
    with pytest.raises(ValidationError):
        EnvElem.one(chow2, "U1") + EnvElem.one(chow2, "U2")


def test_divided_commutation_routes_agree(chow2_truncated, cohomology2):
    p0 = chow2_truncated.point_class
    assert divided_commute_check(chow2_truncated, 1, 2, p0, 2, 2, "row").passed
    assert divided_commute_check(chow2_truncated, 2, 1, p0, 1, 2, "col").passed
    assert divided_sweep(cohomology2, max_index=1, max_power=2, side="row", threads=1).passed
    assert relation_iii_d1_check(cohomology2, max_index=1, side="col").passed


def test_genus_one_closed_form(cohomology1, cohomology2):
    assert genus_one_example_check(cohomology1, max_index=2, side="row").passed
    assert genus_one_example_check(cohomology1, max_index=2, side="col").passed
    with pytest.raises(ValidationError):
        genus_one_example_check(cohomology2)


def test_pbw_identities(cohomology2):
    assert pbw_sweep(cohomology2, max_index=1, max_power=2).passed
    assert pbw_sweep(cohomology2, max_index=1, max_power=2, algebra="U2").passed
    odd = lie(cohomology2, 1, 0, cohomology2.gen("alpha2"))
    with pytest.raises(ValidationError):
        pbw_identity_check(odd, odd, 1)


def test_random_words_are_confluent(chow2_truncated):
    for algebra in ("U1", "U2", "heis"):
        result = confluence_check(chow2_truncated, trials=40, max_length=3, max_index=2, seed=7,
                                  algebra=algebra, basis_degree=1, threads=1)
        assert result.passed
        assert result.checked == 80


@pytest.mark.parametrize("variant", ["standard", "collino"])
def test_heisenberg_and_lefschetz(chow2, variant):
    assert heisenberg_contract_check(chow2, variant, max_power=3).passed
    assert lefschetz_relations_check(chow2, variant).passed


def test_rational_embedding_needs_rational_ring(chow2, chow2_rational):
    with pytest.raises(RingError):
        rational_heisenberg_embed(chow2, FockGenerator("u"), chow2.point_class, chow2.point_class)
    alpha, beta = chow2_rational.point_class, chow2_rational.K
    result = heisenberg_contract_check(chow2_rational, alpha=alpha, beta=beta)
    assert result.identity == "heisenberg-rational"
    assert result.passed


def test_fock_generator_validation():
    with pytest.raises(ValidationError):
        FockGenerator("t", 2)
    with pytest.raises(ValidationError):
        FockGenerator("w")


def test_row_and_column_towers_commute(chow2):
    assert row_column_commute_check(chow2, 1, 2, max_weight=4).passed
