import pytest

from src.opcalc.cli.dsl import DslEvaluator, detect_algebra, parse_expr, type_name
from src.opcalc.env import EnvElem
from src.opcalc.exceptions import DslTypeError, ParseError, ValidationError
from src.opcalc.liealg import LieElem


def test_bracket_of_lie_generators(chow2):
    value = parse_expr("[P(0,1;1), P(1,0;1)]", chow2)
    assert type_name(value) == "LieElem"
    assert value == LieElem.P(chow2, 0, 0, chow2.one())
    assert str(value) == "P(0,0; 1)"


def test_ring_argument_is_reduced(chow2):
    value = parse_expr("P(1,0; p0*p0)", chow2)
    assert value == LieElem.P(chow2, 1, 0, -(chow2.psi * chow2.point_class))


def test_scalars_and_names(chow2):
    assert parse_expr("a0 - K", chow2).is_zero()
    assert parse_expr("4/2", chow2) == chow2.scalar(2)
    assert str(parse_expr("Xt(2,1; p0)", chow2)) == "Xt(2,1; p0)"


def test_operator_products_use_the_detected_algebra(chow2):
    assert detect_algebra("P(1,0;1)") == "U1"
    assert detect_algebra("Tc(1,2) * P(0,1;1)") == "U2"
    assert detect_algebra("[Tr(1,1), Tc(1,1)]") == "heis"
    value = parse_expr("[P(0,1;1), Tr(1,1)]", chow2)
    assert isinstance(value, EnvElem)
    assert value == EnvElem.from_lie(LieElem.P(chow2, 0, 0, chow2.one()), "U1")


def test_tautological_polynomials(chow2):
    evaluator = DslEvaluator(chow2)
    assert evaluator.parse("u*u") == evaluator.parse("2*u^[2]")
    assert str(evaluator.parse("x(1;1)^[2]")) == "x(1; 1)^[2]"
    assert evaluator.parse("t^2") == evaluator.taut.power(evaluator.taut.t(), 2)
    with pytest.raises(DslTypeError):
        evaluator.parse("t^[2]")


def test_type_errors(chow2):
    with pytest.raises(DslTypeError) as info:
        parse_expr("P(1,0;1) + x(1;1)", chow2)
    assert info.value.context["actual"] == "TautPoly"
    with pytest.raises(DslTypeError):
        parse_expr("P(1,0;1) / P(0,1;1)", chow2)


def test_scalar_restrictions(chow2, chow2_rational):
    with pytest.raises(ValidationError):
        parse_expr("p0 * P(1,0;1)", chow2)
    with pytest.raises(ValidationError):
        parse_expr("P(1,0;1) / 2", chow2)
    with pytest.raises(ValidationError):
        parse_expr("P(1,0;1) / 0", chow2_rational)
    half = parse_expr("P(1,0;1) / 2", chow2_rational)
    assert half.scale(2) == parse_expr("P(1,0;1)", chow2_rational)


def test_syntax_errors(chow2):
    with pytest.raises(ParseError) as info:
        parse_expr("[P(1,1;1)", chow2)
    assert info.value.context["line"] == 1
    with pytest.raises(ParseError):
        parse_expr("P(1,0;1) +", chow2)
    with pytest.raises(ValidationError):
        parse_expr("P(-1,0;1)", chow2)


@pytest.mark.parametrize("text", [
    "2*K - p0",
    "P(1,0; p0) - 3*P(0,2; K)",
    "L(1,0;1) - 2*L(0,1;p0)",
    "Tr(1,1)*P(1,0;1) - 2*P(0,1;K)",
    "Tc(1,1)*P(0,1;1) + P(0,0;p0)",
    "x(1;1)^[2]*x(2;p0)",
    "x(1;p0)^3 - 2*x(1;1)*x(2;K)",
    "x(1;K)^2 - 2*x(1;1)*x(2;K) + u^[3]",
    "Xt(2,1; p0)*X(1,0; 1) - 2*Xt(1,1; K)",
])
def test_printed_values_parse_back(chow2, text):
    value = parse_expr(text, chow2)
    again = parse_expr(str(value), chow2)
    assert type_name(again) == type_name(value)
    assert again == value
    assert str(again) == str(value)
