"""
环表达式的 pyparsing 文法, 供命令行 DSL 与环定义文件共用

    ring_expr := 带 + - * / ^ 和括号的多项式; 原子是整数或名字
    名字: 生成元名, 以及 C (基本类 1), K / a0, p0, psi, chi, eta
"""
from dataclasses import dataclass
from fractions import Fraction

import pyparsing as pp

from src.opcalc.exceptions import ParseError, ValidationError
from src.opcalc.ring.RingElem import RingElem
from src.opcalc.ring.RingSpec import RingSpec

pp.ParserElement.enable_packrat()


@dataclass(frozen=True)
class Name:
    text: str
    loc: int


INTEGER = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
IDENT = pp.Word(pp.alphas, pp.alphanums + "_")
NAME = IDENT.copy().set_parse_action(lambda s, loc, t: Name(t[0], loc))

RING_EXPR = pp.infix_notation(
    INTEGER | NAME,
    [
        (pp.Literal("^"), 2, pp.OpAssoc.RIGHT),
        (pp.Literal("-"), 1, pp.OpAssoc.RIGHT),
        (pp.one_of("* /"), 2, pp.OpAssoc.LEFT),
        (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT),
    ],
)


def resolve_name(ring: RingSpec, name: Name, source: str = "") -> RingElem:
    text = name.text
    if ring.has_generator(text):
        return ring.gen(text)
    if text == "C":
        return ring.one()
    if text in ("K", "a0"):
        return ring.a0
    if text == "p0":
        return ring.point_class
    if text == "psi":
        return ring.psi
    if text == "chi":
        return ring.theta_characteristic()
    if text == "eta":
        return ring.eta()
    raise ParseError(
        detail=f"unknown ring symbol '{text}'",
        line=pp.lineno(name.loc, source) if source else None,
        column=pp.col(name.loc, source) if source else None,
    )


def evaluate_ring_ast(node, ring: RingSpec, source: str = "") -> RingElem:
    if isinstance(node, int):
        return ring.scalar(node)
    if isinstance(node, Name):
        return resolve_name(ring, node, source)
    items = list(node)
    if len(items) == 1:
        return evaluate_ring_ast(items[0], ring, source)
    if len(items) == 2 and items[0] == "-":
        return -evaluate_ring_ast(items[1], ring, source)
    if items[1] == "^":
        # 右结合: a^b^c = a^(b^c)
        exponent = _constant_int(evaluate_ring_ast(items[-1], ring, source))
        for operand in reversed(items[2:-1:2]):
            exponent = _constant_int(evaluate_ring_ast(operand, ring, source) ** exponent)
        return evaluate_ring_ast(items[0], ring, source) ** exponent
    value = evaluate_ring_ast(items[0], ring, source)
    for op, operand in zip(items[1::2], items[2::2]):
        right = evaluate_ring_ast(operand, ring, source)
        if op == "+":
            value = value + right
        elif op == "-":
            value = value - right
        elif op == "*":
            value = value * right
        elif op == "/":
            divisor = right.constant()
            if not divisor:
                raise ParseError(detail="division by zero")
            if not ring.rational and (isinstance(divisor, Fraction) or any(c % divisor for c in value.terms.values())):
                raise ValidationError(detail=f"division by {divisor} needs rational mode", field="scalar_mode")
            value = value * (Fraction(1) / divisor)
    return value


def _constant_int(x: RingElem) -> int:
    value = x.constant()
    if isinstance(value, Fraction) or value < 0:
        raise ParseError(detail=f"exponent must be a nonnegative integer, got {value}")
    return int(value)


def parse_ring_expr(text: str, ring: RingSpec) -> RingElem:
    try:
        result = (RING_EXPR + pp.StringEnd()).parse_string(text, parse_all=True)
    except pp.ParseException as exc:
        raise ParseError(detail=f"syntax error: {exc.msg}", line=exc.lineno, column=exc.col)
    return evaluate_ring_ast(result[0], ring, text)
