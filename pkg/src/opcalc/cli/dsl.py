"""
命令行表达式 DSL

    expr    := 带 + - * / ^e ^[d] 的中缀表达式, [A, B] 为括号积
    原子    := P(m,k; r) | L(m,k; r) | T(k,m; r) | Xt(n,k; r) | X(n,k; r)
             | Tr(n,d) | Tc(n,d) | x(i; r) | t | u | 整数 | 环中的名字 | ( expr )
    r       := 环表达式 (ring.expr_parser.RING_EXPR)

值的类型: RingElem (标量), LieElem, EnvElem, TautPoly, XElem.
类型不匹配时抛 DslTypeError, 语法错误抛带行列号的 ParseError.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

import pyparsing as pp

from src.opcalc.env import EnvElem, commutator
from src.opcalc.env.words import Algebra
from src.opcalc.exceptions import DslTypeError, ParseError, ValidationError
from src.opcalc.jaccalc.t_operators import T_from_P
from src.opcalc.jaccalc.xcalc import XElem, to_X_basis, to_Xt_basis, x_bracket
from src.opcalc.liealg import L, LieElem, bracket, bracket_L
from src.opcalc.models.taut import TautAlgebra, TautPoly
from src.opcalc.ring import RingElem, RingSpec
from src.opcalc.ring.expr_parser import RING_EXPR, Name, evaluate_ring_ast, resolve_name

logger = logging.getLogger(__name__)

Value = Union[RingElem, LieElem, EnvElem, TautPoly, XElem]

_TYPE_NAMES = {
    RingElem: "scalar",
    LieElem: "LieElem",
    EnvElem: "EnvElem",
    TautPoly: "TautPoly",
    XElem: "XElem",
}


@dataclass(frozen=True)
class Call:
    head: str
    indices: Tuple[int, ...]
    argument: object
    loc: int


@dataclass(frozen=True)
class BracketNode:
    left: object
    right: object
    loc: int


@dataclass(frozen=True)
class Number:
    value: int


# ---------------------------------------------------------------------- 文法

_INDEX = pp.Regex(r"-?\d+").set_parse_action(lambda t: int(t[0]))
_LPAR, _RPAR, _COMMA, _SEMI = map(pp.Suppress, "(),;")
_RING_ARG = pp.Group(RING_EXPR)


def _call(head: str, arity: int, with_ring: bool) -> pp.ParserElement:
    indices = _INDEX
    for _ in range(arity - 1):
        indices = indices + _COMMA + _INDEX
    body = indices + (_SEMI + _RING_ARG if with_ring else pp.Empty())
    element = pp.Keyword(head) + _LPAR + pp.Group(body) + _RPAR

    def action(s, loc, toks):
        items = list(toks[1])
        argument = items[arity][0] if with_ring else None
        return Call(head, tuple(items[:arity]), argument, loc)

    return element.set_parse_action(action)


EXPR = pp.Forward()

_CALL = pp.MatchFirst([
    _call("Xt", 2, True),
    _call("X", 2, True),
    _call("P", 2, True),
    _call("L", 2, True),
    _call("T", 2, True),
    _call("Tr", 2, False),
    _call("Tc", 2, False),
    _call("x", 1, True),
])
_BRACKET = (pp.Suppress("[") + EXPR + _COMMA + EXPR + pp.Suppress("]")).set_parse_action(
    lambda s, loc, t: BracketNode(t[0], t[1], loc)
)
_NUMBER = pp.Word(pp.nums).set_parse_action(lambda t: Number(int(t[0])))
_NAME = pp.Word(pp.alphas, pp.alphanums + "_").set_parse_action(lambda s, loc, t: Name(t[0], loc))
_POWER = pp.Regex(r"\^\s*(\[\s*\d+\s*\]|\d+)")

_OPERAND = _BRACKET | _CALL | _NUMBER | _NAME

EXPR <<= pp.infix_notation(
    _OPERAND,
    [
        (_POWER, 1, pp.OpAssoc.LEFT),
        (pp.Literal("-"), 1, pp.OpAssoc.RIGHT),
        (pp.one_of("* /"), 2, pp.OpAssoc.LEFT),
        (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT),
    ],
)

_DSL = EXPR + pp.StringEnd()


def detect_algebra(text: str) -> Algebra:
    """出现行塔和列塔时用 heis, 只有列塔时用 U2, 否则 U1"""
    rows = re.search(r"\bTr\s*\(", text) is not None
    cols = re.search(r"\bTc\s*\(", text) is not None
    if rows and cols:
        return "heis"
    return "U2" if cols else "U1"


# ---------------------------------------------------------------------- 求值

def type_name(value: Value) -> str:
    return _TYPE_NAMES.get(type(value), type(value).__name__)


class DslEvaluator:
    """在固定的环与包络代数中求值语法树"""

    def __init__(self, ring: RingSpec, algebra: Algebra = "U1"):
        self.ring = ring
        self.algebra = algebra
        self.source = ""
        self.taut = TautAlgebra(ring)

    def parse(self, text: str) -> Value:
        tree = parse_tree(text)
        self.source = text
        value = self.evaluate(tree)
        logger.debug(f"parsed '{text}' as {type_name(value)}")
        return value

    # ------------------------------------------------------------------ 原子

    def evaluate(self, node) -> Value:
        if isinstance(node, Number):
            return self.ring.scalar(node.value)
        if isinstance(node, Name):
            return self._name(node)
        if isinstance(node, Call):
            return self._call(node)
        if isinstance(node, BracketNode):
            return self.bracket(self.evaluate(node.left), self.evaluate(node.right))
        items = list(node)
        if len(items) == 1:
            return self.evaluate(items[0])
        if len(items) == 2 and items[0] == "-":
            return self.negate(self.evaluate(items[1]))
        if isinstance(items[1], str) and items[1].startswith("^"):
            value = self.evaluate(items[0])
            for op in items[1:]:
                value = self.power(value, op)
            return value
        value = self.evaluate(items[0])
        for op, operand in zip(items[1::2], items[2::2]):
            right = self.evaluate(operand)
            if op == "+":
                value = self.add(value, right)
            elif op == "-":
                value = self.add(value, self.negate(right))
            elif op == "*":
                value = self.multiply(value, right)
            else:
                value = self.divide(value, right)
        return value

    def _name(self, node: Name) -> Value:
        if not self.ring.has_generator(node.text):
            if node.text == "t":
                return self.taut.t()
            if node.text == "u":
                return self.taut.u()
        return resolve_name(self.ring, node, self.source)

    def _ring_arg(self, node) -> RingElem:
        return evaluate_ring_ast(node, self.ring, self.source)

    def _call(self, node: Call) -> Value:
        ring = self.ring
        head = node.head
        if head in ("Tr", "Tc"):
            n, d = node.indices
            return EnvElem.tower(ring, self.algebra, n, d, "row" if head == "Tr" else "col")
        a = self._ring_arg(node.argument)
        if head == "x":
            return self.taut.x(node.indices[0], a)
        first, second = node.indices
        if first < 0 or second < 0:
            raise ValidationError(detail=f"{head} needs nonnegative indices, got {node.indices}", field="index")
        if head == "P":
            return LieElem.P(ring, first, second, a)
        if head == "L":
            return L(ring, first, second, a)
        if head == "T":
            return T_from_P(ring, first, second, a).with_algebra(self.algebra)
        return XElem.symbol(ring, head, first, second, a)

    # ------------------------------------------------------------------ 类型提升

    def _env(self, value: Value) -> EnvElem:
        if isinstance(value, EnvElem):
            return value if value.algebra == self.algebra else value.with_algebra(self.algebra)
        if isinstance(value, LieElem):
            return EnvElem.from_lie(value, self.algebra)
        if isinstance(value, RingElem):
            return EnvElem.one(self.ring, self.algebra).scale(value)
        raise DslTypeError(detail=f"{type_name(value)} cannot be used as an operator",
                           expected="EnvElem", actual=type_name(value))

    def _mismatch(self, op: str, left: Value, right: Value) -> DslTypeError:
        return DslTypeError(
            detail=f"cannot apply '{op}' to {type_name(left)} and {type_name(right)}",
            expected=type_name(left),
            actual=type_name(right),
        )

    @staticmethod
    def _is_operator(value: Value) -> bool:
        return isinstance(value, (LieElem, EnvElem))

    # ------------------------------------------------------------------ 运算

    def negate(self, value: Value) -> Value:
        return -value

    def add(self, left: Value, right: Value) -> Value:
        if type(left) is type(right):
            if isinstance(left, LieElem) and left.basis != right.basis:
                raise self._mismatch("+", left, right)
            return left + right
        if self._is_operator(left) and self._is_operator(right):
            return self._env(left) + self._env(right)
        if isinstance(left, RingElem) or isinstance(right, RingElem):
            scalar, other = (left, right) if isinstance(left, RingElem) else (right, left)
            if isinstance(other, EnvElem):
                return other + self._env(scalar)
            if isinstance(other, TautPoly):
                return other + self.taut.scalar(scalar)
            if isinstance(other, XElem):
                return other + XElem.scalar(self.ring, scalar)
        raise self._mismatch("+", left, right)

    def multiply(self, left: Value, right: Value) -> Value:
        if isinstance(left, RingElem) and isinstance(right, RingElem):
            return left * right
        for side in (left, right):
            if isinstance(side, RingElem) and not side.is_base():
                raise ValidationError(detail=f"scalar {side} must lie in the base ring", field="scalar")
        if isinstance(left, RingElem):
            return right.scale(left)
        if isinstance(right, RingElem):
            return left.scale(right)
        if self._is_operator(left) and self._is_operator(right):
            return self._env(left) * self._env(right)
        if type(left) is type(right) and isinstance(left, (TautPoly, XElem)):
            return left * right
        raise self._mismatch("*", left, right)

    def divide(self, left: Value, right: Value) -> Value:
        if not isinstance(right, RingElem) or set(right.terms) - {self.ring.unit_monomial()}:
            raise DslTypeError(detail="only division by a nonzero number is supported",
                               expected="number", actual=type_name(right))
        divisor = right.constant()
        if not divisor:
            raise ValidationError(detail="division by zero", field="divisor")
        inverse = Fraction(1) / Fraction(divisor)
        if not self.ring.rational and inverse.denominator != 1:
            exact = isinstance(left, RingElem) and all(Fraction(c) % Fraction(divisor) == 0 for c in left.terms.values())
            if not exact:
                raise ValidationError(detail=f"division by {divisor} needs rational mode", field="scalar_mode")
            return self.ring.element({mono: int(Fraction(c) / Fraction(divisor)) for mono, c in left.terms.items()})
        factor = int(inverse) if inverse.denominator == 1 else inverse
        if isinstance(left, RingElem):
            return left * factor
        return left.scale(factor)

    def power(self, value: Value, op: str) -> Value:
        body = op[1:].strip()
        if body.startswith("["):
            d = int(body.strip("[] "))
            if isinstance(value, TautPoly):
                return self._divided_power(value, d)
            raise DslTypeError(detail="divided powers apply to x(n; 1) only", expected="TautPoly",
                               actual=type_name(value))
        e = int(body)
        if isinstance(value, TautPoly):
            return self.taut.power(value, e)
        if isinstance(value, XElem):
            result = XElem.scalar(self.ring, 1)
            for _ in range(e):
                result = result * value
            return result
        if isinstance(value, LieElem):
            return self._env(value) ** e
        return value ** e

    def _divided_power(self, value: TautPoly, d: int) -> TautPoly:
        terms = list(value)
        if len(terms) == 1:
            mono, coeff = terms[0]
            if len(mono) == 1 and coeff == 1:
                (symbol, e), = mono
                if e == 1 and self.taut.is_divided(symbol):
                    return self.taut.divided(symbol[0], d)
        raise DslTypeError(detail=f"divided powers apply to x(n; 1) only, got {value}",
                           expected="x(n; 1)", actual=str(value))

    def bracket(self, left: Value, right: Value) -> Value:
        if isinstance(left, LieElem) and isinstance(right, LieElem):
            if left.basis == "L" and right.basis == "L":
                return bracket_L(left, right)
            if left.basis == right.basis:
                return bracket(left, right)
        if self._is_operator(left) and self._is_operator(right):
            return commutator(self._env(left), self._env(right))
        if isinstance(left, XElem) and isinstance(right, XElem):
            if _has_kind(left, "X") or _has_kind(right, "X"):
                return to_X_basis(x_bracket(to_Xt_basis(left), to_Xt_basis(right)))
            return x_bracket(left, right)
        raise self._mismatch("[,]", left, right)


def _has_kind(value: XElem, kind: str) -> bool:
    return any(symbol[0] == kind for word, _ in value for symbol in word)


# ---------------------------------------------------------------------- 入口

def parse_tree(text: str):
    try:
        return _DSL.parse_string(text, parse_all=True)[0]
    except pp.ParseException as exc:
        at_end = exc.loc >= len(text.rstrip())
        where = "end of input" if at_end else f"'{text[exc.loc:exc.loc + 10]}'"
        raise ParseError(detail=f"syntax error at {where}: {exc.msg}", line=exc.lineno, column=exc.col)


def parse_expr(text: str, ring: RingSpec, algebra: Optional[Algebra] = None) -> Value:
    """
    解析并求值一个 DSL 表达式

    Args:
        text: 表达式文本
        ring: 系数环
        algebra: 包络代数; 缺省时由文本中出现的塔决定

    Returns:
        RingElem | LieElem | EnvElem | TautPoly | XElem
    """
    return DslEvaluator(ring, algebra or detect_algebra(text)).parse(text)
