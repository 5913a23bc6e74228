"""
重言式多项式模型

符号 x_i(b), i >= 1, b 为纤维单项式, 表示 Delta_{i*}(b); x_0(c) 不是符号而是标量 pi_*(c).
乘法是自由超交换乘法 (Pontryagin 乘积), 奇符号的平方为 0.
只有 x_n(1) 带除幂 (delta_n^[d]), 其余符号 (包括 t = x_1(p0)) 是普通变量.
可选的截面关系把 x_M(p0) (M >= 2) 换成 t^M.
"""
import logging
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union
from fractions import Fraction

from src.opcalc.combinat import binomial
from src.opcalc.exceptions import RingMismatchError, ValidationError
from src.opcalc.ring import Monomial, RingElem, RingSpec, format_ring_elem
from src.opcalc.ring.RingElem import needs_parentheses

logger = logging.getLogger(__name__)

Symbol = Tuple[int, Monomial]
TautMonomial = Tuple[Tuple[Symbol, int], ...]


class TautAlgebra:
    """一个环上的重言式多项式代数; section_relation 打开时使用 x_M(p0) = t^M"""

    def __init__(self, ring: RingSpec, section_relation: bool = False):
        self.ring = ring
        self.section_relation = section_relation
        self._unit = ring.unit_monomial()
        self._point: Optional[Monomial] = ring.point_class_monomial() if section_relation else None
        self._key: Optional[Tuple[str, bool]] = None

    def key(self) -> Tuple[str, bool]:
        """同一环 (按指纹) 与同一截面设置的代数视为相等"""
        if self._key is None:
            self._key = (self.ring.fingerprint(), self.section_relation)
        return self._key

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, TautAlgebra):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    # ------------------------------------------------------------------ 符号

    def is_divided(self, symbol: Symbol) -> bool:
        return symbol[1] == self._unit

    def symbol_parity(self, symbol: Symbol) -> int:
        return self.ring.parity(symbol[1])

    def symbol_codim(self, symbol: Symbol) -> int:
        i, mono = symbol
        return self.ring.degree(mono) + self.ring.a0_degree * (i - 1)

    def format_symbol(self, symbol: Symbol) -> str:
        return f"x({symbol[0]}; {self.ring.format_monomial(symbol[1])})"

    # ------------------------------------------------------------------ 单项式运算

    def mono_mul(self, left: TautMonomial, right: TautMonomial) -> Optional[Tuple[int, TautMonomial]]:
        """left*right = coeff * merged; 奇符号重复时返回 None"""
        if not left:
            return 1, right
        if not right:
            return 1, left
        sign = 1
        for symbol, e in right:
            if e % 2 and self.symbol_parity(symbol):
                passed = sum(le for s, le in left if s > symbol and self.symbol_parity(s))
                if passed % 2:
                    sign = -sign
        merged: Dict[Symbol, int] = dict(left)
        coeff = sign
        for symbol, e in right:
            if symbol in merged:
                if self.symbol_parity(symbol):
                    return None
                if self.is_divided(symbol):
                    coeff *= binomial(merged[symbol] + e, e)
                merged[symbol] += e
            else:
                merged[symbol] = e
        return coeff, tuple(sorted(merged.items()))

    def derivative_mono(self, mono: TautMonomial, symbol: Symbol) -> Optional[Tuple[int, TautMonomial]]:
        """左导数: 奇符号越过前面的奇因子时带符号; x_n(1)^[d] -> x_n(1)^[d-1]"""
        for position, (s, e) in enumerate(mono):
            if s == symbol:
                sign = -1 if self.symbol_parity(symbol) and sign_before(self, mono, position) % 2 else 1
                coeff = sign if self.is_divided(symbol) else sign * e
                rest = list(mono)
                if e == 1:
                    del rest[position]
                else:
                    rest[position] = (s, e - 1)
                return coeff, tuple(rest)
        return None

    def mono_weight(self, mono: TautMonomial) -> int:
        return sum(symbol[0] * e for symbol, e in mono)

    def mono_codim(self, mono: TautMonomial) -> int:
        return sum(self.symbol_codim(symbol) * e for symbol, e in mono)

    # ------------------------------------------------------------------ 元素

    def poly(self, terms: Dict[TautMonomial, RingElem]) -> 'TautPoly':
        return TautPoly(self, terms)

    def zero(self) -> 'TautPoly':
        return TautPoly(self, {})

    def one(self) -> 'TautPoly':
        return TautPoly(self, {(): self.ring.one()})

    def scalar(self, value: Union[int, Fraction, RingElem]) -> 'TautPoly':
        if not isinstance(value, RingElem):
            value = self.ring.scalar(value)
        if not value.is_base():
            raise ValidationError(detail=f"{value} is not a base scalar", field="scalar")
        return TautPoly(self, {(): value})

    def x(self, i: int, c: RingElem) -> 'TautPoly':
        """x_i(c), 按纤维分量线性展开; i = 0 时为 pi_*(c)"""
        if c.ring is not self.ring:
            raise RingMismatchError(left=self.ring.name, right=c.ring.name)
        if i < 0:
            raise ValidationError(detail=f"symbol index must be nonnegative, got {i}", field="index")
        if i == 0:
            return self.scalar(c.pushforward())
        result: Dict[TautMonomial, RingElem] = {}
        for fiber, base in c.fiber_components().items():
            if self.section_relation and fiber == self._point and i >= 2:
                term = self.power(self.t(), i)
                for mono, coeff in term.terms.items():
                    result[mono] = result[mono] + coeff * base if mono in result else coeff * base
                continue
            mono = (((i, fiber), 1),)
            result[mono] = result[mono] + base if mono in result else base
        return TautPoly(self, result)

    def u(self, d: int = 1) -> 'TautPoly':
        return self.divided(1, d)

    def t(self) -> 'TautPoly':
        return TautPoly(self, {(((1, self.ring.point_class_monomial()), 1),): self.ring.one()})

    def divided(self, n: int, d: int) -> 'TautPoly':
        """x_n(1)^[d] = delta_n^[d]"""
        if n < 1 or d < 0:
            raise ValidationError(detail=f"divided symbol needs n >= 1, d >= 0, got ({n},{d})", field="divided")
        if d == 0:
            return self.one()
        return TautPoly(self, {(((n, self._unit), d),): self.ring.one()})

    def power(self, p: 'TautPoly', e: int) -> 'TautPoly':
        result = self.one()
        for _ in range(e):
            result = result * p
        return result

    def monomial_basis(self, max_weight: int, fibers: Iterable[Monomial], min_weight: int = 0) -> List[TautMonomial]:
        """所有权重在 [min_weight, max_weight] 内的单项式 (截面关系下不含 x_M(p0), M>=2)"""
        symbols = sorted((i, fiber) for i in range(1, max_weight + 1) for fiber in fibers
                         if not (self.section_relation and fiber == self._point and i >= 2))
        out: List[TautMonomial] = []

        def extend(index: int, current: List[Tuple[Symbol, int]], weight: int) -> None:
            if index == len(symbols):
                if weight >= min_weight:
                    out.append(tuple(current))
                return
            symbol = symbols[index]
            top = 1 if self.symbol_parity(symbol) else (max_weight - weight) // symbol[0]
            for e in range(top + 1):
                if weight + e * symbol[0] > max_weight:
                    break
                if e:
                    current.append((symbol, e))
                extend(index + 1, current, weight + e * symbol[0])
                if e:
                    current.pop()

        extend(0, [], 0)
        return sorted(out, key=lambda m: (self.mono_weight(m), m))

    def format_monomial(self, mono: TautMonomial) -> str:
        parts = []
        for symbol, e in mono:
            name = self.format_symbol(symbol)
            if e == 1:
                parts.append(name)
            elif self.is_divided(symbol):
                parts.append(f"{name}^[{e}]")
            else:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def sign_before(algebra: TautAlgebra, mono: TautMonomial, position: int) -> int:
    return sum(e for s, e in mono[:position] if algebra.symbol_parity(s))


class TautPoly:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: TautAlgebra, terms: Dict[TautMonomial, RingElem] = None):
        self.algebra = algebra
        self.terms: Dict[TautMonomial, RingElem] = {m: c for m, c in (terms or {}).items() if c}

    @property
    def ring(self) -> RingSpec:
        return self.algebra.ring

    def _check(self, other: 'TautPoly') -> None:
        if other.algebra != self.algebra:
            raise RingMismatchError(left=self.ring.name, right=other.ring.name)

    def __add__(self, other: 'TautPoly') -> 'TautPoly':
        if not isinstance(other, TautPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms[mono] + coeff if mono in terms else coeff
        return TautPoly(self.algebra, terms)

    def __neg__(self) -> 'TautPoly':
        return TautPoly(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: 'TautPoly') -> 'TautPoly':
        if not isinstance(other, TautPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Union[int, Fraction, RingElem]) -> 'TautPoly':
        return TautPoly(self.algebra, {m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other) -> 'TautPoly':
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(other)
        if not isinstance(other, TautPoly):
            return NotImplemented
        self._check(other)
        algebra = self.algebra
        terms: Dict[TautMonomial, RingElem] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                step = algebra.mono_mul(m1, m2)
                if step is None:
                    continue
                coeff, merged = step
                value = c1 * c2 * coeff
                terms[merged] = terms[merged] + value if merged in terms else value
        return TautPoly(algebra, terms)

    def __rmul__(self, other) -> 'TautPoly':
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(other)
        return NotImplemented

    def derivative(self, symbol: Symbol) -> 'TautPoly':
        algebra = self.algebra
        terms: Dict[TautMonomial, RingElem] = {}
        for mono, coeff in self.terms.items():
            step = algebra.derivative_mono(mono, symbol)
            if step is None:
                continue
            factor, rest = step
            value = coeff * factor
            terms[rest] = terms[rest] + value if rest in terms else value
        return TautPoly(algebra, terms)

    def symbols(self) -> List[Symbol]:
        return sorted({symbol for mono in self.terms for symbol, _ in mono})

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TautPoly):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[TautMonomial, RingElem]]:
        algebra = self.algebra
        return iter(sorted(self.terms.items(), key=lambda item: (algebra.mono_weight(item[0]), item[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> List[int]:
        return sorted({self.algebra.mono_weight(m) for m in self.terms})

    def codims(self) -> List[int]:
        ring = self.ring
        values = set()
        for mono, coeff in self.terms.items():
            for base in coeff.terms:
                values.add(self.algebra.mono_codim(mono) + ring.degree(base))
        return sorted(values)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, coeff in self:
            body = self.algebra.format_monomial(mono)
            if not mono:
                pieces.append(format_ring_elem(coeff))
            elif coeff == 1:
                pieces.append(body)
            elif coeff == -1:
                pieces.append(f"-{body}")
            elif needs_parentheses(coeff):
                pieces.append(f"({format_ring_elem(coeff)})*{body}")
            else:
                pieces.append(f"{format_ring_elem(coeff)}*{body}")
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text

    def __repr__(self) -> str:
        return f"TautPoly({self})"
