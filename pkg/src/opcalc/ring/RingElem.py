from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple, Union

from src.opcalc.exceptions import RingMismatchError, ValidationError
from src.opcalc.ring.RingSpec import Monomial, Poly, RingSpec, Scalar, normalize_scalar


class RingElem:
    """A 中的元素: 约化单项式到精确系数的映射, 不保存零系数"""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[Monomial, Scalar]):
        self.ring = ring
        self.terms: Dict[Monomial, Scalar] = {m: c for m, c in terms.items() if c}
        self._hash: Optional[int] = None

    # ------------------------------------------------------------------ 算术

    def _coerce(self, other) -> 'RingElem':
        if isinstance(other, RingElem):
            if other.ring is not self.ring:
                raise RingMismatchError(left=self.ring.name, right=other.ring.name)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other) -> 'RingElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            total = terms.get(m, 0) + c
            if total:
                terms[m] = total
            else:
                terms.pop(m, None)
        return RingElem(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> 'RingElem':
        return RingElem(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> 'RingElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'RingElem':
        return (-self) + other

    def __mul__(self, other) -> 'RingElem':
        if isinstance(other, (int, Fraction)):
            rational = self.ring.rational
            return RingElem(self.ring, {m: normalize_scalar(c * other, rational) for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElem(self.ring, self.ring.poly_mul(self.terms, other.terms))

    def __rmul__(self, other) -> 'RingElem':
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> 'RingElem':
        if exponent < 0:
            return self.ring.zero()
        result = self.ring.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == self.ring.scalar(other).terms
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ------------------------------------------------------------------ 查询

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(m) for m in self.terms}) <= 1

    def degree(self) -> int:
        degrees = {self.ring.degree(m) for m in self.terms}
        if len(degrees) != 1:
            raise ValidationError(detail=f"{self} is not homogeneous", field="degree")
        return degrees.pop()

    def parity(self) -> int:
        parities = {self.ring.parity(m) for m in self.terms}
        if len(parities) > 1:
            raise ValidationError(detail=f"{self} mixes parities", field="parity")
        return parities.pop() if parities else 0

    def is_base(self) -> bool:
        return all(self.ring.is_base_monomial(m) for m in self.terms)

    def constant(self) -> Scalar:
        """纯常数的值; 非常数时报错"""
        unit = self.ring.unit_monomial()
        if any(m != unit for m in self.terms):
            raise ValidationError(detail=f"{self} is not a constant", field="constant")
        return self.terms.get(unit, 0)

    def fiber_components(self) -> Dict[Monomial, 'RingElem']:
        """按纤维单项式拆开, 系数落在底环中"""
        parts: Dict[Monomial, Dict[Monomial, Scalar]] = {}
        for mono, coeff in self.terms.items():
            base, fiber = self.ring.split_monomial(mono)
            parts.setdefault(fiber, {})[base] = coeff
        return {fiber: RingElem(self.ring, terms) for fiber, terms in sorted(parts.items())}

    def pushforward(self) -> 'RingElem':
        return RingElem(self.ring, self.ring.pushforward_poly(self.terms))

    def restrict(self) -> 'RingElem':
        return RingElem(self.ring, self.ring.restrict_poly(self.terms))

    def sorted_terms(self) -> Tuple[Tuple[Monomial, Scalar], ...]:
        ring = self.ring
        return tuple(sorted(self.terms.items(), key=lambda item: (ring.degree(item[0]), tuple(-e for e in item[0]))))

    # ------------------------------------------------------------------ 文本

    def __str__(self) -> str:
        return format_ring_elem(self)

    def __repr__(self) -> str:
        return f"RingElem({self})"


def _format_scalar(value: Scalar) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def format_ring_elem(x: RingElem) -> str:
    """可被 DSL 重新解析的规范文本"""
    if not x.terms:
        return "0"
    pieces = []
    for mono, coeff in x.sorted_terms():
        name = x.ring.format_monomial(mono)
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if name == "1":
            body = _format_scalar(magnitude)
        elif magnitude == 1:
            body = name
        else:
            body = f"{_format_scalar(magnitude)}*{name}"
        pieces.append(("-" if negative else "+", body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def needs_parentheses(x: RingElem) -> bool:
    return len(x.terms) > 1 or any(isinstance(c, Fraction) or c < 0 for c in x.terms.values())


Coefficient = Union[int, Fraction, RingElem]
