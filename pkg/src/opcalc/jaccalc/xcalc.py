"""
X 算子的非交换演算

符号 Xt(n,k; a) 与 X(n,k; a) 组成的字是惰性的: 从不自动重排, 每个交换子都来自 X 关系的一个实例.
构造时立即施加的规则:
    - n < 0 或 k < 0 的符号为 0
    - Xt(0,1; C) = Xt(1,0; C) = 0
    - Xt(0,0; a) = pi_*(a) id (X(0,0; a) 同理)
    - 可选: n > 2g - k 的符号为 0
"""
import logging
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Literal, Optional, Tuple, Union

from src.opcalc.combinat import binomial
from src.opcalc.exceptions import RingError, RingMismatchError, ValidationError
from src.opcalc.jaccalc.t_operators import psi_power
from src.opcalc.ring import Monomial, RingElem, RingSpec, format_ring_elem
from src.opcalc.ring.RingElem import needs_parentheses

logger = logging.getLogger(__name__)

Kind = Literal["Xt", "X"]
XSym = Tuple[str, int, int, Monomial]
XWord = Tuple[XSym, ...]


class XElem:
    __slots__ = ("ring", "terms", "bound")

    def __init__(self, ring: RingSpec, terms: Dict[XWord, RingElem] = None, bound: Optional[int] = None):
        self.ring = ring
        self.bound = bound
        self.terms: Dict[XWord, RingElem] = {}
        for word, coeff in (terms or {}).items():
            self._accumulate(word, coeff)

    def _accumulate(self, word: XWord, coeff: RingElem) -> None:
        ring = self.ring
        unit = ring.unit_monomial()
        kept: List[XSym] = []
        for symbol in word:
            kind, n, k, fiber = symbol
            if n < 0 or k < 0:
                return
            if self.bound is not None and n > self.bound - k:
                return
            if fiber == unit and (n, k) in ((0, 1), (1, 0)):
                return
            if (n, k) == (0, 0):
                coeff = coeff * ring.monomial(fiber).pushforward()
                if not coeff:
                    return
                continue
            kept.append(symbol)
        key = tuple(kept)
        total = self.terms[key] + coeff if key in self.terms else coeff
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    # ------------------------------------------------------------------ 构造

    @classmethod
    def symbol(cls, ring: RingSpec, kind: Kind, n: int, k: int, a: RingElem,
               bound: Optional[int] = None) -> 'XElem':
        if a.ring is not ring:
            raise RingMismatchError(left=ring.name, right=a.ring.name)
        terms = {((kind, n, k, fiber),): base for fiber, base in a.fiber_components().items()}
        return cls(ring, terms, bound)

    @classmethod
    def scalar(cls, ring: RingSpec, value: Union[int, Fraction, RingElem], bound: Optional[int] = None) -> 'XElem':
        if not isinstance(value, RingElem):
            value = ring.scalar(value)
        return cls(ring, {(): value}, bound)

    @classmethod
    def zero(cls, ring: RingSpec, bound: Optional[int] = None) -> 'XElem':
        return cls(ring, {}, bound)

    def _new(self, terms: Dict[XWord, RingElem]) -> 'XElem':
        return XElem(self.ring, terms, self.bound)

    # ------------------------------------------------------------------ 运算

    def _check(self, other: 'XElem') -> None:
        if other.ring is not self.ring:
            raise RingMismatchError(left=self.ring.name, right=other.ring.name)

    def __add__(self, other: 'XElem') -> 'XElem':
        if not isinstance(other, XElem):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms[word] + coeff if word in terms else coeff
        return self._new(terms)

    def __neg__(self) -> 'XElem':
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: 'XElem') -> 'XElem':
        if not isinstance(other, XElem):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Union[int, Fraction, RingElem]) -> 'XElem':
        if isinstance(factor, RingElem) and not factor.is_base():
            raise ValidationError(detail="scalars must lie in the base ring", field="scalar")
        return self._new({w: c * factor for w, c in self.terms.items()})

    def __mul__(self, other) -> 'XElem':
        """字的拼接"""
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(other)
        if not isinstance(other, XElem):
            return NotImplemented
        self._check(other)
        terms: Dict[XWord, RingElem] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                value = c1 * c2
                terms[word] = terms[word] + value if word in terms else value
        return self._new(terms)

    def __rmul__(self, other) -> 'XElem':
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, XElem):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[XWord, RingElem]]:
        return iter(sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def is_linear(self) -> bool:
        return all(len(word) <= 1 for word in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for word, coeff in self:
            body = "*".join(format_symbol(self.ring, s) for s in word)
            if not word:
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
        return f"XElem({self})"


def format_symbol(ring: RingSpec, symbol: XSym) -> str:
    kind, n, k, fiber = symbol
    return f"{kind}({n},{k}; {ring.format_monomial(fiber)})"


def genus_of(ring: RingSpec) -> int:
    genus = ring.options.get("genus")
    if genus is None:
        raise RingError(detail="ring does not record a genus", ring_name=ring.name)
    return int(genus)


def x_bound(ring: RingSpec, bounded: bool) -> Optional[int]:
    return 2 * genus_of(ring) if bounded else None


def x_tilde(ring: RingSpec, n: int, k: int, a: RingElem, bound: Optional[int] = None) -> XElem:
    return XElem.symbol(ring, "Xt", n, k, a, bound)


# ---------------------------------------------------------------------- X 关系

def x_relation(ring: RingSpec, n: int, k: int, a: RingElem, n2: int, k2: int, a2: RingElem,
               bound: Optional[int] = None) -> Tuple[XElem, XElem]:
    """Xt(n,k;a) 与 Xt(n2,k2;a2) 之间关系的左右两边"""
    psi = ring.psi
    split = ring.K + ring.point_class * 2
    pa, pa2 = a.restrict(), a2.restrict()

    def xt(p: int, q: int, c: RingElem) -> XElem:
        return x_tilde(ring, p, q, c, bound)

    lhs = XElem.zero(ring, bound)
    for i in range(max(k, k2, n, n2) + 1):
        first = factorial(i) * binomial(k, i) * binomial(n2, i)
        second = factorial(i) * binomial(k2, i) * binomial(n, i)
        if first:
            lhs = lhs + (xt(n, k - i, a) * xt(n2 - i, k2, a2)).scale(psi ** i * first)
        if second:
            lhs = lhs - (xt(n2, k2 - i, a2) * xt(n - i, k, a)).scale(psi ** i * second)

    rhs = XElem.zero(ring, bound)
    for i in range(1, max(k, k2, n, n2) + 1):
        coeff = (-1) ** (i - 1) * factorial(i) * (binomial(k, i) * binomial(n2, i) - binomial(k2, i) * binomial(n, i))
        if coeff:
            rhs = rhs + xt(n + n2 - i, k + k2 - i, a * a2 * split ** (i - 1)).scale(coeff)
    if n2 == 0:
        rhs = rhs + xt(n - k2, k, a).scale(pa2 * psi_power(ring, k2 - 1) * factorial(k2) * binomial(n, k2))
    if n == 0:
        rhs = rhs - xt(n2 - k, k2, a2).scale(pa * psi_power(ring, k - 1) * factorial(k) * binomial(n2, k))
    if k == 0:
        rhs = rhs + xt(n2, k2 - n, a2).scale(pa * psi_power(ring, n - 1) * factorial(n) * binomial(k2, n))
    if k2 == 0:
        rhs = rhs - xt(n, k - n2, a).scale(pa2 * psi_power(ring, n2 - 1) * factorial(n2) * binomial(k, n2))
    return lhs, rhs


def _commutator(x: XElem, y: XElem) -> XElem:
    return x * y - y * x


def _symbol_bracket(ring: RingSpec, s1: XSym, s2: XSym, bound: Optional[int]) -> XElem:
    """[Xt_1, Xt_2]: 取 X 关系的实例, 要求其余修正项全部被消失规则杀死"""
    if s1[0] != "Xt" or s2[0] != "Xt":
        raise ValidationError(detail="brackets are computed on Xt symbols; convert X symbols first", field="kind")
    _, n, k, f1 = s1
    _, n2, k2, f2 = s2
    a, a2 = ring.monomial(f1), ring.monomial(f2)
    lhs, rhs = x_relation(ring, n, k, a, n2, k2, a2, bound)
    commutator = _commutator(x_tilde(ring, n, k, a, bound), x_tilde(ring, n2, k2, a2, bound))
    correction = lhs - commutator
    if not correction.is_zero():
        raise ValidationError(
            detail=f"cannot isolate [{format_symbol(ring, s1)}, {format_symbol(ring, s2)}]: "
                   f"correction {correction} does not vanish",
            field="bracket"
        )
    return rhs


def x_bracket(x: XElem, y: XElem) -> XElem:
    """线性元素 (单符号与 id 的组合) 的括号"""
    if not x.is_linear() or not y.is_linear():
        raise ValidationError(detail="X words are inert; brackets are defined on linear combinations only",
                              field="bracket")
    ring = x.ring
    result = XElem.zero(ring, x.bound)
    for w1, c1 in x.terms.items():
        if not w1:
            continue
        for w2, c2 in y.terms.items():
            if not w2:
                continue
            result = result + _symbol_bracket(ring, w1[0], w2[0], x.bound).scale(c1 * c2)
    return result


# ---------------------------------------------------------------------- sl2 与 X 基

def sl2_triple(ring: RingSpec, bound: Optional[int] = None) -> Dict[str, XElem]:
    """e = Xt(0,2;C)/2, f = -Xt(2,0;C)/2, h = -Xt(1,1;C) + g id"""
    if not ring.rational:
        raise RingError(detail="the sl2 triple needs rational scalar mode", ring_name=ring.name)
    one = ring.one()
    half = Fraction(1, 2)
    return {
        "e": x_tilde(ring, 0, 2, one, bound).scale(half),
        "f": x_tilde(ring, 2, 0, one, bound).scale(-half),
        "h": XElem.scalar(ring, genus_of(ring), bound) - x_tilde(ring, 1, 1, one, bound),
    }


def x_basis_change(ring: RingSpec, n: int, k: int, a: RingElem, bound: Optional[int] = None) -> XElem:
    """X(n,k;a) = sum_i (-1)^i i! C(n,i) C(k,i) Xt(n-i,k-i; a eta^i)"""
    eta = ring.eta()
    result = XElem.zero(ring, bound)
    for i in range(min(n, k) + 1):
        coeff = (-1) ** i * factorial(i) * binomial(n, i) * binomial(k, i)
        result = result + x_tilde(ring, n - i, k - i, a * eta ** i, bound).scale(coeff)
    return result


def to_X_basis(x: XElem) -> XElem:
    """线性元素从 Xt 写成 X: Xt(n,k;a) = sum_i i! C(n,i) C(k,i) X(n-i,k-i; a eta^i)"""
    if not x.is_linear():
        raise ValidationError(detail="only linear combinations change basis", field="basis")
    ring = x.ring
    eta = ring.eta()
    result = XElem.zero(ring, x.bound)
    for word, coeff in x.terms.items():
        if not word:
            result = result + XElem.scalar(ring, coeff, x.bound)
            continue
        kind, n, k, fiber = word[0]
        if kind == "X":
            result = result + XElem(ring, {word: coeff}, x.bound)
            continue
        a = ring.monomial(fiber)
        for i in range(min(n, k) + 1):
            factor = factorial(i) * binomial(n, i) * binomial(k, i)
            result = result + XElem.symbol(ring, "X", n - i, k - i, a * eta ** i, x.bound).scale(coeff * factor)
    return result


def to_Xt_basis(x: XElem) -> XElem:
    if not x.is_linear():
        raise ValidationError(detail="only linear combinations change basis", field="basis")
    ring = x.ring
    result = XElem.zero(ring, x.bound)
    for word, coeff in x.terms.items():
        if not word or word[0][0] == "Xt":
            result = result + XElem(ring, {word: coeff}, x.bound)
            continue
        _, n, k, fiber = word[0]
        result = result + x_basis_change(ring, n, k, ring.monomial(fiber), x.bound).scale(coeff)
    return result


def involution(x: XElem) -> XElem:
    """Phi: X(n,k;a) -> (-1)^k X(k,n;a), 在 X 基上线性延拓"""
    x = to_X_basis(x)
    terms: Dict[XWord, RingElem] = {}
    for word, coeff in x.terms.items():
        if word:
            _, n, k, fiber = word[0]
            word = (("X", k, n, fiber),)
            coeff = coeff * (-1) ** k
        terms[word] = terms[word] + coeff if word in terms else coeff
    return XElem(x.ring, terms, x.bound)
