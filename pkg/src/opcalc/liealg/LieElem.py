"""
D(A,a0) 的元素

键是 (m, k, 纤维单项式), 系数在底环中 (psi 的多项式与整数), 对应 CH^*(S)-线性;
P_{m,k}(a) 按 a 的纤维分量双线性展开, 所以每个环只有一种表示.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Literal, Tuple, Union

from src.opcalc.exceptions import RingMismatchError, ValidationError
from src.opcalc.ring import Monomial, RingElem, RingSpec

PKey = Tuple[int, int, Monomial]


@dataclass(frozen=True)
class BiDegree:
    codim_shift: int
    weight_shift: int

    def __add__(self, other: 'BiDegree') -> 'BiDegree':
        return BiDegree(self.codim_shift + other.codim_shift, self.weight_shift + other.weight_shift)


def key_parity(ring: RingSpec, key: PKey) -> int:
    return ring.parity(key[2])


def key_bidegree(ring: RingSpec, key: PKey, base_mono: Monomial = None) -> BiDegree:
    """codim_shift = deg(a) + deg(a0)(m-1), weight_shift = m - k"""
    m, k, mono = key
    codim = ring.degree(mono) + ring.a0_degree * (m - 1)
    if base_mono is not None:
        codim += ring.degree(base_mono)
    return BiDegree(codim, m - k)


class LieElem:
    __slots__ = ("ring", "terms", "basis")

    def __init__(self, ring: RingSpec, terms: Dict[PKey, RingElem] = None,
                 basis: Literal["P", "L"] = "P"):
        self.ring = ring
        self.basis = basis
        self.terms: Dict[PKey, RingElem] = {}
        for key, coeff in (terms or {}).items():
            if coeff:
                self.terms[key] = coeff

    # ------------------------------------------------------------------ 构造

    @classmethod
    def P(cls, ring: RingSpec, m: int, k: int, a: RingElem, basis: Literal["P", "L"] = "P") -> 'LieElem':
        if m < 0 or k < 0:
            raise ValidationError(detail=f"indices must be nonnegative, got ({m},{k})", field="index")
        if a.ring is not ring:
            raise RingMismatchError(left=ring.name, right=a.ring.name)
        return cls(ring, {(m, k, fiber): base for fiber, base in a.fiber_components().items()}, basis)

    @classmethod
    def zero(cls, ring: RingSpec, basis: Literal["P", "L"] = "P") -> 'LieElem':
        return cls(ring, {}, basis)

    # ------------------------------------------------------------------ 线性结构

    def _check(self, other: 'LieElem') -> None:
        if other.ring is not self.ring:
            raise RingMismatchError(left=self.ring.name, right=other.ring.name)
        if other.basis != self.basis:
            raise ValidationError(detail="cannot combine P-basis and L-basis elements", field="basis")

    def __add__(self, other: 'LieElem') -> 'LieElem':
        if not isinstance(other, LieElem):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms[key] + coeff if key in terms else coeff
        return LieElem(self.ring, terms, self.basis)

    def __neg__(self) -> 'LieElem':
        return LieElem(self.ring, {key: -c for key, c in self.terms.items()}, self.basis)

    def __sub__(self, other: 'LieElem') -> 'LieElem':
        if not isinstance(other, LieElem):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Union[int, Fraction, RingElem]) -> 'LieElem':
        if isinstance(factor, RingElem) and not factor.is_base():
            raise ValidationError(detail="Lie scalars must lie in the base ring", field="scalar")
        return LieElem(self.ring, {key: c * factor for key, c in self.terms.items()}, self.basis)

    def __mul__(self, factor) -> 'LieElem':
        if isinstance(factor, (int, Fraction, RingElem)):
            return self.scale(factor)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, LieElem):
            return NotImplemented
        return self.ring is other.ring and self.basis == other.basis and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.basis, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[PKey, RingElem]]:
        return iter(sorted(self.terms.items(), key=lambda item: _key_order(self.ring, item[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int:
        parities = {key_parity(self.ring, key) for key in self.terms}
        if len(parities) > 1:
            raise ValidationError(detail=f"{self} is not homogeneous in parity", field="parity")
        return parities.pop() if parities else 0

    def coefficient(self, m: int, k: int, a: RingElem) -> RingElem:
        """P_{m,k}(a) 中各纤维分量的系数之和 (a 为单个纤维单项式时即系数)"""
        total = self.ring.zero()
        for fiber, base in a.fiber_components().items():
            total = total + self.terms.get((m, k, fiber), self.ring.zero()) * base
        return total

    # ------------------------------------------------------------------ 文本

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        grouped: Dict[Tuple[int, int], RingElem] = {}
        for (m, k, mono), coeff in self:
            value = coeff * self.ring.monomial(mono)
            grouped[(m, k)] = grouped[(m, k)] + value if (m, k) in grouped else value
        pieces = [f"{self.basis}({m},{k}; {value})" for (m, k), value in sorted(grouped.items()) if value]
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self) -> str:
        return f"LieElem({self})"


def _key_order(ring: RingSpec, key: PKey):
    m, k, mono = key
    return m, k, ring.degree(mono), tuple(-e for e in mono)
