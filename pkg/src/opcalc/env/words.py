"""
包络代数中的字母, 字与元素

字母要么是 P 生成元 PGen(m,k,纤维单项式), 要么是除幂塔
Tower(n,d,row) = P_{n,0}(1)^[d] 或 Tower(n,d,col) = P_{0,n}(1)^[d].
EnvElem 是字到底环系数的映射, 所属代数决定使用哪组重写关系:
  U1    行塔 (左侧)
  U2    列塔 (右侧)
  heis  只含 n=1 的行塔与列塔, 二者按公理交换
  free  不做任何重写, 用来保存形式字
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Literal, Tuple, Union

from src.opcalc.exceptions import RingMismatchError, ValidationError
from src.opcalc.liealg import LieElem
from src.opcalc.ring import Monomial, RingElem, RingSpec, format_ring_elem
from src.opcalc.ring.RingElem import needs_parentheses

Algebra = Literal["U1", "U2", "heis", "free"]
ALGEBRAS = ("U1", "U2", "heis", "free")


@dataclass(frozen=True)
class PGen:
    m: int
    k: int
    mono: Monomial

    @property
    def key(self) -> Tuple[int, int, Monomial]:
        return self.m, self.k, self.mono


@dataclass(frozen=True)
class Tower:
    n: int
    d: int
    side: Literal["row", "col"]


Letter = Union[PGen, Tower]
Word = Tuple[Letter, ...]


def letter_parity(ring: RingSpec, letter: Letter) -> int:
    if isinstance(letter, Tower):
        return 0
    return ring.parity(letter.mono)


def word_parity(ring: RingSpec, word: Word) -> int:
    return sum(letter_parity(ring, letter) for letter in word) % 2


def pgen_order(ring: RingSpec, letter: PGen):
    """PGen 段内的全序"""
    return letter.m, letter.k, ring.degree(letter.mono), tuple(-e for e in letter.mono)


def format_letter(ring: RingSpec, letter: Letter) -> str:
    if isinstance(letter, Tower):
        return f"{'Tr' if letter.side == 'row' else 'Tc'}({letter.n},{letter.d})"
    return f"P({letter.m},{letter.k}; {ring.format_monomial(letter.mono)})"


def format_word(ring: RingSpec, word: Word) -> str:
    return "*".join(format_letter(ring, letter) for letter in word)


def _allowed(algebra: str, letter: Letter) -> bool:
    if isinstance(letter, PGen) or algebra == "free":
        return True
    if algebra == "U1":
        return letter.side == "row"
    if algebra == "U2":
        return letter.side == "col"
    return letter.n == 1


class EnvElem:
    __slots__ = ("ring", "algebra", "terms")

    def __init__(self, ring: RingSpec, algebra: Algebra, terms: Dict[Word, RingElem] = None):
        if algebra not in ALGEBRAS:
            raise ValidationError(detail=f"unknown algebra '{algebra}'", field="algebra")
        self.ring = ring
        self.algebra = algebra
        self.terms: Dict[Word, RingElem] = {}
        for word, coeff in (terms or {}).items():
            for letter in word:
                if not _allowed(algebra, letter):
                    raise ValidationError(
                        detail=f"{format_letter(ring, letter)} is not a letter of {algebra}",
                        field="algebra"
                    )
            if coeff:
                self.terms[word] = coeff

    # ------------------------------------------------------------------ 构造

    @classmethod
    def raw(cls, ring: RingSpec, algebra: Algebra, terms: Dict[Word, RingElem]) -> 'EnvElem':
        """不经过规范化的元素"""
        return cls(ring, algebra, terms)

    @classmethod
    def from_word(cls, ring: RingSpec, algebra: Algebra, word: Word,
                  coeff: Union[int, Fraction, RingElem] = 1) -> 'EnvElem':
        from src.opcalc.env.rewriting import normal_form
        scalar = coeff if isinstance(coeff, RingElem) else ring.scalar(coeff)
        return normal_form(cls(ring, algebra, {tuple(word): scalar}))

    @classmethod
    def from_lie(cls, x: LieElem, algebra: Algebra) -> 'EnvElem':
        from src.opcalc.env.rewriting import normal_form
        if x.basis != "P":
            raise ValidationError(detail="convert L-basis elements to the P-basis first", field="basis")
        terms = {(PGen(*key),): coeff for key, coeff in x.terms.items()}
        return normal_form(cls(x.ring, algebra, terms))

    @classmethod
    def tower(cls, ring: RingSpec, algebra: Algebra, n: int, d: int, side: Literal["row", "col"]) -> 'EnvElem':
        if n < 1 or d < 0:
            raise ValidationError(detail=f"tower needs n >= 1 and d >= 0, got ({n},{d})", field="tower")
        if d == 0:
            return cls.one(ring, algebra)
        return cls.from_word(ring, algebra, (Tower(n, d, side),))

    @classmethod
    def one(cls, ring: RingSpec, algebra: Algebra) -> 'EnvElem':
        return cls(ring, algebra, {(): ring.one()})

    @classmethod
    def zero(cls, ring: RingSpec, algebra: Algebra) -> 'EnvElem':
        return cls(ring, algebra, {})

    # ------------------------------------------------------------------ 运算

    def _check(self, other: 'EnvElem') -> None:
        if other.ring is not self.ring:
            raise RingMismatchError(left=self.ring.name, right=other.ring.name)
        if other.algebra != self.algebra:
            raise ValidationError(detail=f"cannot combine {self.algebra} with {other.algebra}", field="algebra")

    def __add__(self, other: 'EnvElem') -> 'EnvElem':
        if not isinstance(other, EnvElem):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms[word] + coeff if word in terms else coeff
        return EnvElem(self.ring, self.algebra, terms)

    def __neg__(self) -> 'EnvElem':
        return EnvElem(self.ring, self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: 'EnvElem') -> 'EnvElem':
        if not isinstance(other, EnvElem):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Union[int, Fraction, RingElem]) -> 'EnvElem':
        if isinstance(factor, RingElem) and not factor.is_base():
            raise ValidationError(detail="scalars must lie in the base ring", field="scalar")
        return EnvElem(self.ring, self.algebra, {w: c * factor for w, c in self.terms.items()})

    def concat(self, other: 'EnvElem') -> 'EnvElem':
        """字的拼接, 不规范化"""
        self._check(other)
        terms: Dict[Word, RingElem] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                value = c1 * c2
                terms[word] = terms[word] + value if word in terms else value
        return EnvElem(self.ring, self.algebra, terms)

    def __mul__(self, other) -> 'EnvElem':
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(other)
        if not isinstance(other, EnvElem):
            return NotImplemented
        from src.opcalc.env.rewriting import normal_form
        return normal_form(self.concat(other))

    def __rmul__(self, other) -> 'EnvElem':
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> 'EnvElem':
        if exponent < 0:
            raise ValidationError(detail="negative powers are not defined", field="exponent")
        result = EnvElem.one(self.ring, self.algebra)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, EnvElem):
            return NotImplemented
        return self.ring is other.ring and self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.algebra, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[Word, RingElem]]:
        return iter(sorted(self.terms.items(), key=lambda item: word_order(self.ring, item[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int:
        parities = {word_parity(self.ring, w) for w in self.terms}
        if len(parities) > 1:
            raise ValidationError(detail=f"{self} is not homogeneous in parity", field="parity")
        return parities.pop() if parities else 0

    def with_algebra(self, algebra: Algebra) -> 'EnvElem':
        from src.opcalc.env.rewriting import normal_form
        return normal_form(EnvElem(self.ring, algebra, self.terms))

    # ------------------------------------------------------------------ 文本

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for word, coeff in self:
            text = format_word(self.ring, word)
            if not word:
                pieces.append(format_ring_elem(coeff))
            elif coeff == 1:
                pieces.append(text)
            elif coeff == -1:
                pieces.append(f"-{text}")
            elif needs_parentheses(coeff):
                pieces.append(f"({format_ring_elem(coeff)})*{text}")
            else:
                pieces.append(f"{format_ring_elem(coeff)}*{text}")
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text

    def __repr__(self) -> str:
        return f"EnvElem[{self.algebra}]({self})"


def letter_order(ring: RingSpec, letter: Letter):
    if isinstance(letter, Tower):
        return (0 if letter.side == "row" else 2, letter.n, letter.d)
    return (1,) + pgen_order(ring, letter)


def word_order(ring: RingSpec, word: Word):
    return len(word), tuple(letter_order(ring, letter) for letter in word)
