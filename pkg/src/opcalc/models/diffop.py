"""
P_{m,k}(a) 在重言式多项式上的微分算子实现

P_{m,k}(a) = sum_{s>=1} sum_{k_1+..+k_s=k, k_i>=1} sum_{y_i = x_{n_i}(a_i)}
             (-1)^{k-s} (k!/s!) C(n_1,k_1)..C(n_s,k_s) x_{m-k+n_1+..+n_s}(a a_s..a_1 a0^{k-s}) d_{y_1}..d_{y_s}
k = 0 时为乘以 x_m(a). 求值是惰性的: 只对多项式中实际出现的符号求导,
对合成 (k_i) 的求和化为 prod((1+z)^{n_i} - 1) 中 z^k 的系数.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, List, Sequence, Tuple, Union

from src.opcalc.combinat import binomial, exact_div
from src.opcalc.env.words import EnvElem, PGen, Tower
from src.opcalc.liealg import LieElem
from src.opcalc.models.taut import Symbol, TautAlgebra, TautPoly
from src.opcalc.ring import RingElem

logger = logging.getLogger(__name__)


def composition_weight(ns: Sequence[int], k: int) -> int:
    """sum over k_1+..+k_s = k, k_i >= 1 of prod C(n_i, k_i)"""
    poly = [1]
    for n in ns:
        factor = [0] + [binomial(n, j) for j in range(1, n + 1)]
        product = [0] * min(len(poly) + len(factor) - 1, k + 1)
        for i, a in enumerate(poly):
            if not a:
                continue
            for j, b in enumerate(factor):
                if i + j > k:
                    break
                product[i + j] += a * b
        poly = product
        if not any(poly):
            return 0
    return poly[k] if k < len(poly) else 0


class DiffOp:
    """作用在 TautPoly 上的算子"""

    def apply(self, p: TautPoly) -> TautPoly:
        raise NotImplementedError

    def __call__(self, p: TautPoly) -> TautPoly:
        return self.apply(p)


class PDiffOp(DiffOp):

    def __init__(self, algebra: TautAlgebra, m: int, k: int, a: RingElem):
        self.algebra = algebra
        self.m, self.k, self.a = m, k, a
        self._a0_powers = [algebra.ring.a0 ** j for j in range(k + 1)]

    def _chains(self, p: TautPoly, depth: int) -> Iterator[Tuple[Tuple[Symbol, ...], TautPoly]]:
        """按作用顺序枚举 (y_s, .., y_1) 与 d_{y_1}..d_{y_s} p"""
        for symbol in p.symbols():
            q = p.derivative(symbol)
            if q.is_zero():
                continue
            if depth == 1:
                yield (symbol,), q
            else:
                for rest, r in self._chains(q, depth - 1):
                    yield (symbol,) + rest, r

    def apply(self, p: TautPoly) -> TautPoly:
        algebra, ring = self.algebra, self.algebra.ring
        m, k = self.m, self.k
        if k == 0:
            return algebra.x(m, self.a) * p
        result = algebra.zero()
        for s in range(1, k + 1):
            prefactor = (-1) ** (k - s) * exact_div(factorial(k), factorial(s), "realize_P")
            for chain, q in self._chains(p, s):
                ns = [symbol[0] for symbol in chain]
                weight = composition_weight(ns, k)
                if not weight:
                    continue
                value = self.a
                for symbol in chain:
                    value = value * ring.monomial(symbol[1])
                value = value * self._a0_powers[k - s]
                if value.is_zero():
                    continue
                target = algebra.x(m - k + sum(ns), value)
                result = result + (target * q).scale(prefactor * weight)
        return result

    def __repr__(self) -> str:
        return f"P({self.m},{self.k}; {self.a})"


class TowerOp(DiffOp):
    """行塔: 乘以 x_n(1)^[d]; 列塔: D^d / d!, D = P_{0,n}(1), 除法必须精确"""

    def __init__(self, algebra: TautAlgebra, n: int, d: int, side: str):
        self.algebra = algebra
        self.n, self.d, self.side = n, d, side

    def apply(self, p: TautPoly) -> TautPoly:
        if self.side == "row":
            return self.algebra.divided(self.n, self.d) * p
        step = PDiffOp(self.algebra, 0, self.n, self.algebra.ring.one())
        for _ in range(self.d):
            p = step.apply(p)
            if p.is_zero():
                return p
        return p.scale(Fraction(1, factorial(self.d)))


class ProductOp(DiffOp):
    """因子从右向左作用"""

    def __init__(self, factors: Sequence[DiffOp]):
        self.factors = list(factors)

    def apply(self, p: TautPoly) -> TautPoly:
        for factor in reversed(self.factors):
            p = factor.apply(p)
            if p.is_zero():
                break
        return p


class SumOp(DiffOp):

    def __init__(self, algebra: TautAlgebra, terms: Sequence[Tuple[RingElem, DiffOp]]):
        self.algebra = algebra
        self.terms = list(terms)

    def apply(self, p: TautPoly) -> TautPoly:
        result = self.algebra.zero()
        for coeff, op in self.terms:
            result = result + op.apply(p).scale(coeff)
        return result


def realize_P(algebra: TautAlgebra, m: int, k: int, a: RingElem) -> DiffOp:
    return PDiffOp(algebra, m, k, a)


def realize_letter(algebra: TautAlgebra, letter: Union[PGen, Tower]) -> DiffOp:
    if isinstance(letter, Tower):
        return TowerOp(algebra, letter.n, letter.d, letter.side)
    return PDiffOp(algebra, letter.m, letter.k, algebra.ring.monomial(letter.mono))


def realize(algebra: TautAlgebra, x: Union[LieElem, EnvElem]) -> DiffOp:
    if isinstance(x, LieElem):
        terms = [(coeff, PDiffOp(algebra, m, k, algebra.ring.monomial(mono))) for (m, k, mono), coeff in x]
        return SumOp(algebra, terms)
    terms = [(coeff, ProductOp([realize_letter(algebra, letter) for letter in word])) for word, coeff in x]
    return SumOp(algebra, terms)


@dataclass(frozen=True)
class DiffTerm:
    coefficient: int
    target: TautPoly
    derivatives: Tuple[Symbol, ...]


def expand(algebra: TautAlgebra, m: int, k: int, a: RingElem, max_index: int,
           basis_degree: int = 2) -> List[DiffTerm]:
    """显式列出 P_{m,k}(a) 中 n_i <= max_index 的各项, 供展示使用"""
    ring = algebra.ring
    if k == 0:
        return [DiffTerm(1, algebra.x(m, a), ())]
    symbols = [(n, fiber) for n in range(1, max_index + 1) for fiber in ring.fiber_basis(basis_degree)]
    terms: List[DiffTerm] = []

    def walk(chain: Tuple[Symbol, ...], s: int) -> None:
        if len(chain) == s:
            ns = [symbol[0] for symbol in chain]
            weight = composition_weight(ns, k)
            if not weight:
                return
            value = a
            for symbol in reversed(chain):
                value = value * ring.monomial(symbol[1])
            value = value * ring.a0 ** (k - s)
            if value.is_zero():
                return
            coeff = (-1) ** (k - s) * exact_div(factorial(k), factorial(s), "expand") * weight
            target = algebra.x(m - k + sum(ns), value)
            if not target.is_zero():
                terms.append(DiffTerm(coeff, target, chain))
            return
        for symbol in symbols:
            walk(chain + (symbol,), s)

    for s in range(1, k + 1):
        walk((), s)
    return terms


def format_diff_term(algebra: TautAlgebra, term: DiffTerm) -> str:
    target = str(term.target)
    if len(term.target.terms) > 1:
        target = f"({target})"
    derivatives = "".join(f"*d[{algebra.format_symbol(symbol)}]" for symbol in term.derivatives)
    prefix = "" if term.coefficient == 1 else ("-" if term.coefficient == -1 else f"{term.coefficient}*")
    return f"{prefix}{target}{derivatives}"
