"""
Jacobian 算子 T_k(m,a) 与它们之间的关系

T_k(m,a) 通过 P 算子定义:
    T_k(m,a) = (-1)^k P_{m,0}(a p0) P_{1,1}(C)^k psi^{k-1}
             + sum_{i+n+j=k} (-1)^{n+j} C(k,j) S(i+n,i) P_{i+m,i}(a K^n) P_{1,1}(p0 + psi)^j
负幂约定: psi^{-1} = 0.
关系式两边都写成 TTerm 列表, m 与 m2 是 sympy 符号, 具体检查时代入整数, 展开到 X 时保持形式.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from src.opcalc.combinat import binomial, stirling2
from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.common.SweepRunner import run_sweep
from src.opcalc.env.words import EnvElem
from src.opcalc.exceptions import ValidationError
from src.opcalc.liealg import LieElem
from src.opcalc.models.diffop import DiffOp, realize
from src.opcalc.models.taut import TautAlgebra, TautPoly
from src.opcalc.ring import RingElem, RingSpec

logger = logging.getLogger(__name__)

M, M2 = sympy.symbols("m m2")


def psi_power(ring: RingSpec, e: int) -> RingElem:
    """psi^e, e < 0 时为 0"""
    if e < 0:
        return ring.zero()
    return ring.psi ** e


def _p(ring: RingSpec, m: int, k: int, a: RingElem) -> EnvElem:
    return EnvElem.from_lie(LieElem.P(ring, m, k, a), "free")


def T_from_P(ring: RingSpec, k: int, m: int, a: RingElem) -> EnvElem:
    if k < 0 or m < 0:
        raise ValidationError(detail=f"T_k(m,a) needs k, m >= 0, got k={k}, m={m}", field="index")
    p0, K, psi = ring.point_class, ring.K, ring.psi
    weight = _p(ring, 1, 1, ring.one())
    section = _p(ring, 1, 1, p0) + weight.scale(psi)

    result = EnvElem.zero(ring, "free")
    if k >= 1:
        head = _p(ring, m, 0, a * p0)
        for _ in range(k):
            head = head.concat(weight)
        result = result + head.scale(psi_power(ring, k - 1) * (-1) ** k)
    for i in range(k + 1):
        for n in range(k - i + 1):
            j = k - i - n
            coeff = (-1) ** (n + j) * binomial(k, j) * stirling2(i + n, i)
            if not coeff:
                continue
            term = _p(ring, i + m, i, a * K ** n)
            for _ in range(j):
                term = term.concat(section)
            result = result + term.scale(coeff)
    return result


@dataclass(frozen=True)
class TFactor:
    k: int
    m: sympy.Expr
    a: RingElem


@dataclass(frozen=True)
class TTerm:
    """
    coeff * factor(m, m2) * x_{points}(p0) * T * T ...; coeff 在底环中.
    单个 T 的项只把对称幂指标移动 m 或 m2, points 补上缺少的 (m + m2) - 移动量 个点
    """
    coeff: RingElem
    factor: sympy.Expr
    ops: Tuple[TFactor, ...]
    points: sympy.Expr = sympy.Integer(0)


def relation_terms(ring: RingSpec, k: int, k2: int, a: RingElem, a2: RingElem) -> Tuple[List[TTerm], List[TTerm]]:
    """T_k(m,a) 与 T_{k2}(m2,a2) 之间关系的两边"""
    psi = ring.psi
    one = ring.one()
    split = ring.K + ring.point_class * 2
    pa, pa2 = a.restrict(), a2.restrict()
    lhs: List[TTerm] = []
    rhs: List[TTerm] = []
    for i in range(max(k, k2) + 1):
        scalar = psi ** i
        if i <= k:
            lhs.append(TTerm(scalar, binomial(k, i) * M2 ** i, (TFactor(k - i, M, a), TFactor(k2, M2, a2))))
        if i <= k2:
            lhs.append(TTerm(-scalar, binomial(k2, i) * M ** i, (TFactor(k2 - i, M2, a2), TFactor(k, M, a))))
    for i in range(1, k + k2 + 1):
        factor = (-1) ** (i - 1) * (binomial(k, i) * M2 ** i - binomial(k2, i) * M ** i)
        if factor != 0:
            rhs.append(TTerm(one, sympy.expand(factor), (TFactor(k + k2 - i, M + M2, a * a2 * split ** (i - 1)),)))
    rhs.append(TTerm(psi_power(ring, k2 - 1) * pa2, M ** k2, (TFactor(k, M, a),), M2))
    rhs.append(TTerm(-psi_power(ring, k - 1) * pa, M2 ** k, (TFactor(k2, M2, a2),), M))
    if k == 0:
        for i in range(1, k2 + 1):
            rhs.append(TTerm(psi_power(ring, i - 1) * pa, binomial(k2, i) * M ** i, (TFactor(k2 - i, M2, a2),), M))
    if k2 == 0:
        for i in range(1, k + 1):
            rhs.append(TTerm(-psi_power(ring, i - 1) * pa2, binomial(k, i) * M2 ** i, (TFactor(k - i, M, a),), M2))
    return [term for term in lhs if term.coeff], [term for term in rhs if term.coeff]


class TRealizer:
    """按 (k, m, a) 缓存 T_k(m,a) 的微分算子实现"""

    def __init__(self, algebra: TautAlgebra):
        self.algebra = algebra
        self._cache: Dict[Tuple[int, int, str], DiffOp] = {}

    def op(self, k: int, m: int, a: RingElem) -> DiffOp:
        key = (k, m, str(a))
        if key not in self._cache:
            self._cache[key] = realize(self.algebra, T_from_P(self.algebra.ring, k, m, a))
        return self._cache[key]

    def evaluate(self, terms: Sequence[TTerm], m: int, m2: int, f: TautPoly) -> TautPoly:
        result = self.algebra.zero()
        for term in terms:
            value = int(term.factor.subs({M: m, M2: m2})) if isinstance(term.factor, sympy.Basic) else int(term.factor)
            if not value:
                continue
            current = f
            for factor in reversed(term.ops):
                index = int(factor.m.subs({M: m, M2: m2}))
                current = self.op(factor.k, index, factor.a)(current)
                if current.is_zero():
                    break
            points = int(sympy.sympify(term.points).subs({M: m, M2: m2}))
            if points and current:
                current = self.algebra.x(points, self.algebra.ring.point_class) * current
            result = result + current.scale(term.coeff * value)
        return result


def sample_labels(ring: RingSpec) -> List[Tuple[str, RingElem]]:
    return [("1", ring.one()), ("p0", ring.point_class), ("K", ring.K)]


def _relations_chunk(ring: RingSpec, max_m: int, max_weight: int, basis_degree: int,
                     chunk: Tuple[int, int]) -> CheckResult:
    k, k2 = chunk
    algebra = TautAlgebra(ring, section_relation=True)
    realizer = TRealizer(algebra)
    samples = [TautPoly(algebra, {mono: ring.one()})
               for mono in algebra.monomial_basis(max_weight, ring.fiber_basis(basis_degree))]
    result = CheckResult(identity="t-relations")
    for name, a in sample_labels(ring):
        for name2, a2 in sample_labels(ring):
            lhs_terms, rhs_terms = relation_terms(ring, k, k2, a, a2)
            for m in range(max_m + 1):
                for m2 in range(max_m + 1):
                    for f in samples:
                        lhs = realizer.evaluate(lhs_terms, m, m2, f)
                        rhs = realizer.evaluate(rhs_terms, m, m2, f)
                        params = {"k": k, "k2": k2, "m": m, "m2": m2, "a": name, "a2": name2, "f": str(f)}
                        result.record(lhs == rhs, params, lhs, rhs, f)
    return result


def relations_T_check(ring: RingSpec, max_k_total: int = 2, max_m: int = 2, max_weight: int = 4,
                      basis_degree: int = 1, threads: Optional[int] = None) -> CheckResult:
    """
    T 算子关系: 两边都通过 T_from_P -> realize 作用在权 <= max_weight 的单项式上,
    在截面关系 x_M(p0) = t^M 下精确比较
    """
    chunks = [(k, k2) for total in range(max_k_total + 1) for k in range(total + 1) for k2 in [total - k]]
    result = run_sweep("t-relations", _relations_chunk, chunks,
                       shared=(ring, max_m, max_weight, basis_degree), threads=threads)
    result.data = {"k_pairs": [list(c) for c in chunks], "max_m": max_m, "max_weight": max_weight}
    return result
