"""
把 T 关系在形式变量 m, m2 中展开成 Xt 符号的关系

T_k(m,a) = sum_n m^n/n! Xt(n,k;a); 代入关系式两边后, m^n m2^n2 的系数乘以 n! n2! 应与
Xt 关系的对应实例逐项相同 (作为非交换多项式).
"""
import logging
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.common.SweepRunner import run_sweep
from src.opcalc.jaccalc.t_operators import M, M2, TTerm, relation_terms, sample_labels
from src.opcalc.jaccalc.xcalc import XElem, XWord, x_relation, x_tilde
from src.opcalc.ring import Monomial, RingElem, RingSpec

logger = logging.getLogger(__name__)

MPoly = Dict[Tuple[XWord, Monomial], sympy.Expr]


def _to_scalar(value: sympy.Rational):
    value = sympy.Rational(value)
    if value.q == 1:
        return int(value.p)
    return Fraction(int(value.p), int(value.q))


def _series(ring: RingSpec, k: int, mexpr: sympy.Expr, a: RingElem, top: int) -> List[Tuple[sympy.Expr, XElem]]:
    """T_k(mexpr,a) 截断到 p <= top 的展开"""
    out = []
    for p in range(top + 1):
        symbol = x_tilde(ring, p, k, a)
        if symbol:
            out.append((mexpr ** p / factorial(p), symbol))
    return out


def expand_to_X(ring: RingSpec, terms: Sequence[TTerm], top: int) -> MPoly:
    """一侧 TTerm 列表的形式展开, 保留 m, m2 的次数 <= top 的部分"""
    poly: MPoly = {}
    for term in terms:
        series = [_series(ring, factor.k, factor.m, factor.a, top) for factor in term.ops]
        combos: List[Tuple[sympy.Expr, XElem]] = [(sympy.sympify(term.factor), XElem.scalar(ring, term.coeff))]
        for options in series:
            combos = [(w1 * w2, x1 * x2) for w1, x1 in combos for w2, x2 in options]
        for weight, word_elem in combos:
            for word, coeff in word_elem.terms.items():
                for mono, c in coeff.terms.items():
                    key = (word, mono)
                    poly[key] = poly.get(key, sympy.Integer(0)) + sympy.Rational(c.numerator, c.denominator) * weight
    return poly


def as_polys(poly: MPoly) -> Dict[Tuple[XWord, Monomial], sympy.Poly]:
    return {key: sympy.Poly(sympy.expand(expr), M, M2) for key, expr in poly.items()}


def coefficient(ring: RingSpec, polys: Dict[Tuple[XWord, Monomial], sympy.Poly], n: int, n2: int) -> XElem:
    """m^n m2^n2 的系数乘以 n! n2!"""
    terms: Dict[XWord, Dict[Monomial, object]] = {}
    for (word, mono), poly in sorted(polys.items(), key=lambda item: item[0]):
        value = poly.coeff_monomial(M ** n * M2 ** n2)
        if value == 0:
            continue
        scaled = _to_scalar(value * factorial(n) * factorial(n2))
        terms.setdefault(word, {})[mono] = scaled
    return XElem(ring, {word: ring.element(by_mono) for word, by_mono in terms.items()})


def _equivalence_chunk(ring: RingSpec, max_n: int, chunk: Tuple[int, int]) -> CheckResult:
    k, k2 = chunk
    result = CheckResult(identity="x-equivalence")
    top = 2 * max_n
    for name, a in sample_labels(ring):
        for name2, a2 in sample_labels(ring):
            lhs_terms, rhs_terms = relation_terms(ring, k, k2, a, a2)
            lhs_poly = as_polys(expand_to_X(ring, lhs_terms, top))
            rhs_poly = as_polys(expand_to_X(ring, rhs_terms, top))
            for n in range(max_n + 1):
                for n2 in range(max_n + 1):
                    expected_lhs, expected_rhs = x_relation(ring, n, k, a, n2, k2, a2)
                    params = {"k": k, "k2": k2, "n": n, "n2": n2, "a": name, "a2": name2}
                    got = coefficient(ring, lhs_poly, n, n2)
                    result.record(got == expected_lhs, {**params, "side": "lhs"}, got, expected_lhs)
                    got = coefficient(ring, rhs_poly, n, n2)
                    result.record(got == expected_rhs, {**params, "side": "rhs"}, got, expected_rhs)
    return result


def x_rel_equiv_check(ring: RingSpec, max_k: int = 2, max_n: int = 4, threads: Optional[int] = None) -> CheckResult:
    """m, m2 展开的系数与 Xt 关系逐项比较"""
    chunks = [(k, k2) for k in range(max_k + 1) for k2 in range(max_k + 1)]
    result = run_sweep("x-equivalence", _equivalence_chunk, chunks, shared=(ring, max_n), threads=threads)
    result.data = {"max_k": max_k, "max_n": max_n}
    return result
