"""
D(A,a0) 的超括号

[P_{m,k}(a), P_{m',k'}(a')] = sum_{i>=1} (-1)^{i-1} i! (C(k,i)C(m',i) - C(m,i)C(k',i))
                                 P_{m+m'-i, k+k'-i}(a a' a0^{i-1})

系数都在底环中且底环生成元是偶的, 所以双线性延拓不产生额外符号;
a 与 a' 的 Koszul 符号已经包含在环乘法 a*a' 中.
"""
import logging
from functools import lru_cache
from math import factorial
from typing import Dict, Tuple

from src.opcalc.combinat import binomial
from src.opcalc.exceptions import RingMismatchError
from src.opcalc.liealg.LieElem import LieElem, PKey
from src.opcalc.ring import RingElem, RingSpec

logger = logging.getLogger(__name__)


def bracket_coefficient(m: int, k: int, m2: int, k2: int, i: int) -> int:
    return (-1) ** (i - 1) * factorial(i) * (binomial(k, i) * binomial(m2, i) - binomial(m, i) * binomial(k2, i))


@lru_cache(maxsize=None)
def _a0_power(ring: RingSpec, exponent: int) -> RingElem:
    return ring.a0 ** exponent


@lru_cache(maxsize=200_000)
def bracket_keys(ring: RingSpec, left: PKey, right: PKey) -> Tuple[Tuple[PKey, RingElem], ...]:
    """两个基元素 P_{m,k}(b), P_{m',k'}(b') 的括号, 结果按 PKey 展开"""
    m, k, mono = left
    m2, k2, mono2 = right
    top = max(min(k, m2), min(m, k2))
    if top < 1:
        return ()
    product = ring.monomial(mono) * ring.monomial(mono2)
    if product.is_zero():
        return ()
    result: Dict[PKey, RingElem] = {}
    for i in range(1, top + 1):
        c = bracket_coefficient(m, k, m2, k2, i)
        if not c:
            continue
        value = product * _a0_power(ring, i - 1) if i > 1 else product
        if value.is_zero():
            continue
        new_m, new_k = m + m2 - i, k + k2 - i
        assert new_m >= 0 and new_k >= 0, (left, right, i)
        for fiber, base in value.fiber_components().items():
            key = (new_m, new_k, fiber)
            result[key] = result[key] + base * c if key in result else base * c
    return tuple((key, coeff) for key, coeff in sorted(result.items()) if coeff)


def bracket(x: LieElem, y: LieElem) -> LieElem:
    if x.ring is not y.ring:
        raise RingMismatchError(left=x.ring.name, right=y.ring.name)
    ring = x.ring
    result: Dict[PKey, RingElem] = {}
    for left, c1 in x.terms.items():
        for right, c2 in y.terms.items():
            pieces = bracket_keys(ring, left, right)
            if not pieces:
                continue
            scale = c1 * c2
            if scale.is_zero():
                continue
            for key, coeff in pieces:
                value = coeff * scale
                result[key] = result[key] + value if key in result else value
    return LieElem(ring, result)


def centralize(x: LieElem) -> Tuple[LieElem, RingElem]:
    """把中心元 P_{0,0}(a) 换成标量 pi_*(a), 返回 (剩余部分, 底环标量)"""
    ring = x.ring
    rest: Dict[PKey, RingElem] = {}
    scalar = ring.zero()
    for key, coeff in x.terms.items():
        m, k, mono = key
        if m == 0 and k == 0:
            scalar = scalar + coeff * ring.monomial(mono).pushforward()
        else:
            rest[key] = coeff
    return LieElem(ring, rest, x.basis), scalar


def super_sign(x: LieElem, y: LieElem) -> int:
    return -1 if x.parity() and y.parity() else 1
