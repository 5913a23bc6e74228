"""
X 算子上的 sl2 与 Fourier 对合检查

所有括号都通过 Xt 关系的实例计算 (x_bracket), 不做任何自动重排.
"""
import logging
from math import factorial
from typing import List, Tuple

from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.jaccalc.t_operators import sample_labels
from src.opcalc.jaccalc.xcalc import (
    XElem,
    genus_of,
    involution,
    sl2_triple,
    to_X_basis,
    to_Xt_basis,
    x_bracket,
    x_tilde,
)
from src.opcalc.ring import RingElem, RingSpec

logger = logging.getLogger(__name__)


def _x(ring: RingSpec, n: int, k: int, a: RingElem) -> XElem:
    return XElem.symbol(ring, "X", n, k, a)


def bracket_X(x: XElem, y: XElem) -> XElem:
    """X 基上的括号: 转到 Xt 计算, 结果写回 X 基"""
    return to_X_basis(x_bracket(to_Xt_basis(x), to_Xt_basis(y)))


def _ad_power(x: XElem, y: XElem, times: int) -> XElem:
    for _ in range(times):
        y = x_bracket(x, y)
    return y


def sl2_verify(ring: RingSpec, max_index: int = 4) -> CheckResult:
    """e, f, h 的 sl2 关系以及 [e, Xt], [f, Xt] 的梯子公式"""
    triple = sl2_triple(ring)
    e, f, h = triple["e"], triple["f"], triple["h"]
    eta = ring.eta()
    result = CheckResult(identity="x-sl2")
    result.data = {"genus": genus_of(ring), "e": str(e), "f": str(f), "h": str(h)}

    pairs = [("[e,f]", x_bracket(e, f), h),
             ("[h,e]", x_bracket(h, e), e.scale(2)),
             ("[h,f]", x_bracket(h, f), f.scale(-2))]
    for name, lhs, rhs in pairs:
        result.record(lhs == rhs, {"relation": name}, lhs, rhs)

    for label, a in sample_labels(ring):
        for n in range(max_index + 1):
            for k in range(max_index + 1):
                symbol = x_tilde(ring, n, k, a)
                if not symbol:
                    continue
                params = {"n": n, "k": k, "a": label}
                lhs = x_bracket(e, symbol)
                rhs = (x_tilde(ring, n - 1, k + 1, a).scale(n)
                       - x_tilde(ring, n - 2, k, a * eta).scale(n * (n - 1)))
                result.record(lhs == rhs, {**params, "relation": "[e,Xt]"}, lhs, rhs)
                lhs = x_bracket(f, symbol)
                rhs = (x_tilde(ring, n + 1, k - 1, a).scale(k)
                       - x_tilde(ring, n, k - 2, a * eta).scale(k * (k - 1)))
                result.record(lhs == rhs, {**params, "relation": "[f,Xt]"}, lhs, rhs)
    logger.info(f"sl2 check on {ring.name}: {result.checked} instances, {len(result.failures)} failures")
    return result


def x_ladder_check(ring: RingSpec, max_total: int = 5) -> CheckResult:
    """X 基上的梯子: [e,X] = n X_{n-1,k+1}, [f,X] = k X_{n+1,k-1}, [h,X] = (k-n) X"""
    triple = sl2_triple(ring)
    result = CheckResult(identity="x-ladder")
    for label, a in sample_labels(ring):
        for n, k in _index_pairs(max_total):
            x = _x(ring, n, k, a)
            if not x:
                continue
            params = {"n": n, "k": k, "a": label}
            expected = {
                "e": _x(ring, n - 1, k + 1, a).scale(n),
                "f": _x(ring, n + 1, k - 1, a).scale(k),
                "h": x.scale(k - n),
            }
            for name, rhs in expected.items():
                lhs = bracket_X(triple[name], x)
                result.record(lhs == to_X_basis(rhs), {**params, "op": name}, lhs, rhs)
    return result


def fourier_involution_check(ring: RingSpec, max_total: int = 5) -> CheckResult:
    """
    Phi: X(n,k;a) -> (-1)^k X(k,n;a) 与梯子关系的相容性

    - Phi^2 = (-1)^{n+k} id
    - Phi 把 e, f, h 送到 -f, -e, -h, 且 Phi([s, X]) = [Phi(s), Phi(X)]
    """
    triple = sl2_triple(ring)
    images = {name: involution(value) for name, value in triple.items()}
    result = CheckResult(identity="fourier-involution")
    for name, partner in (("e", "f"), ("f", "e"), ("h", "h")):
        expected = to_X_basis(triple[partner]).scale(-1)
        result.record(images[name] == expected, {"generator": name}, images[name], expected)

    for label, a in sample_labels(ring):
        for n, k in _index_pairs(max_total):
            x = _x(ring, n, k, a)
            if not x:
                continue
            params = {"n": n, "k": k, "a": label}
            twice = involution(involution(x))
            expected = to_X_basis(x).scale((-1) ** (n + k))
            result.record(twice == expected, {**params, "relation": "Phi^2"}, twice, expected)
            for name in ("e", "f", "h"):
                lhs = involution(bracket_X(triple[name], x))
                rhs = bracket_X(images[name], involution(x))
                result.record(lhs == rhs, {**params, "relation": f"Phi[{name},X]"}, lhs, rhs)
    return result


def ad_ladder_check(ring: RingSpec, max_total: int = 5) -> CheckResult:
    """ad(f)^k Xt(0,n+k)/(n+k)! = X(k,n)/n! 与 ad(e)^k Xt(n+k,0)/(n+k)! = X(n,k)/n!"""
    triple = sl2_triple(ring)
    result = CheckResult(identity="ad-ladder")
    for label, a in sample_labels(ring):
        for n, k in _index_pairs(max_total):
            params = {"n": n, "k": k, "a": label}
            total = n + k
            scale = factorial(n)
            lhs = to_X_basis(_ad_power(triple["f"], x_tilde(ring, 0, total, a), k)).scale(scale)
            rhs = _x(ring, k, n, a).scale(factorial(total))
            result.record(lhs == rhs, {**params, "relation": "ad(f)^k"}, lhs, rhs)
            lhs = to_X_basis(_ad_power(triple["e"], x_tilde(ring, total, 0, a), k)).scale(scale)
            rhs = _x(ring, n, k, a).scale(factorial(total))
            result.record(lhs == rhs, {**params, "relation": "ad(e)^k"}, lhs, rhs)
    return result


def _index_pairs(max_total: int) -> List[Tuple[int, int]]:
    return [(n, total - n) for total in range(max_total + 1) for n in range(total + 1)]
