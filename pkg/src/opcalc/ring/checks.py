"""环层面的检查: 化简幂等, 局部合流, 次数齐次, 辛配对"""
import random
from typing import Optional

from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.ring.RingElem import RingElem
from src.opcalc.ring.RingSpec import RingSpec, iter_rule_pairs


def _random_element(ring: RingSpec, rng: random.Random, max_degree: int, terms: int = 4) -> RingElem:
    monomials = ring.monomials_up_to(max_degree)
    poly = {}
    for _ in range(terms):
        poly[rng.choice(monomials)] = rng.randint(-3, 3)
    return RingElem(ring, {m: c for m, c in poly.items() if c})


def reduction_idempotence_check(ring: RingSpec, trials: int = 200, max_degree: int = 6,
                                seed: int = 0) -> CheckResult:
    result = CheckResult(identity="ring-reduction-idempotent")
    rng = random.Random(seed)
    for trial in range(trials):
        raw = _random_element(ring, rng, max_degree)
        once = ring.reduce_poly(raw.terms)
        twice = ring.reduce_poly(once)
        result.record(once == twice, {"trial": trial}, RingElem(ring, once), RingElem(ring, twice), raw.terms)
        result.record(all(ring.is_normal(m) for m in once), {"trial": trial, "normal": True},
                      RingElem(ring, once), "normal form")
    return result


def local_confluence_check(ring: RingSpec, max_degree: int = 5) -> CheckResult:
    """每对可重叠的规则, 在次数不超过 max_degree 的公共倍式上两种顺序结果一致"""
    result = CheckResult(identity="ring-local-confluence")
    monomials = ring.monomials_up_to(max_degree)
    for first, second in iter_rule_pairs(ring):
        for mono in monomials:
            if ring.mono_mul(ring.unit_monomial(), mono) is None:
                continue
            if not (_divides(first.lhs, mono) and _divides(second.lhs, mono)):
                continue
            left = ring.reduce_with_first(mono, first)
            right = ring.reduce_with_first(mono, second)
            result.record(left == right, {"monomial": ring.format_monomial(mono)},
                          RingElem(ring, left), RingElem(ring, right))
    return result


def _divides(small, big) -> bool:
    return all(a <= b for a, b in zip(small, big))


def homogeneity_check(ring: RingSpec, max_degree: int = 3) -> CheckResult:
    """单项式乘积的次数可加, 且超交换律成立"""
    result = CheckResult(identity="ring-degree-homogeneity")
    basis = ring.monomials_up_to(max_degree)
    for left in basis:
        for right in basis:
            x, y = ring.monomial(left), ring.monomial(right)
            if x.is_zero() or y.is_zero():
                continue
            xy = x * y
            expected = ring.degree(left) + ring.degree(right)
            ok = all(ring.degree(m) == expected for m in xy.terms)
            result.record(ok, {"x": str(x), "y": str(y)}, xy, f"degree {expected}")
            sign = -1 if x.parity() and y.parity() else 1
            yx = y * x
            result.record(xy == yx * sign, {"x": str(x), "y": str(y), "supercommutative": True}, xy, yx * sign)
    return result


def symplectic_pairing_check(ring: RingSpec, genus: Optional[int] = None) -> CheckResult:
    """<alpha_i, beta_j> = delta_ij, <beta_j, alpha_i> = -delta_ij, 其余为 0"""
    result = CheckResult(identity="symplectic-pairing")
    g = genus if genus is not None else int(ring.options.get("genus", 0))
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            alpha, beta = ring.gen(f"alpha{i}"), ring.gen(f"beta{j}")
            expected = 1 if i == j else 0
            pairs = [
                ("alpha-beta", pairing(alpha, beta), expected),
                ("beta-alpha", pairing(beta, alpha), -expected),
                ("alpha-alpha", pairing(ring.gen(f"alpha{i}"), ring.gen(f"alpha{j}")), 0),
                ("beta-beta", pairing(ring.gen(f"beta{i}"), beta), 0),
            ]
            for label, value, target in pairs:
                result.record(value == target, {"i": i, "j": j, "pair": label}, value, target)
    return result


def pairing(x: RingElem, y: RingElem) -> RingElem:
    """<x, y> = pi_*(x y)"""
    return (x * y).pushforward()


def ring_suite(ring: RingSpec) -> list:
    results = [
        reduction_idempotence_check(ring),
        local_confluence_check(ring),
        homogeneity_check(ring),
    ]
    if ring.name == "curve-cohomology":
        results.append(symplectic_pairing_check(ring))
    return results
