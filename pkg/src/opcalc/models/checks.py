"""模实现上的检查: Fock sl2, Lefschetz, 模分解, 重言式实现的同态性与分次"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from src.opcalc.combinat import stirling2
from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.common.SweepRunner import run_sweep
from src.opcalc.env.heisenberg import fock_images
from src.opcalc.liealg import LieElem, PKey, bracket, key_parity
from src.opcalc.liealg.checks import default_basis_degree, pgen_basis
from src.opcalc.models.decompose import decompose_module, fock_action_table, fock_label, format_vector
from src.opcalc.models.diffop import PDiffOp, realize
from src.opcalc.models.fock import (
    FockVector, apply_e, apply_f, apply_h, fock_apply_one, fock_basis, lefschetz_power,
)
from src.opcalc.models.taut import TautAlgebra, TautMonomial, TautPoly
from src.opcalc.ring import RingSpec

logger = logging.getLogger(__name__)


def fock_sl2_check(max_total: int = 8) -> CheckResult:
    """[e,f] = h, [h,e] = 2e, [h,f] = -2f, h(t^m u^[n]) = (m-n) t^m u^[n]"""
    result = CheckResult(identity="fock-sl2")
    for m, n in fock_basis(max_total):
        v = FockVector.basis(m, n)
        params = {"m": m, "n": n}
        cases = [
            ("[e,f]=h", apply_e(apply_f(v)) - apply_f(apply_e(v)), apply_h(v)),
            ("[h,e]=2e", apply_h(apply_e(v)) - apply_e(apply_h(v)), apply_e(v).scale(2)),
            ("[h,f]=-2f", apply_h(apply_f(v)) - apply_f(apply_h(v)), apply_f(v).scale(-2)),
            ("h-eigenvalue", apply_h(v), v.scale(m - n)),
        ]
        for relation, lhs, rhs in cases:
            result.record(lhs == rhs, {**params, "relation": relation}, lhs, rhs)
    return result


def lefschetz_bijection_check(max_index: int = 8) -> CheckResult:
    """e^{n-m} 把 t^m u^[n] 恰好送到 t^n u^[m], 因此在 Z 上是基之间的双射"""
    result = CheckResult(identity="lefschetz-bijection")
    for n in range(max_index + 1):
        for m in range(n + 1):
            lhs = lefschetz_power(m, n)
            rhs = FockVector.basis(n, m)
            result.record(lhs == rhs, {"m": m, "n": n}, lhs, rhs)
    return result


def fock_decomposition_check(max_weight: int = 6) -> CheckResult:
    """截断 Fock 模: M_0 = span(1), t 单射, du 满射, 展开可复原"""
    result = CheckResult(identity="module-decomposition")
    decomposition = decompose_module(fock_action_table(max_weight))
    unit = fock_label(0, 0)
    m0 = [format_vector(v) for v in decomposition.m0_basis]
    result.record(m0 == [unit], {"max_weight": max_weight, "property": "M0"}, m0, [unit])
    result.record(decomposition.t_injective, {"max_weight": max_weight, "property": "t-injective"},
                  decomposition.t_injective, True)
    result.record(decomposition.du_surjective, {"max_weight": max_weight, "property": "du-surjective"},
                  decomposition.du_surjective, True)
    result.record(decomposition.recomposed, {"max_weight": max_weight, "property": "recomposition"},
                  decomposition.recomposed, True)
    result.data = decomposition.to_dict()
    return result


# ---------------------------------------------------------------------- 重言式实现

class OperatorCache:
    """按 (PGen 键, 单项式) 缓存 realize_P 的作用"""

    def __init__(self, algebra: TautAlgebra):
        self.algebra = algebra
        self._cache: Dict[Tuple[PKey, TautMonomial], TautPoly] = {}

    def apply_key(self, key: PKey, p: TautPoly) -> TautPoly:
        algebra = self.algebra
        ring = algebra.ring
        result = algebra.zero()
        for mono, coeff in p.terms.items():
            image = self._cache.get((key, mono))
            if image is None:
                m, k, fiber = key
                image = PDiffOp(algebra, m, k, ring.monomial(fiber)).apply(TautPoly(algebra, {mono: ring.one()}))
                self._cache[(key, mono)] = image
            result = result + image.scale(coeff)
        return result

    def apply_lie(self, x: LieElem, p: TautPoly) -> TautPoly:
        result = self.algebra.zero()
        for key, coeff in x:
            result = result + self.apply_key(key, p).scale(coeff)
        return result


def taut_sample(algebra: TautAlgebra, max_weight: int, basis_degree: int) -> List[TautPoly]:
    ring = algebra.ring
    monomials = algebra.monomial_basis(max_weight, ring.fiber_basis(basis_degree))
    return [TautPoly(algebra, {mono: ring.one()}) for mono in monomials]


def _homomorphism_chunk(ring: RingSpec, keys: Sequence[PKey], max_weight: int, basis_degree: int,
                        first: int) -> CheckResult:
    result = CheckResult(identity="taut-homomorphism")
    algebra = TautAlgebra(ring)
    cache = OperatorCache(algebra)
    samples = taut_sample(algebra, max_weight, basis_degree)
    key = keys[first]
    x = LieElem(ring, {key: ring.one()})
    for other in keys[first:]:
        y = LieElem(ring, {other: ring.one()})
        sign = -1 if key_parity(ring, key) and key_parity(ring, other) else 1
        z = bracket(x, y)
        for f in samples:
            lhs = cache.apply_key(key, cache.apply_key(other, f)) - cache.apply_key(other, cache.apply_key(key, f)).scale(sign)
            rhs = cache.apply_lie(z, f)
            result.record(lhs == rhs, {"x": str(x), "y": str(y), "f": str(f)}, lhs, rhs, f)
    return result


def homomorphism_check(ring: RingSpec, max_index: int = 3, max_weight: int = 5,
                       basis_degree: Optional[int] = None, threads: Optional[int] = None) -> CheckResult:
    """realize([x,y]) = [realize(x), realize(y)] 在所有权 <= max_weight 的单项式上"""
    degree = default_basis_degree(ring) if basis_degree is None else basis_degree
    keys = pgen_basis(ring, max_index, max_index, degree)
    result = run_sweep("taut-homomorphism", _homomorphism_chunk, list(range(len(keys))),
                       shared=(ring, keys, max_weight, degree), threads=threads)
    result.data = {"operators": len(keys), "max_weight": max_weight}
    return result


def bookkeeping_check(ring: RingSpec, max_index: int = 3, max_weight: int = 4,
                      basis_degree: Optional[int] = None) -> CheckResult:
    """P_{m,k}(a) 把权移动 m-k, 余维移动 deg(a) + deg(a0)(m-1); k > 0 时消灭 1"""
    degree = default_basis_degree(ring) if basis_degree is None else basis_degree
    algebra = TautAlgebra(ring)
    cache = OperatorCache(algebra)
    samples = taut_sample(algebra, max_weight, degree)
    result = CheckResult(identity="taut-bookkeeping")
    for key in pgen_basis(ring, max_index, max_index, degree):
        m, k, fiber = key
        shift = ring.degree(fiber) + ring.a0_degree * (m - 1)
        for f in samples:
            image = cache.apply_key(key, f)
            weight = f.weights()[0] + m - k
            codim = f.codims()[0] + shift
            ok = image.is_zero() or (image.weights() == [weight] and image.codims() == [codim])
            result.record(ok, {"m": m, "k": k, "a": ring.format_monomial(fiber), "f": str(f)},
                          {"weights": image.weights(), "codims": image.codims()},
                          {"weights": [weight], "codims": [codim]})
        if k > 0:
            image = cache.apply_key(key, algebra.one())
            result.record(image.is_zero(), {"m": m, "k": k, "a": ring.format_monomial(fiber), "f": "1"}, image, 0)
    return result


def fock_to_taut(algebra: TautAlgebra, v: FockVector) -> TautPoly:
    result = algebra.zero()
    for (m, n), c in v:
        result = result + (algebra.power(algebra.t(), m) * algebra.u(n)).scale(c)
    return result


def collino_module_check(ring: RingSpec, max_weight: int = 4, max_power: int = 2) -> CheckResult:
    """collino 嵌入的实现在 t = x_1(p0), u = x_1(1) 张成的子代数上就是 Fock 作用"""
    algebra = TautAlgebra(ring)
    result = CheckResult(identity="collino-module")
    for label, image in fock_images(ring, "collino", max_power).items():
        name, _, rest = label.partition("[")
        d = int(rest.rstrip("]")) if rest else 1
        op = realize(algebra, image)
        for m, n in fock_basis(max_weight):
            lhs = op(fock_to_taut(algebra, FockVector.basis(m, n)))
            rhs = fock_to_taut(algebra, fock_apply_one(name, d, FockVector.basis(m, n)))
            result.record(lhs == rhs, {"operator": label, "m": m, "n": n}, lhs, rhs)
    return result


def pullback_p11_check(ring: RingSpec, max_j: int = 4, max_n: int = 6) -> CheckResult:
    """P_{1,1}(p0)^j (u^[N]) = sum_m (-psi)^{j-m} S(j,m) t^m u^[N-m]"""
    algebra = TautAlgebra(ring)
    op = PDiffOp(algebra, 1, 1, ring.point_class)
    minus_psi = -ring.psi
    result = CheckResult(identity="pullback-p11")
    for n in range(max_n + 1):
        current = algebra.u(n)
        for j in range(1, max_j + 1):
            current = op(current)
            rhs = algebra.zero()
            for m in range(min(j, n) + 1):
                term = algebra.power(algebra.t(), m) * algebra.u(n - m)
                rhs = rhs + term.scale((minus_psi ** (j - m)) * stirling2(j, m))
            result.record(current == rhs, {"j": j, "N": n}, current, rhs)
    return result
