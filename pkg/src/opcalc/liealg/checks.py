"""D(A,a0) 的穷举检查: 超 Jacobi, 反对称, 双次数可加, 中心性, Heisenberg 子关系, HV 括号"""
import logging
from typing import List, Optional, Sequence

from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.common.SweepRunner import run_sweep
from src.opcalc.liealg.LieElem import LieElem, PKey, key_bidegree
from src.opcalc.liealg.bracket import bracket, centralize, super_sign
from src.opcalc.liealg.l_basis import L, bracket_L, default_chi
from src.opcalc.ring import RingElem, RingSpec
from src.opcalc.ring.checks import pairing

logger = logging.getLogger(__name__)


def default_basis_degree(ring: RingSpec) -> int:
    return ring.truncation if ring.truncation is not None else 2


def pgen_basis(ring: RingSpec, max_m: int, max_k: int, basis_degree: Optional[int] = None) -> List[PKey]:
    degree = default_basis_degree(ring) if basis_degree is None else basis_degree
    fibers = ring.fiber_basis(degree)
    return [(m, k, mono) for m in range(max_m + 1) for k in range(max_k + 1) for mono in fibers]


def _element(ring: RingSpec, key: PKey) -> LieElem:
    return LieElem(ring, {key: ring.one()})


def _label(ring: RingSpec, key: PKey) -> str:
    m, k, mono = key
    return f"P({m},{k}; {ring.format_monomial(mono)})"


def jacobiator(x: LieElem, y: LieElem, z: LieElem) -> LieElem:
    """[x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]"""
    return bracket(x, bracket(y, z)) - bracket(bracket(x, y), z) - bracket(y, bracket(x, z)).scale(super_sign(x, y))


def _jacobi_chunk(ring: RingSpec, basis: Sequence[PKey], first: int) -> CheckResult:
    result = CheckResult(identity="super-jacobi")
    elements = [_element(ring, key) for key in basis]
    x = elements[first]
    for j in range(first, len(basis)):
        for l in range(j, len(basis)):
            value = jacobiator(x, elements[j], elements[l])
            result.record(
                value.is_zero(),
                {"x": _label(ring, basis[first]), "y": _label(ring, basis[j]), "z": _label(ring, basis[l])},
                value, 0
            )
    return result


def super_jacobi_check(ring: RingSpec, max_m: int, max_k: int, basis_degree: Optional[int] = None,
                       threads: Optional[int] = None) -> CheckResult:
    """
    所有基三元组 (按基序 x <= y <= z) 上的超 Jacobi 恒等式;
    反对称单独检查, 因此 Jacobi 子对三元组的排列只需检查一次
    """
    basis = pgen_basis(ring, max_m, max_k, basis_degree)
    result = run_sweep("super-jacobi", _jacobi_chunk, list(range(len(basis))), shared=(ring, basis), threads=threads)
    result.data = {"basis_size": len(basis), "max_m": max_m, "max_k": max_k}
    return result


def antisymmetry_check(ring: RingSpec, max_m: int, max_k: int, basis_degree: Optional[int] = None) -> CheckResult:
    result = CheckResult(identity="super-antisymmetry")
    basis = pgen_basis(ring, max_m, max_k, basis_degree)
    for i, left in enumerate(basis):
        for right in basis[i:]:
            x, y = _element(ring, left), _element(ring, right)
            value = bracket(x, y) + bracket(y, x).scale(super_sign(x, y))
            result.record(value.is_zero(), {"x": _label(ring, left), "y": _label(ring, right)}, value, 0)
    return result


def bidegree_additivity_check(ring: RingSpec, max_m: int, max_k: int,
                              basis_degree: Optional[int] = None) -> CheckResult:
    """括号中每一项的 (codim, weight) 等于两输入之和; 底环系数的次数计入 codim"""
    result = CheckResult(identity="bidegree-additivity")
    basis = pgen_basis(ring, max_m, max_k, basis_degree)
    for left in basis:
        for right in basis:
            expected = key_bidegree(ring, left) + key_bidegree(ring, right)
            value = bracket(_element(ring, left), _element(ring, right))
            for key, coeff in value.terms.items():
                for base_mono in coeff.terms:
                    actual = key_bidegree(ring, key, base_mono)
                    result.record(actual == expected,
                                  {"x": _label(ring, left), "y": _label(ring, right), "term": _label(ring, key)},
                                  actual, expected)
    return result


def centrality_check(ring: RingSpec, max_index: int = 6, basis_degree: Optional[int] = None) -> CheckResult:
    result = CheckResult(identity="p00-centrality")
    fibers = ring.fiber_basis(default_basis_degree(ring) if basis_degree is None else basis_degree)
    basis = pgen_basis(ring, max_index, max_index, basis_degree)
    for mono in fibers:
        center = _element(ring, (0, 0, mono))
        for key in basis:
            value = bracket(center, _element(ring, key))
            result.record(value.is_zero(), {"a": ring.format_monomial(mono), "y": _label(ring, key)}, value, 0)
    return result


def heisenberg_subrelations_check(ring: RingSpec, basis_degree: Optional[int] = None) -> CheckResult:
    """[P10(a),P10(a')] = [P01(a),P01(a')] = 0, [P01(a),P10(a')] 中心化后为 <a,a'>"""
    result = CheckResult(identity="heisenberg-subrelations")
    fibers = ring.fiber_basis(default_basis_degree(ring) if basis_degree is None else basis_degree)
    for left in fibers:
        for right in fibers:
            a, a2 = ring.monomial(left), ring.monomial(right)
            params = {"a": str(a), "a'": str(a2)}
            rows = bracket(LieElem.P(ring, 1, 0, a), LieElem.P(ring, 1, 0, a2))
            cols = bracket(LieElem.P(ring, 0, 1, a), LieElem.P(ring, 0, 1, a2))
            result.record(rows.is_zero(), {**params, "pair": "P10,P10"}, rows, 0)
            result.record(cols.is_zero(), {**params, "pair": "P01,P01"}, cols, 0)
            rest, scalar = centralize(bracket(LieElem.P(ring, 0, 1, a), LieElem.P(ring, 1, 0, a2)))
            expected = pairing(a, a2)
            result.record(rest.is_zero() and scalar == expected, {**params, "pair": "P01,P10"}, scalar, expected)
    return result


def hv_bracket_check(ring: RingSpec, total: int = 4, chi: Optional[RingElem] = None,
                     basis_degree: Optional[int] = None) -> CheckResult:
    """L 基中 [L_{m,k}(a), L_{m',k'}(a')] = (km'-mk') L_{m+m'-1,k+k'-1}(a a'), m+k, m'+k' <= total"""
    result = CheckResult(identity="hv-bracket")
    chi = default_chi(ring) if chi is None else chi
    fibers = ring.fiber_basis(default_basis_degree(ring) if basis_degree is None else basis_degree)
    indices = [(m, k) for m in range(total + 1) for k in range(total + 1 - m)]
    for m, k in indices:
        for m2, k2 in indices:
            for left in fibers:
                for right in fibers:
                    a, a2 = ring.monomial(left), ring.monomial(right)
                    value = bracket_L(L(ring, m, k, a), L(ring, m2, k2, a2), chi)
                    coeff = k * m2 - m * k2
                    if coeff and m + m2 >= 1 and k + k2 >= 1:
                        expected = L(ring, m + m2 - 1, k + k2 - 1, a * a2).scale(coeff)
                    else:
                        expected = LieElem.zero(ring, "L")
                    result.record(value == expected,
                                  {"x": f"L({m},{k}; {a})", "y": f"L({m2},{k2}; {a2})"}, value, expected)
    return result
