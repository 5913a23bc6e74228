"""
平凡族情形的 L 基

L_{m,k}(a) = P_{m,k}(a) - mk P_{m-1,k-1}(chi a),  2 chi = a0, a0^2 = 0, psi = 0
逆变换 P_{m,k}(a) = sum_j m(m-1)..(m-j+1) k(k-1)..(k-j+1) L_{m-j,k-j}(chi^j a)
在 L 基中括号化为 Heisenberg-Virasoro 型: [L_{m,k}(a), L_{m',k'}(a')] = (km'-mk') L_{m+m'-1,k+k'-1}(a a')
"""
from typing import Dict, Optional

from src.opcalc.combinat import falling
from src.opcalc.exceptions import RingError, ValidationError
from src.opcalc.liealg.LieElem import LieElem, PKey
from src.opcalc.ring import RingElem, RingSpec


def default_chi(ring: RingSpec) -> RingElem:
    return ring.theta_characteristic()


def validate_chi(ring: RingSpec, chi: RingElem) -> None:
    if chi.ring is not ring:
        raise ValidationError(detail="chi lives in another ring", field="chi")
    if chi * 2 != ring.a0:
        raise ValidationError(detail=f"2*({chi}) != a0 = {ring.a0}", field="chi")
    if not ring.psi.is_zero():
        raise RingError(
            detail="the L-basis needs a trivial family: psi must vanish in the ring",
            ring_name=ring.name
        )
    if not (ring.a0 * ring.a0).is_zero():
        raise RingError(detail="the L-basis needs a0^2 = 0", ring_name=ring.name)


def _accumulate(target: Dict[PKey, RingElem], m: int, k: int, value: RingElem) -> None:
    for fiber, base in value.fiber_components().items():
        key = (m, k, fiber)
        target[key] = target[key] + base if key in target else base


def from_L_basis(x: LieElem, chi: Optional[RingElem] = None) -> LieElem:
    """把以 L 为基的元素展开成 P 基"""
    ring = x.ring
    if x.basis != "L":
        raise ValidationError(detail="from_L_basis expects an L-basis element", field="basis")
    chi = default_chi(ring) if chi is None else chi
    validate_chi(ring, chi)
    result: Dict[PKey, RingElem] = {}
    for (m, k, mono), coeff in x.terms.items():
        a = ring.monomial(mono) * coeff
        _accumulate(result, m, k, a)
        if m >= 1 and k >= 1:
            _accumulate(result, m - 1, k - 1, chi * a * (-m * k))
    return LieElem(ring, result, "P")


def to_L_basis(x: LieElem, chi: Optional[RingElem] = None) -> LieElem:
    ring = x.ring
    if x.basis != "P":
        raise ValidationError(detail="to_L_basis expects a P-basis element", field="basis")
    chi = default_chi(ring) if chi is None else chi
    validate_chi(ring, chi)
    result: Dict[PKey, RingElem] = {}
    for (m, k, mono), coeff in x.terms.items():
        a = ring.monomial(mono) * coeff
        power = a
        for j in range(min(m, k) + 1):
            if power.is_zero():
                break
            _accumulate(result, m - j, k - j, power * (falling(m, j) * falling(k, j)))
            power = chi * power
    return LieElem(ring, result, "L")


def L(ring: RingSpec, m: int, k: int, a: RingElem) -> LieElem:
    return LieElem.P(ring, m, k, a, basis="L")


def bracket_L(x: LieElem, y: LieElem, chi: Optional[RingElem] = None) -> LieElem:
    from src.opcalc.liealg.bracket import bracket
    return to_L_basis(bracket(from_L_basis(x, chi), from_L_basis(y, chi)), chi)
