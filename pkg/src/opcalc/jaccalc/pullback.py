"""
Jacobian 上重言式类沿 sigma_N 的拉回

sigma_N^* tau_k(C) = T_k(0,C)(u^[N]), 结果写成以形式变量 N 为系数的多项式:
键为 (不含 u 的单项式, 平移 j, 底环单项式), 表示 (单项式) * u^[N-j].
两条独立路径:
    A: 闭式公式, 系数直接由 Stirling 数与阶乘组合得到
    B: T_from_P(k,0,1) 实现为微分算子, 作用于若干具体的 u^[N], 再对每个键做 N 的插值
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Optional, Tuple

import sympy

from src.opcalc.combinat import binomial, stirling2
from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.exceptions import RingError, ValidationError, VerificationError
from src.opcalc.jaccalc.t_operators import T_from_P, psi_power
from src.opcalc.jaccalc.xcalc import genus_of
from src.opcalc.models.diffop import realize
from src.opcalc.models.taut import TautAlgebra, TautMonomial, TautPoly
from src.opcalc.ring import Monomial, RingSpec

logger = logging.getLogger(__name__)

N = sympy.Symbol("N")

NKey = Tuple[TautMonomial, int, Monomial]


def _rational(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _shifted_binomial(j: int, e: int) -> sympy.Expr:
    """C(N-j+e, e) 作为 N 的多项式"""
    result = sympy.Integer(1)
    for r in range(1, e + 1):
        result *= (N - j + r)
    return result / factorial(e)


class NPoly:
    """以 N 的多项式为系数的 u^[N-j] 展开"""

    def __init__(self, algebra: TautAlgebra, terms: Optional[Dict[NKey, sympy.Expr]] = None):
        self.algebra = algebra
        self.terms: Dict[NKey, sympy.Expr] = {}
        for key, value in (terms or {}).items():
            self._accumulate(key, value)

    def _accumulate(self, key: NKey, value: sympy.Expr) -> None:
        total = sympy.expand(self.terms.get(key, 0) + value)
        if total == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = total

    def add_taut(self, poly: TautPoly, shift: int, factor: sympy.Expr = sympy.Integer(1)) -> 'NPoly':
        """加上 factor * poly * u^[N-shift]; poly 中的 u^[e] 并入 u^[N-shift]"""
        unit = (1, self.algebra.ring.unit_monomial())
        for mono, coeff in poly:
            e = dict(mono).get(unit, 0)
            rest = tuple((symbol, power) for symbol, power in mono if symbol != unit)
            merged = factor * _shifted_binomial(shift, e)
            for base, c in coeff.terms.items():
                self._accumulate((rest, shift - e, base), _rational(c) * merged)
        return self

    def __sub__(self, other: 'NPoly') -> 'NPoly':
        result = NPoly(self.algebra, self.terms)
        for key, value in other.terms.items():
            result._accumulate(key, -value)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, NPoly):
            return NotImplemented
        return not (self - other).terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[NKey, sympy.Expr]]:
        return iter(sorted(self.terms.items(), key=lambda item: (item[0][1], item[0][0], item[0][2])))

    def evaluate(self, n_value: int) -> TautPoly:
        """代入具体的 N"""
        algebra = self.algebra
        ring = algebra.ring
        result = algebra.zero()
        for (rest, j, base), value in self:
            if n_value - j < 0:
                continue
            c = sympy.Rational(value.subs(N, n_value))
            if c == 0:
                continue
            scalar = ring.monomial(base) * (int(c) if c.q == 1 else Fraction(int(c.p), int(c.q)))
            result = result + (algebra.poly({rest: ring.one()}) * algebra.u(n_value - j)).scale(scalar)
        return result

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ring = self.algebra.ring
        pieces = []
        for (rest, j, base), value in self:
            parts = [f"({value})"]
            if any(base):
                parts.append(ring.format_monomial(base))
            if rest:
                parts.append(self.algebra.format_monomial(rest))
            parts.append(f"u^[N-{j}]" if j > 0 else (f"u^[N+{-j}]" if j < 0 else "u^[N]"))
            pieces.append("*".join(parts))
        return " + ".join(pieces)

    def to_dict(self) -> List[Dict[str, str]]:
        ring = self.algebra.ring
        return [{"monomial": self.algebra.format_monomial(rest) if rest else "1",
                 "shift": j,
                 "base": ring.format_monomial(base),
                 "coefficient": str(value)}
                for (rest, j, base), value in self]


def pullback_algebra(ring: RingSpec) -> TautAlgebra:
    return TautAlgebra(ring, section_relation=True)


def base_dimension(ring: RingSpec) -> Optional[int]:
    """底空间 S 的维数: 点上为 0, psi^d = 0 截断时按 d - 1 计, 否则未知"""
    if ring.options.get("over_point"):
        return 0
    truncation = ring.options.get("psi_truncation")
    if truncation:
        return int(truncation) - 1
    return None


def tau_vanishing(ring: RingSpec, k: int) -> bool:
    """k > g + dim S + 1 时 tau_k(C) 按维数为 0"""
    dim = base_dimension(ring)
    if dim is None:
        return False
    return k > genus_of(ring) + dim + 1


# ---------------------------------------------------------------------- 路径 A

def tau_closed_form(ring: RingSpec, k: int) -> NPoly:
    """闭式展开"""
    if k < 0:
        raise ValidationError(detail=f"k must be nonnegative, got {k}", field="k")
    algebra = pullback_algebra(ring)
    result = NPoly(algebra)
    K = ring.K
    t = algebra.t()

    head = psi_power(ring, k - 1)
    if head:
        result.add_taut(algebra.scalar(head), 0, (-1) ** k * N ** k)

    for i in range(k + 1):
        for n in range(k - i + 1):
            for m in range(k - i - n + 1):
                for p in range(k - i - n - m + 1):
                    l = k - i - n - m - p
                    coeff = Fraction((-1) ** (n + l + m) * factorial(k) * stirling2(i + n, i) * stirling2(m + p, m),
                                     factorial(i + n) * factorial(m + p) * factorial(l))
                    if not coeff:
                        continue
                    psi = psi_power(ring, p + l)
                    if not psi:
                        continue
                    poly = (algebra.x(i, K ** n) * algebra.power(t, m)).scale(psi)
                    result.add_taut(poly, m + i, _rational(coeff) * N ** l)

    for q in range(1, k + 1):
        for i in range(k - q + 1):
            for n in range(k - q - i + 1):
                for m in range(k - q - i - n + 1):
                    for p in range(k - q - i - n - m + 1):
                        l = k - q - i - n - m - p
                        coeff = Fraction(
                            (-1) ** (n + l + m + q) * factorial(k) * factorial(q) * binomial(i + q, i) * binomial(m, q)
                            * stirling2(i + n + q, i + q) * stirling2(m + p, m),
                            factorial(i + n + q) * factorial(m + p) * factorial(l)
                        )
                        if not coeff:
                            continue
                        psi = psi_power(ring, p + l + n + q - 1)
                        if not psi:
                            continue
                        poly = algebra.power(t, m + i).scale(psi)
                        result.add_taut(poly, m + i, -_rational(coeff) * N ** l)
    return result


# ---------------------------------------------------------------------- 路径 B

def sample_points(k: int) -> List[int]:
    """插值用的 N; 取 N >= 2k+1 使每项都还带着 u"""
    return list(range(2 * k + 1, 3 * k + 3))


def tau_operator_route(ring: RingSpec, k: int) -> NPoly:
    """T_k(0,C) 作用于 u^[N] 再插值"""
    algebra = pullback_algebra(ring)
    op = realize(algebra, T_from_P(ring, k, 0, ring.one()))
    unit = (1, ring.unit_monomial())
    samples: Dict[NKey, Dict[int, sympy.Rational]] = {}
    points = sample_points(k)
    for n_value in points:
        image = op(algebra.u(n_value))
        for mono, coeff in image:
            e = dict(mono).get(unit, 0)
            rest = tuple((symbol, power) for symbol, power in mono if symbol != unit)
            for base, c in coeff.terms.items():
                key = (rest, n_value - e, base)
                samples.setdefault(key, {})[n_value] = _rational(c)
    result = NPoly(algebra)
    for key, values in samples.items():
        data = [(n_value, values.get(n_value, 0)) for n_value in points]
        result._accumulate(key, sympy.interpolate(data, N))
    return result


@dataclass
class TauPullback:
    k: int
    closed_form: NPoly
    operator_route: NPoly
    vanishes: bool

    @property
    def value(self) -> NPoly:
        """tau_k(C) 按维数消失时拉回为 0"""
        if self.vanishes:
            return NPoly(self.closed_form.algebra)
        return self.closed_form

    def to_dict(self) -> Dict[str, object]:
        return {
            "k": self.k,
            "closed_form": self.closed_form.to_dict(),
            "operator_route": self.operator_route.to_dict(),
            "vanishes_by_dimension": self.vanishes,
            "value": self.value.to_dict(),
        }


def tau_pullback(ring: RingSpec, k: int) -> TauPullback:
    """两条路径都算; 不一致时直接报错"""
    closed = tau_closed_form(ring, k)
    operator = tau_operator_route(ring, k)
    if closed != operator:
        raise VerificationError(
            detail=f"closed form and operator route differ for k={k}: {closed - operator}",
            identity="tau-pullback"
        )
    return TauPullback(k=k, closed_form=closed, operator_route=operator, vanishes=tau_vanishing(ring, k))


def tau_pullback_check(ring: RingSpec, max_k: int = 4) -> CheckResult:
    """两条路径逐个 k 比较, 报告中附上两边的展开"""
    result = CheckResult(identity="tau-pullback")
    routes: Dict[str, object] = {}
    for k in range(max_k + 1):
        closed = tau_closed_form(ring, k)
        operator = tau_operator_route(ring, k)
        result.record(closed == operator, {"k": k}, closed, operator)
        routes[str(k)] = TauPullback(k, closed, operator, tau_vanishing(ring, k)).to_dict()
    result.data = {"genus": genus_of(ring), "max_k": max_k, "routes": routes}
    logger.info(f"tau pullback on {ring.name}: {result.checked} values of k, {len(result.failures)} failures")
    return result


# ---------------------------------------------------------------------- 修正对角线

def gamma_ek(algebra: TautAlgebra, k: int) -> TautPoly:
    """Gamma_{e,k} = sum_{i+m=k} (-1)^m C(k,m) x_i(1) t^m; i = 0 项是 pi_*(1) = 0"""
    ring = algebra.ring
    t = algebra.t()
    result = algebra.zero()
    for m in range(k + 1):
        i = k - m
        result = result + (algebra.x(i, ring.one()) * algebra.power(t, m)).scale((-1) ** m * binomial(k, m))
    return result


def _require_point(ring: RingSpec, canonical: bool) -> None:
    if not ring.options.get("over_point"):
        raise RingError(detail="the modified diagonal formulas need S to be a point", ring_name=ring.name)
    if canonical and not ring.options.get("canonical_split"):
        raise RingError(detail="the Gross-Schoen form needs K = (2g-2)p0", ring_name=ring.name)


def gs_rhs(ring: RingSpec, k: int) -> NPoly:
    """Gamma_{e,k} * u^[N-k] - 2g delta_{k,2} t * u^[N-1]"""
    if k <= 1:
        raise ValidationError(detail=f"the identity needs k > 1, got {k}", field="k")
    algebra = pullback_algebra(ring)
    result = NPoly(algebra).add_taut(gamma_ek(algebra, k), k)
    if k == 2:
        result.add_taut(algebra.t(), 1, sympy.Integer(-2 * genus_of(ring)))
    return result


def general_rhs(ring: RingSpec, k: int) -> NPoly:
    """
    K 不分裂时的形式:
    Gamma_{e,k} u^[N-k] - sum_{i+m=k-1} (-1)^m C(k,m) C(i+1,2) x_i(K) t^m u^[N-k+1] - 2 delta_{k,2} t u^[N-1]
    """
    if k <= 1:
        raise ValidationError(detail=f"the identity needs k > 1, got {k}", field="k")
    algebra = pullback_algebra(ring)
    t = algebra.t()
    result = NPoly(algebra).add_taut(gamma_ek(algebra, k), k)
    for m in range(k):
        i = k - 1 - m
        coeff = (-1) ** m * binomial(k, m) * binomial(i + 1, 2)
        if coeff:
            result.add_taut(algebra.x(i, ring.K) * algebra.power(t, m), k - 1, sympy.Integer(-coeff))
    if k == 2:
        result.add_taut(t, 1, sympy.Integer(-2))
    return result


def gs_identity_check(ring: RingSpec, max_k: Optional[int] = None, min_k: int = 2) -> CheckResult:
    """min_k <= k <= max_k (默认 2..g+2): 闭式拉回等于 Gamma_{e,k} u^[N-k] - 2g delta_{k,2} t u^[N-1]"""
    _require_point(ring, canonical=True)
    top = genus_of(ring) + 2 if max_k is None else max_k
    result = CheckResult(identity="gross-schoen")
    for k in range(min_k, top + 1):
        rhs = gs_rhs(ring, k)
        lhs = tau_closed_form(ring, k)
        result.record(lhs == rhs, {"k": k, "form": "canonical"}, lhs, rhs)
    result.data = {"genus": genus_of(ring), "max_k": top,
                   "gamma": {str(k): str(gamma_ek(pullback_algebra(ring), k)) for k in range(max(min_k, 2), top + 1)}}
    return result


def gross_schoen_general_check(ring: RingSpec, max_k: Optional[int] = None) -> CheckResult:
    """K 不取 (2g-2)p0 时, 带 x_i(K) 修正项的形式"""
    _require_point(ring, canonical=False)
    top = genus_of(ring) + 2 if max_k is None else max_k
    result = CheckResult(identity="gross-schoen-general")
    for k in range(2, top + 1):
        lhs = tau_closed_form(ring, k)
        rhs = general_rhs(ring, k)
        result.record(lhs == rhs, {"k": k, "form": "general"}, lhs, rhs)
    return result
