"""
有展示的分次超交换系数环 A

单项式是与生成元列表对齐的指数元组; 奇生成元指数不超过 1,
乘法在合并奇因子时记录 Koszul 符号. 重写规则在载入时检查齐次性,
并要求每条规则在良基序 (纤维次数, 因子个数, 指数字典序) 下严格下降,
从而保证化简终止.
"""
import hashlib
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Sequence, Tuple, Union

from src.opcalc.exceptions import ExactnessError, RingError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Monomial = Tuple[int, ...]
Poly = Dict[Monomial, Scalar]


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    parity: Literal["even", "odd"]
    degree: int
    base: bool = False

    @property
    def is_odd(self) -> bool:
        return self.parity == "odd"


@dataclass(frozen=True)
class RewriteRule:
    lhs: Monomial
    rhs: Tuple[Tuple[Monomial, Scalar], ...]


def normalize_scalar(value: Scalar, rational: bool) -> Scalar:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value.numerator)
        if not rational:
            raise ExactnessError(
                detail=f"non-integral coefficient {value} in integer mode",
                operation="normalize_scalar"
            )
        return value
    return int(value)


class RingSpec:
    """环的展示: 生成元, 重写规则, a0, 推前表, 限制表"""

    def __init__(
        self,
        name: str,
        generators: Sequence[GeneratorSpec],
        rules: Sequence[Tuple[Monomial, Poly]] = (),
        a0: Optional[Poly] = None,
        pushforward: Optional[Mapping[Monomial, Poly]] = None,
        restriction: Optional[Mapping[str, Poly]] = None,
        *,
        scalar_mode: Literal["integer", "rational"] = "integer",
        truncation: Optional[int] = None,
        a0_degree: int = 1,
        point_class: Optional[Poly] = None,
        psi: Optional[str] = None,
        options: Optional[Mapping[str, object]] = None,
        description: str = "",
    ):
        self.name = name
        self.generators: Tuple[GeneratorSpec, ...] = tuple(generators)
        self.scalar_mode = scalar_mode
        self.truncation = truncation
        self.a0_degree = a0_degree
        self.options = dict(sorted((options or {}).items()))
        self.description = description
        self._index = {gen.name: i for i, gen in enumerate(self.generators)}
        self._odd = tuple(gen.is_odd for gen in self.generators)
        self._degrees = tuple(gen.degree for gen in self.generators)
        self._base = tuple(gen.base for gen in self.generators)
        self._validate_generators()
        self.psi_name = psi if psi in self._index else None
        self.rules: Tuple[RewriteRule, ...] = tuple(
            RewriteRule(lhs=tuple(lhs), rhs=tuple(sorted(rhs.items()))) for lhs, rhs in rules
        )
        self._validate_rules()
        self._reduce_cache: Dict[Monomial, Poly] = {}
        self._a0_raw = dict(a0 or {})
        self._point_raw = dict(point_class or {})
        self._pushforward_raw = {tuple(k): dict(v) for k, v in (pushforward or {}).items()}
        self._restriction_raw = {k: dict(v) for k, v in (restriction or {}).items()}
        self._validate_tables()
        logger.debug(f"ring {self.name} loaded with {len(self.generators)} generators and {len(self.rules)} rules")

    # ------------------------------------------------------------------ 校验

    def _validate_generators(self) -> None:
        if len(self._index) != len(self.generators):
            raise RingError(detail="generator names must be unique", ring_name=self.name)
        for gen in self.generators:
            if not gen.name.isidentifier():
                raise RingError(detail=f"invalid generator name '{gen.name}'", ring_name=self.name)
            if gen.degree < 1:
                raise RingError(detail=f"generator '{gen.name}' must have positive degree", ring_name=self.name)
            if gen.base and gen.is_odd:
                raise RingError(detail=f"base generator '{gen.name}' must be even", ring_name=self.name)

    def _measure(self, mono: Monomial) -> Tuple[int, int, Monomial]:
        fiber_degree = sum(e * d for e, d, b in zip(mono, self._degrees, self._base) if not b)
        return fiber_degree, sum(mono), mono

    def _validate_rules(self) -> None:
        for rule in self.rules:
            if len(rule.lhs) != len(self.generators):
                raise RingError(detail="rule monomial has wrong arity", ring_name=self.name)
            if any(e > 1 and odd for e, odd in zip(rule.lhs, self._odd)):
                raise RingError(detail="rule lhs contains an odd square", ring_name=self.name)
            lhs_degree = self.degree(rule.lhs)
            lhs_parity = self.parity(rule.lhs)
            for mono, coeff in rule.rhs:
                if self.degree(mono) != lhs_degree or self.parity(mono) != lhs_parity:
                    raise RingError(
                        detail=f"rule for {self.format_monomial(rule.lhs)} is not homogeneous",
                        ring_name=self.name
                    )
                if not self._measure(mono) < self._measure(rule.lhs):
                    raise RingError(
                        detail=f"rule for {self.format_monomial(rule.lhs)} does not decrease the rewrite order",
                        ring_name=self.name
                    )
                normalize_scalar(coeff, self.rational)

    def _validate_tables(self) -> None:
        if self._a0_raw and any(self.parity(m) for m in self._a0_raw):
            raise RingError(detail="a0 must be even", ring_name=self.name)
        for fiber, image in self._pushforward_raw.items():
            if any(fiber[i] for i in range(len(fiber)) if self._base[i]):
                raise RingError(detail="pushforward table keys must be fiber monomials", ring_name=self.name)
            for mono in image:
                if not self.is_base_monomial(mono):
                    raise RingError(detail="pushforward values must lie in the base", ring_name=self.name)
                if self.degree(mono) != self.degree(fiber) - self.a0_degree:
                    raise RingError(
                        detail=f"pushforward of {self.format_monomial(fiber)} has the wrong degree",
                        ring_name=self.name
                    )
        for gen_name, image in self._restriction_raw.items():
            if gen_name not in self._index:
                raise RingError(detail=f"restriction of unknown generator '{gen_name}'", ring_name=self.name)
            for mono in image:
                if not self.is_base_monomial(mono):
                    raise RingError(detail="restriction values must lie in the base", ring_name=self.name)

    # ------------------------------------------------------------------ 基本属性

    @property
    def rational(self) -> bool:
        return self.scalar_mode == "rational"

    @property
    def arity(self) -> int:
        return len(self.generators)

    def generator_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError(detail=f"unknown generator '{name}'", ring_name=self.name)

    def has_generator(self, name: str) -> bool:
        return name in self._index

    def unit_monomial(self) -> Monomial:
        return (0,) * self.arity

    def generator_monomial(self, name: str) -> Monomial:
        mono = [0] * self.arity
        mono[self.generator_index(name)] = 1
        return tuple(mono)

    def degree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self._degrees))

    def parity(self, mono: Monomial) -> int:
        return sum(e for e, odd in zip(mono, self._odd) if odd) % 2

    def is_base_monomial(self, mono: Monomial) -> bool:
        return all(not e or b for e, b in zip(mono, self._base))

    def split_monomial(self, mono: Monomial) -> Tuple[Monomial, Monomial]:
        """mono = base * fiber; 底生成元都是偶的, 所以没有符号"""
        base = tuple(e if b else 0 for e, b in zip(mono, self._base))
        fiber = tuple(0 if b else e for e, b in zip(mono, self._base))
        return base, fiber

    # ------------------------------------------------------------------ 单项式乘法与化简

    def mono_mul(self, left: Monomial, right: Monomial) -> Optional[Tuple[int, Monomial]]:
        """left*right = sign * merged; 奇因子平方为零时返回 None"""
        inversions = 0
        odd_left_after = 0
        for i in range(self.arity - 1, -1, -1):
            if not self._odd[i]:
                continue
            if left[i] and right[i]:
                return None
            if right[i]:
                inversions += odd_left_after
            if left[i]:
                odd_left_after += 1
        merged = tuple(a + b for a, b in zip(left, right))
        return (-1 if inversions % 2 else 1), merged

    def _divides(self, small: Monomial, big: Monomial) -> bool:
        return all(a <= b for a, b in zip(small, big))

    def _apply_rule(self, mono: Monomial, rule: RewriteRule) -> Poly:
        rest = tuple(b - a for a, b in zip(rule.lhs, mono))
        sign, merged = self.mono_mul(rule.lhs, rest)
        assert merged == mono
        result: Poly = {}
        for rhs_mono, coeff in rule.rhs:
            step = self.mono_mul(rhs_mono, rest)
            if step is None:
                continue
            step_sign, target = step
            _accumulate(result, target, sign * step_sign * coeff)
        return result

    def find_rule(self, mono: Monomial) -> Optional[RewriteRule]:
        for rule in self.rules:
            if self._divides(rule.lhs, mono):
                return rule
        return None

    def reduce_monomial(self, mono: Monomial) -> Poly:
        cached = self._reduce_cache.get(mono)
        if cached is not None:
            return cached
        if self.truncation is not None and self.degree(mono) > self.truncation:
            result: Poly = {}
        else:
            rule = self.find_rule(mono)
            if rule is None:
                result = {mono: 1}
            else:
                result = self.reduce_poly(self._apply_rule(mono, rule))
        self._reduce_cache[mono] = result
        return result

    def reduce_poly(self, poly: Mapping[Monomial, Scalar]) -> Poly:
        result: Poly = {}
        for mono, coeff in poly.items():
            if not coeff:
                continue
            for target, value in self.reduce_monomial(mono).items():
                _accumulate(result, target, coeff * value)
        return {m: normalize_scalar(c, self.rational) for m, c in result.items()}

    def reduce_with_first(self, mono: Monomial, rule: RewriteRule) -> Poly:
        """先用指定规则重写一步, 再完全化简; 用于局部合流检查"""
        return self.reduce_poly(self._apply_rule(mono, rule))

    def is_normal(self, mono: Monomial) -> bool:
        if self.truncation is not None and self.degree(mono) > self.truncation:
            return False
        return self.find_rule(mono) is None

    # ------------------------------------------------------------------ 元素构造

    def element(self, poly: Mapping[Monomial, Scalar]) -> 'RingElem':
        from src.opcalc.ring.RingElem import RingElem
        return RingElem(self, self.reduce_poly(poly))

    def zero(self) -> 'RingElem':
        from src.opcalc.ring.RingElem import RingElem
        return RingElem(self, {})

    def one(self) -> 'RingElem':
        return self.element({self.unit_monomial(): 1})

    def scalar(self, value: Scalar) -> 'RingElem':
        return self.element({self.unit_monomial(): value})

    def gen(self, name: str) -> 'RingElem':
        return self.element({self.generator_monomial(name): 1})

    def monomial(self, mono: Monomial) -> 'RingElem':
        return self.element({tuple(mono): 1})

    @property
    def a0(self) -> 'RingElem':
        return self.element(self._a0_raw)

    @property
    def K(self) -> 'RingElem':
        return self.a0

    def point_class_monomial(self) -> Monomial:
        """[p0] 作为单个生成元单项式"""
        if len(self._point_raw) != 1 or list(self._point_raw.values())[0] != 1:
            raise RingError(detail="[p0] must be a single monomial with coefficient 1", ring_name=self.name)
        return next(iter(self._point_raw))

    @property
    def point_class(self) -> 'RingElem':
        if not self._point_raw:
            raise RingError(detail="ring has no point class [p0]", ring_name=self.name)
        return self.element(self._point_raw)

    @property
    def psi(self) -> 'RingElem':
        if self.psi_name is None:
            return self.zero()
        return self.gen(self.psi_name)

    def half(self, x: 'RingElem', what: str) -> 'RingElem':
        if self.rational:
            return x * Fraction(1, 2)
        if any(isinstance(c, Fraction) or c % 2 for c in x.terms.values()):
            raise RingError(detail=f"{what} needs rational mode: {x} is not 2-divisible", ring_name=self.name)
        return self.element({m: c // 2 for m, c in x.terms.items()})

    def theta_characteristic(self) -> 'RingElem':
        """chi with 2 chi = a0"""
        return self.half(self.a0, "theta characteristic")

    def eta(self) -> 'RingElem':
        """eta = K/2 + [p0] + psi/2"""
        return self.half(self.a0 + self.psi, "eta") + self.point_class

    # ------------------------------------------------------------------ 推前与限制

    def pushforward_poly(self, poly: Mapping[Monomial, Scalar]) -> Poly:
        result: Poly = {}
        for mono, coeff in poly.items():
            base, fiber = self.split_monomial(mono)
            image = self._pushforward_raw.get(fiber)
            if not image:
                continue
            for target, value in image.items():
                step = self.mono_mul(base, target)
                if step is None:
                    continue
                sign, merged = step
                _accumulate(result, merged, sign * coeff * value)
        return self.reduce_poly(result)

    def restriction_image(self, index: int) -> Poly:
        gen = self.generators[index]
        if gen.base:
            mono = [0] * self.arity
            mono[index] = 1
            return {tuple(mono): 1}
        return self._restriction_raw.get(gen.name, {})

    def restrict_poly(self, poly: Mapping[Monomial, Scalar]) -> Poly:
        """p0^*: 环同态, 生成元的像由限制表给出, 表中未列出的纤维生成元映为 0"""
        result: Poly = {}
        for mono, coeff in poly.items():
            image: Poly = {self.unit_monomial(): coeff}
            for index, exponent in enumerate(mono):
                for _ in range(exponent):
                    image = self.poly_mul(image, self.restriction_image(index))
                    if not image:
                        break
                if not image:
                    break
            for target, value in image.items():
                _accumulate(result, target, value)
        return self.reduce_poly(result)

    def poly_mul(self, left: Mapping[Monomial, Scalar], right: Mapping[Monomial, Scalar]) -> Poly:
        result: Poly = {}
        for m1, c1 in left.items():
            for m2, c2 in right.items():
                step = self.mono_mul(m1, m2)
                if step is None:
                    continue
                sign, merged = step
                for target, value in self.reduce_monomial(merged).items():
                    _accumulate(result, target, sign * c1 * c2 * value)
        return {m: normalize_scalar(c, self.rational) for m, c in result.items()}

    # ------------------------------------------------------------------ 基与展示

    def fiber_basis(self, max_degree: int) -> List[Monomial]:
        """次数不超过 max_degree 的约化纤维单项式, 按 (次数, 指数) 排序"""
        fiber_indices = [i for i, gen in enumerate(self.generators) if not gen.base]
        ranges = []
        for i in fiber_indices:
            limit = 1 if self._odd[i] else max_degree // self._degrees[i]
            ranges.append(range(limit + 1))
        basis = []
        for exps in product(*ranges):
            mono = [0] * self.arity
            for i, e in zip(fiber_indices, exps):
                mono[i] = e
            mono = tuple(mono)
            if self.degree(mono) <= max_degree and self.is_normal(mono):
                basis.append(mono)
        return sorted(basis, key=lambda m: (self.degree(m), tuple(-e for e in m)))

    def monomials_up_to(self, max_degree: int) -> List[Monomial]:
        ranges = []
        for i in range(self.arity):
            limit = 1 if self._odd[i] else max_degree // self._degrees[i]
            ranges.append(range(limit + 1))
        result = [tuple(e) for e in product(*ranges) if self.degree(tuple(e)) <= max_degree]
        return sorted(result, key=lambda m: (self.degree(m), tuple(-e for e in m)))

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for gen, e in zip(self.generators, mono):
            if e == 1:
                parts.append(gen.name)
            elif e > 1:
                parts.append(f"{gen.name}^{e}")
        return "*".join(parts) if parts else "1"

    def describe(self) -> str:
        """规范描述文本, 用作指纹"""
        lines = [f"name={self.name}", f"scalar_mode={self.scalar_mode}", f"truncation={self.truncation}",
                 f"a0_degree={self.a0_degree}"]
        for gen in self.generators:
            lines.append(f"gen {gen.name} {gen.parity} {gen.degree} {'base' if gen.base else 'fiber'}")
        for rule in self.rules:
            rhs = " + ".join(f"{c}*{self.format_monomial(m)}" for m, c in rule.rhs) or "0"
            lines.append(f"rule {self.format_monomial(rule.lhs)} = {rhs}")
        lines.append(f"a0 = {_format_raw(self, self._a0_raw)}")
        lines.append(f"point = {_format_raw(self, self._point_raw)}")
        for fiber in sorted(self._pushforward_raw):
            lines.append(f"push {self.format_monomial(fiber)} = {_format_raw(self, self._pushforward_raw[fiber])}")
        for name in sorted(self._restriction_raw):
            lines.append(f"restrict {name} = {_format_raw(self, self._restriction_raw[name])}")
        for key, value in self.options.items():
            lines.append(f"option {key}={value}")
        return "\n".join(lines)

    def fingerprint(self) -> str:
        return hashlib.sha256(self.describe().encode("utf-8")).hexdigest()[:16]

    def pushforward_table(self) -> Dict[Monomial, Poly]:
        return dict(self._pushforward_raw)

    def __repr__(self) -> str:
        return f"RingSpec({self.name})"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_reduce_cache"] = {}
        return state


def _accumulate(target: Poly, key, value) -> None:
    total = target.get(key, 0) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def _format_raw(ring: RingSpec, poly: Mapping[Monomial, Scalar]) -> str:
    if not poly:
        return "0"
    return " + ".join(f"{c}*{ring.format_monomial(m)}" for m, c in sorted(poly.items()))


def monomial_from_exponents(ring: RingSpec, exponents: Mapping[str, int]) -> Monomial:
    mono = [0] * ring.arity
    for name, e in exponents.items():
        mono[ring.generator_index(name)] = e
    return tuple(mono)


def iter_rule_pairs(ring: RingSpec) -> Iterable[Tuple[RewriteRule, RewriteRule]]:
    for i, first in enumerate(ring.rules):
        for second in ring.rules[i + 1:]:
            yield first, second
