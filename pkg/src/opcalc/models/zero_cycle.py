"""
零圈模型 A[t]: x_1..x_r 生成的交换环, 总次数 > g 的单项式为零, 再添一个多项式变量 t

delta_m 是满足 delta_m(x_p) = x_p^m, delta_m(t) = 0 的导子;
P_{m,1} = sum_{j<m} C(m,j) t^j delta_{m-j} + t^m d/dt.
"""
import logging
import random
from typing import Callable, Dict, Iterator, Tuple

from src.opcalc.combinat import binomial
from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.exceptions import ValidationError

logger = logging.getLogger(__name__)

# (x 指数, t 指数)
ZcKey = Tuple[Tuple[int, ...], int]


class ZeroCycleModel:

    def __init__(self, genus: int, generators: int = 3):
        if genus < 0 or generators < 1:
            raise ValidationError(detail=f"need genus >= 0 and generators >= 1, got ({genus},{generators})",
                                  field="zero_cycle")
        self.genus = genus
        self.generators = generators

    def element(self, terms: Dict[ZcKey, int]) -> 'ZcElem':
        return ZcElem(self, {key: c for key, c in terms.items() if sum(key[0]) <= self.genus})

    def zero(self) -> 'ZcElem':
        return ZcElem(self, {})

    def one(self) -> 'ZcElem':
        return self.element({((0,) * self.generators, 0): 1})

    def x(self, p: int) -> 'ZcElem':
        if not 1 <= p <= self.generators:
            raise ValidationError(detail=f"generator index {p} out of range", field="generator")
        exps = [0] * self.generators
        exps[p - 1] = 1
        return self.element({(tuple(exps), 0): 1})

    def t(self) -> 'ZcElem':
        return self.element({((0,) * self.generators, 1): 1})

    def monomials(self, max_t: int = 0) -> Iterator['ZcElem']:
        """所有非零的 x 单项式乘 t^c, c <= max_t"""
        def exps(rest: int, slots: int) -> Iterator[Tuple[int, ...]]:
            if slots == 0:
                yield ()
                return
            for e in range(rest + 1):
                for tail in exps(rest - e, slots - 1):
                    yield (e,) + tail

        for c in range(max_t + 1):
            for e in exps(self.genus, self.generators):
                yield self.element({(e, c): 1})

    def random_monomial(self, rng: random.Random, max_t: int = 0) -> 'ZcElem':
        degree = rng.randint(0, self.genus)
        exps = [0] * self.generators
        for _ in range(degree):
            exps[rng.randrange(self.generators)] += 1
        return self.element({(tuple(exps), rng.randint(0, max_t)): 1})


class ZcElem:
    __slots__ = ("model", "terms")

    def __init__(self, model: ZeroCycleModel, terms: Dict[ZcKey, int]):
        self.model = model
        self.terms = {key: c for key, c in terms.items() if c}

    def __add__(self, other: 'ZcElem') -> 'ZcElem':
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) + c
        return ZcElem(self.model, terms)

    def __neg__(self) -> 'ZcElem':
        return ZcElem(self.model, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: 'ZcElem') -> 'ZcElem':
        return self + (-other)

    def scale(self, factor: int) -> 'ZcElem':
        return ZcElem(self.model, {key: c * factor for key, c in self.terms.items()})

    def __mul__(self, other) -> 'ZcElem':
        if isinstance(other, int):
            return self.scale(other)
        terms: Dict[ZcKey, int] = {}
        for (e1, c1), a in self.terms.items():
            for (e2, c2), b in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if sum(e) > self.model.genus:
                    continue
                key = (e, c1 + c2)
                terms[key] = terms.get(key, 0) + a * b
        return ZcElem(self.model, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> 'ZcElem':
        result = self.model.one()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, ZcElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (exps, c), coeff in sorted(self.terms.items()):
            factors = [f"x{p + 1}" if e == 1 else f"x{p + 1}^{e}" for p, e in enumerate(exps) if e]
            if c:
                factors.append("t" if c == 1 else f"t^{c}")
            body = "*".join(factors) or "1"
            if coeff == 1:
                pieces.append(body)
            elif coeff == -1:
                pieces.append(f"-{body}")
            else:
                pieces.append(f"{coeff}*{body}" if factors else str(coeff))
        return " + ".join(pieces).replace("+ -", "- ")


ZcOperator = Callable[[ZcElem], ZcElem]


def delta_apply(m: int, x: ZcElem) -> ZcElem:
    """delta_m(prod x_p^{e_p} t^c) = sum_p e_p x_p^{e_p+m-1} (其余不变) t^c"""
    if m < 1:
        raise ValidationError(detail=f"delta_m needs m >= 1, got {m}", field="m")
    model = x.model
    terms: Dict[ZcKey, int] = {}
    for (exps, c), coeff in x.terms.items():
        for p, e in enumerate(exps):
            if not e:
                continue
            raised = list(exps)
            raised[p] += m - 1
            if sum(raised) > model.genus:
                continue
            key = (tuple(raised), c)
            terms[key] = terms.get(key, 0) + coeff * e
    return ZcElem(model, terms)


def d_dt(x: ZcElem) -> ZcElem:
    terms: Dict[ZcKey, int] = {}
    for (exps, c), coeff in x.terms.items():
        if c:
            key = (exps, c - 1)
            terms[key] = terms.get(key, 0) + coeff * c
    return ZcElem(x.model, terms)


def P_m1_realize(m: int) -> ZcOperator:
    """P_{m,1}(C) 在 A[t] 上的作用"""
    if m < 1:
        raise ValidationError(detail=f"P_{{m,1}} needs m >= 1, got {m}", field="m")

    def apply(x: ZcElem) -> ZcElem:
        model = x.model
        t = model.t()
        result = (t ** m) * d_dt(x)
        for j in range(m):
            result = result + ((t ** j) * delta_apply(m - j, x)).scale(binomial(m, j))
        return result

    return apply


def _commutator(first: ZcOperator, second: ZcOperator, x: ZcElem) -> ZcElem:
    return first(second(x)) - second(first(x))


def witt_delta_check(max_m: int = 4, genus: int = 4, generators: int = 3, trials: int = 200,
                     seed: int = 0) -> CheckResult:
    """[delta_m, delta_m'] = (m'-m) delta_{m+m'-1}: 在生成元与随机单项式上检查"""
    model = ZeroCycleModel(genus, generators)
    rng = random.Random(seed)
    samples = [model.x(p) for p in range(1, generators + 1)]
    samples += [model.random_monomial(rng) for _ in range(trials)]
    result = CheckResult(identity="witt-delta")
    for m in range(1, max_m + 1):
        for m2 in range(1, max_m + 1):
            for x in samples:
                lhs = _commutator(lambda y: delta_apply(m, y), lambda y: delta_apply(m2, y), x)
                rhs = delta_apply(m + m2 - 1, x).scale(m2 - m)
                result.record(lhs == rhs, {"m": m, "m2": m2, "x": str(x)}, lhs, rhs, x)
    logger.info(f"witt-delta: {result.checked} instances, {len(result.failures)} failures")
    return result


def witt_P_m1_check(max_m: int = 4, genus: int = 4, generators: int = 3, max_t: int = 2) -> CheckResult:
    """[P_{m,1}, P_{m',1}] = (m'-m) P_{m+m'-1,1} 在 A[t] 的所有单项式上"""
    model = ZeroCycleModel(genus, generators)
    samples = list(model.monomials(max_t))
    result = CheckResult(identity="witt-P-m1")
    for m in range(1, max_m + 1):
        for m2 in range(1, max_m + 1):
            first, second, target = P_m1_realize(m), P_m1_realize(m2), P_m1_realize(m + m2 - 1)
            for x in samples:
                lhs = _commutator(first, second, x)
                rhs = target(x).scale(m2 - m)
                result.record(lhs == rhs, {"m": m, "m2": m2, "x": str(x)}, lhs, rhs, x)
    return result


def P_m1_values_check(max_m: int = 5, genus: int = 6, generators: int = 3) -> CheckResult:
    """P_{m,1}(x_p) = (x_p + t)^m - t^m, P_{m,1}(t) = t^m, P_{m,1}(1) = 0"""
    model = ZeroCycleModel(genus, generators)
    t = model.t()
    result = CheckResult(identity="P-m1-values")
    for m in range(1, max_m + 1):
        op = P_m1_realize(m)
        for p in range(1, generators + 1):
            x = model.x(p)
            lhs, rhs = op(x), (x + t) ** m - t ** m
            result.record(lhs == rhs, {"m": m, "p": p}, lhs, rhs)
        result.record(op(t) == t ** m, {"m": m, "on": "t"}, op(t), t ** m)
        result.record(op(model.one()).is_zero(), {"m": m, "on": "1"}, op(model.one()), 0)
    return result


def grading_check(genus: int = 4, generators: int = 3) -> CheckResult:
    """delta_1 是 x 次数的分次导子"""
    model = ZeroCycleModel(genus, generators)
    result = CheckResult(identity="delta-1-grading")
    for x in model.monomials():
        (exps, _), = x.terms
        lhs, rhs = delta_apply(1, x), x.scale(sum(exps))
        result.record(lhs == rhs, {"x": str(x)}, lhs, rhs)
    return result

