"""
群代数 Z[Z^r]: 符号 [v] 的整系数组合, Pontryagin 乘积 [v]*[w] = [v+w], 推前 [m]_*: v -> m v
"""
import logging
from typing import Dict, Iterator, Tuple

from src.opcalc.combinat import binomial
from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.exceptions import ValidationError

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


class GroupAlgebraModel:

    def __init__(self, rank: int):
        if rank < 1:
            raise ValidationError(detail=f"rank must be positive, got {rank}", field="rank")
        self.rank = rank

    def point(self, v: Vector) -> 'GroupElem':
        if len(v) != self.rank:
            raise ValidationError(detail=f"vector {v} has wrong length", field="vector")
        return GroupElem(self, {tuple(v): 1})

    def unit(self) -> 'GroupElem':
        return self.point((0,) * self.rank)

    def unit_vectors(self) -> Iterator[Vector]:
        for p in range(self.rank):
            yield tuple(1 if q == p else 0 for q in range(self.rank))


class GroupElem:
    __slots__ = ("model", "terms")

    def __init__(self, model: GroupAlgebraModel, terms: Dict[Vector, int]):
        self.model = model
        self.terms = {v: c for v, c in terms.items() if c}

    def __add__(self, other: 'GroupElem') -> 'GroupElem':
        terms = dict(self.terms)
        for v, c in other.terms.items():
            terms[v] = terms.get(v, 0) + c
        return GroupElem(self.model, terms)

    def __neg__(self) -> 'GroupElem':
        return GroupElem(self.model, {v: -c for v, c in self.terms.items()})

    def __sub__(self, other: 'GroupElem') -> 'GroupElem':
        return self + (-other)

    def scale(self, factor: int) -> 'GroupElem':
        return GroupElem(self.model, {v: c * factor for v, c in self.terms.items()})

    def __mul__(self, other: 'GroupElem') -> 'GroupElem':
        """Pontryagin 乘积"""
        terms: Dict[Vector, int] = {}
        for v, a in self.terms.items():
            for w, b in other.terms.items():
                key = tuple(x + y for x, y in zip(v, w))
                terms[key] = terms.get(key, 0) + a * b
        return GroupElem(self.model, terms)

    def __pow__(self, e: int) -> 'GroupElem':
        result = self.model.unit()
        for _ in range(e):
            result = result * self
        return result

    def pushforward(self, m: int) -> 'GroupElem':
        """[m]_*"""
        terms: Dict[Vector, int] = {}
        for v, c in self.terms.items():
            key = tuple(m * x for x in v)
            terms[key] = terms.get(key, 0) + c
        return GroupElem(self.model, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for v, c in sorted(self.terms.items()):
            body = "[" + ",".join(str(x) for x in v) + "]"
            pieces.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(pieces)


def pontryagin_identity_check(max_m: int = 6, rank: int = 2) -> CheckResult:
    """([v]-[0])^{*m} = sum_{i<m} (-1)^i C(m,i) [m-i]_*([v]-[0]), v 取所有单位向量"""
    if max_m < 1:
        raise ValidationError(detail=f"m must be at least 1, got {max_m}", field="max_m")
    model = GroupAlgebraModel(rank)
    result = CheckResult(identity="pontryagin")
    for v in model.unit_vectors():
        base = model.point(v) - model.unit()
        for m in range(1, max_m + 1):
            lhs = base ** m
            rhs = GroupElem(model, {})
            for i in range(m):
                rhs = rhs + base.pushforward(m - i).scale((-1) ** i * binomial(m, i))
            result.record(lhs == rhs, {"m": m, "v": list(v)}, lhs, rhs)
    logger.info(f"pontryagin: {result.checked} instances, {len(result.failures)} failures")
    return result
