"""
除幂 Fock 模 Gamma[t, u^[.]], Gamma = Z (有理模式下为 Q)

基向量 t^m u^[n] 记作键 (m, n);
    t: t^m -> t^{m+1}
    u^[d]: u^[n] -> C(n+d,d) u^[n+d]
    dt^[d]: t^m -> C(m,d) t^{m-d}
    du: u^[n] -> u^[n-1]
以及 sl2 三元组 e = t du, f = u dt, h = t dt - u du.
"""
from typing import Dict, Iterator, List, Sequence, Tuple

from src.opcalc.combinat import binomial
from src.opcalc.exceptions import ValidationError
from src.opcalc.ring import Scalar

FockKey = Tuple[int, int]
FOCK_OPERATORS = ("t", "u", "dt", "du", "e", "f", "h")


class FockVector:
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[FockKey, Scalar] = None):
        self.terms: Dict[FockKey, Scalar] = {key: c for key, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, m: int, n: int, coeff: Scalar = 1) -> 'FockVector':
        if m < 0 or n < 0:
            raise ValidationError(detail=f"Fock exponents must be nonnegative, got ({m},{n})", field="basis")
        return cls({(m, n): coeff})

    def __add__(self, other: 'FockVector') -> 'FockVector':
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) + c
        return FockVector(terms)

    def __neg__(self) -> 'FockVector':
        return FockVector({key: -c for key, c in self.terms.items()})

    def __sub__(self, other: 'FockVector') -> 'FockVector':
        return self + (-other)

    def scale(self, factor: Scalar) -> 'FockVector':
        return FockVector({key: c * factor for key, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[Tuple[FockKey, Scalar]]:
        return iter(sorted(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (m, n), c in self:
            factors = []
            if m:
                factors.append("t" if m == 1 else f"t^{m}")
            if n:
                factors.append(f"u^[{n}]")
            body = "*".join(factors) or "1"
            if c == 1:
                pieces.append(body)
            elif c == -1:
                pieces.append(f"-{body}")
            else:
                pieces.append(f"{c}*{body}" if factors else f"{c}")
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text

    def __repr__(self) -> str:
        return f"FockVector({self})"


def _map(v: FockVector, rule) -> FockVector:
    terms: Dict[FockKey, Scalar] = {}
    for key, c in v.terms.items():
        image = rule(*key)
        if image is None:
            continue
        target, factor = image
        if factor:
            terms[target] = terms.get(target, 0) + c * factor
    return FockVector(terms)


def apply_t(v: FockVector) -> FockVector:
    return _map(v, lambda m, n: ((m + 1, n), 1))


def apply_u(v: FockVector, d: int = 1) -> FockVector:
    return _map(v, lambda m, n: ((m, n + d), binomial(n + d, d)))


def apply_dt(v: FockVector, d: int = 1) -> FockVector:
    return _map(v, lambda m, n: ((m - d, n), binomial(m, d)) if m >= d else None)


def apply_du(v: FockVector) -> FockVector:
    return _map(v, lambda m, n: ((m, n - 1), 1) if n >= 1 else None)


def apply_e(v: FockVector) -> FockVector:
    return apply_t(apply_du(v))


def apply_f(v: FockVector) -> FockVector:
    return apply_u(apply_dt(v))


def apply_h(v: FockVector) -> FockVector:
    return apply_t(apply_dt(v)) - apply_u(apply_du(v))


def fock_apply_one(name: str, d: int, v: FockVector) -> FockVector:
    if name == "t":
        result = v
        for _ in range(d):
            result = apply_t(result)
        return result
    if name == "u":
        return apply_u(v, d)
    if name == "dt":
        return apply_dt(v, d)
    if name == "du":
        result = v
        for _ in range(d):
            result = apply_du(result)
        return result
    if name in ("e", "f", "h"):
        apply = {"e": apply_e, "f": apply_f, "h": apply_h}[name]
        result = v
        for _ in range(d):
            result = apply(result)
        return result
    raise ValidationError(detail=f"unknown Fock operator '{name}'", field="operator")


def fock_apply(word: Sequence[Tuple[str, int]], v: FockVector) -> FockVector:
    """算子字作用在 v 上, 最右侧的算子先作用"""
    for name, d in reversed(list(word)):
        v = fock_apply_one(name, d, v)
    return v


def lefschetz_power(m: int, n: int) -> FockVector:
    """e^{n-m}(t^m u^[n]) = t^n u^[m]"""
    if n < m:
        raise ValidationError(detail=f"lefschetz_power needs n >= m, got m={m}, n={n}", field="n")
    return fock_apply_one("e", n - m, FockVector.basis(m, n))


def fock_basis(max_weight: int) -> List[FockKey]:
    return [(m, n) for total in range(max_weight + 1) for m in range(total + 1) for n in [total - m]]
