"""
Heisenberg 除幂代数 Z[t, u^[.], dt^[.], du] 到合并代数 (heis) 的嵌入

标准嵌入:
    t      -> P_{1,0}(p0) + psi P_{1,0}(C)
    u^[d]  -> P_{1,0}(C)^[d]
    dt^[d] -> P_{0,1}(C)^[d]
    du     -> P_{0,1}(p0)
变体 (collino): t -> P_{1,0}(p0), du -> P_{0,1}(p0) + psi P_{0,1}(C)
有理嵌入用任意两个类 alpha, beta 代替 p0, 需要 deg(alpha), deg(beta) 可逆.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Literal, Optional

from src.opcalc.env.rewriting import normal_form
from src.opcalc.env.words import EnvElem, PGen, Tower
from src.opcalc.exceptions import RingError, ValidationError
from src.opcalc.ring import RingElem, RingSpec

logger = logging.getLogger(__name__)

FOCK_GENERATORS = ("t", "u", "dt", "du")
Variant = Literal["standard", "collino"]


@dataclass(frozen=True)
class FockGenerator:
    name: Literal["t", "u", "dt", "du"]
    d: int = 1

    def __post_init__(self):
        if self.name not in FOCK_GENERATORS:
            raise ValidationError(detail=f"unknown Fock generator '{self.name}'", field="generator")
        if self.d < 0:
            raise ValidationError(detail="divided power must be nonnegative", field="d")
        if self.name in ("t", "du") and self.d != 1:
            raise ValidationError(detail=f"{self.name} carries no divided powers", field="d")


def _pgen(ring: RingSpec, m: int, k: int, a: RingElem, scale=1) -> EnvElem:
    terms = {(PGen(m, k, fiber),): base * scale for fiber, base in a.fiber_components().items()}
    return normal_form(EnvElem(ring, "heis", terms))


def _tower(ring: RingSpec, d: int, side: str) -> EnvElem:
    return EnvElem.tower(ring, "heis", 1, d, side)


def heisenberg_embed(ring: RingSpec, generator: FockGenerator, variant: Variant = "standard") -> EnvElem:
    p0, psi = ring.point_class, ring.psi
    name, d = generator.name, generator.d
    if name == "u":
        return _tower(ring, d, "row")
    if name == "dt":
        return _tower(ring, d, "col")
    if name == "t":
        image = _pgen(ring, 1, 0, p0)
        if variant == "standard" and psi:
            image = image + _tower(ring, 1, "row").scale(psi)
        return image
    image = _pgen(ring, 0, 1, p0)
    if variant == "collino" and psi:
        image = image + _tower(ring, 1, "col").scale(psi)
    return image


def collino_embed(ring: RingSpec, generator: FockGenerator) -> EnvElem:
    return heisenberg_embed(ring, generator, "collino")


def class_degree(ring: RingSpec, a: RingElem) -> Fraction:
    value = a.pushforward()
    try:
        return Fraction(value.constant())
    except ValidationError:
        raise ValidationError(detail=f"pi_*({a}) = {value} is not a constant", field="degree")


def rational_heisenberg_embed(ring: RingSpec, generator: FockGenerator,
                              alpha: RingElem, beta: RingElem) -> EnvElem:
    """
    t      -> P_{1,0}(alpha) - <alpha,beta>/deg(beta) P_{1,0}(C)
    u^[d]  -> P_{1,0}(C)^[d] / deg(beta)^d
    dt^[d] -> P_{0,1}(C)^[d] / deg(alpha)^d
    du     -> P_{0,1}(beta)
    """
    if not ring.rational:
        raise RingError(detail="the rational Heisenberg action needs rational scalar mode", ring_name=ring.name)
    deg_alpha, deg_beta = class_degree(ring, alpha), class_degree(ring, beta)
    if not deg_alpha or not deg_beta:
        raise ValidationError(detail="alpha and beta must have nonzero degree", field="alpha")
    name, d = generator.name, generator.d
    if name == "u":
        return _tower(ring, d, "row").scale(Fraction(1) / deg_beta ** d)
    if name == "dt":
        return _tower(ring, d, "col").scale(Fraction(1) / deg_alpha ** d)
    if name == "du":
        return _pgen(ring, 0, 1, beta)
    pairing = (alpha * beta).pushforward()
    return _pgen(ring, 1, 0, alpha) - _tower(ring, 1, "row").scale(pairing * (1 / deg_beta))


def lefschetz_operators(ring: RingSpec, variant: Variant = "standard") -> Dict[str, EnvElem]:
    """e = t du, f = u dt, h = t dt - u du 在嵌入下的像"""
    t = heisenberg_embed(ring, FockGenerator("t"), variant)
    u = heisenberg_embed(ring, FockGenerator("u"), variant)
    dt = heisenberg_embed(ring, FockGenerator("dt"), variant)
    du = heisenberg_embed(ring, FockGenerator("du"), variant)
    return {"e": t * du, "f": u * dt, "h": t * dt - u * du}


def fock_images(ring: RingSpec, variant: Variant = "standard", max_power: int = 1,
                alpha: Optional[RingElem] = None, beta: Optional[RingElem] = None) -> Dict[str, EnvElem]:
    images: Dict[str, EnvElem] = {}
    for name in FOCK_GENERATORS:
        powers = range(1, max_power + 1) if name in ("u", "dt") else (1,)
        for d in powers:
            generator = FockGenerator(name, d)
            label = name if d == 1 else f"{name}[{d}]"
            if alpha is not None:
                images[label] = rational_heisenberg_embed(ring, generator, alpha, beta)
            else:
                images[label] = heisenberg_embed(ring, generator, variant)
    return images
