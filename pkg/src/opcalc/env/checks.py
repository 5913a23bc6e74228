"""
包络代数的检查

  divided_commute_check   ad 幂的闭式 / 除幂交换展开 / 直接规范化 三者互相比较
  pbw_identity_check      x^d y 与 y x^d 的两条展开式
  confluence_check        随机字上的幂等与两种重写顺序的一致性
  heisenberg_contract_check, lefschetz_relations_check, row_column_commute_check
"""
import logging
import random
from math import factorial
from typing import Dict, List, Literal, Optional

from src.opcalc.combinat import A_coeff, binomial
from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.common.SweepRunner import run_sweep
from src.opcalc.env.heisenberg import fock_images, lefschetz_operators
from src.opcalc.env.rewriting import centralize, commutator, is_normal, normal_form
from src.opcalc.env.words import EnvElem, PGen, Tower, Word
from src.opcalc.exceptions import ValidationError
from src.opcalc.liealg import LieElem, bracket
from src.opcalc.liealg.checks import default_basis_degree
from src.opcalc.ring import RingElem, RingSpec

logger = logging.getLogger(__name__)

Side = Literal["row", "col"]


def _algebra(side: Side) -> str:
    return "U1" if side == "row" else "U2"


def ad_power_formula(ring: RingSpec, side: Side, m: int, k: int, a: RingElem, n: int, d: int) -> LieElem:
    """
    行: ad(-P_{n,0}(1))^d P_{m,k}(a) = sum_{i>=d} (-1)^{i-d} i! C(k,i) A_d(i,n) P_{m+nd-i,k-i}(a a0^{i-d})
    列: ad(P_{0,n}(1))^d P_{m,k}(a)  = sum_{i>=d} (-1)^{i-d} i! C(m,i) A_d(i,n) P_{m-i,k+nd-i}(a a0^{i-d})
    """
    result = LieElem.zero(ring)
    top = k if side == "row" else m
    for i in range(d, top + 1):
        coeff = (-1) ** (i - d) * factorial(i) * binomial(top, i) * A_coeff(d, i, n)
        if not coeff:
            continue
        value = a * ring.a0 ** (i - d) * coeff
        if side == "row":
            result = result + LieElem.P(ring, m + n * d - i, k - i, value)
        else:
            result = result + LieElem.P(ring, m - i, k + n * d - i, value)
    return result


def iterated_ad(ring: RingSpec, side: Side, m: int, k: int, a: RingElem, n: int, d: int) -> LieElem:
    if side == "row":
        x = LieElem.P(ring, n, 0, ring.one()).scale(-1)
    else:
        x = LieElem.P(ring, 0, n, ring.one())
    y = LieElem.P(ring, m, k, a)
    for _ in range(d):
        y = bracket(x, y)
    return y


def _pgen_word_terms(ring: RingSpec, m: int, k: int, value: RingElem) -> List:
    return [(PGen(m, k, fiber), base) for fiber, base in value.fiber_components().items()]


def power_expansion(ring: RingSpec, side: Side, m: int, k: int, a: RingElem, n: int, d: int) -> EnvElem:
    """
    行: P_{m,k}(a) P_{n,0}(1)^d = sum_{j<=i} (-1)^{i-j} i! d!/(j!(d-j)!) C(k,i) A_j(i,n)
                                   P_{n,0}(1)^{d-j} P_{m+nj-i,k-i}(a a0^{i-j})
    列为其镜像, 塔在右侧; 先写成自由字再在 U1/U2 中规范化
    """
    unit = tuple(0 for _ in range(ring.arity))
    gen = PGen(n, 0, unit) if side == "row" else PGen(0, n, unit)
    top = k if side == "row" else m
    terms: Dict[Word, RingElem] = {}
    for i in range(top + 1):
        for j in range(min(i, d) + 1):
            coeff = (-1) ** (i - j) * factorial(i) * binomial(d, j) * binomial(top, i) * A_coeff(j, i, n)
            if not coeff:
                continue
            value = a * ring.a0 ** (i - j)
            if side == "row":
                pieces = _pgen_word_terms(ring, m + n * j - i, k - i, value)
            else:
                pieces = _pgen_word_terms(ring, m - i, k + n * j - i, value)
            for pgen, base in pieces:
                tail = (gen,) * (d - j)
                word = tail + (pgen,) if side == "row" else (pgen,) + tail
                terms[word] = terms[word] + base * coeff if word in terms else base * coeff
    free = EnvElem(ring, "free", terms)
    return normal_form(EnvElem(ring, _algebra(side), free.terms))


def divided_commute_check(ring: RingSpec, m: int, k: int, a: RingElem, n: int, d: int,
                          side: Side = "row") -> CheckResult:
    result = CheckResult(identity=f"divided-commute-{side}")
    algebra = _algebra(side)
    params = {"m": m, "k": k, "a": str(a), "n": n, "d": d, "side": side}
    closed = ad_power_formula(ring, side, m, k, a, n, d)
    iterated = iterated_ad(ring, side, m, k, a, n, d)
    result.record(closed == iterated, {**params, "route": "ad-power"}, iterated, closed)

    pgen = EnvElem.from_lie(LieElem.P(ring, m, k, a), algebra)
    tower = EnvElem.tower(ring, algebra, n, d, side)
    divided = (pgen * tower if side == "row" else tower * pgen).scale(factorial(d))
    expansion = power_expansion(ring, side, m, k, a, n, d)
    result.record(divided == expansion, {**params, "route": "power-expansion"}, expansion, divided)

    unit = tuple(0 for _ in range(ring.arity))
    gen = (PGen(n, 0, unit) if side == "row" else PGen(0, n, unit),)
    plain = EnvElem(ring, "free", {})
    for fiber, base in a.fiber_components().items():
        word = (PGen(m, k, fiber),) + gen * d if side == "row" else gen * d + (PGen(m, k, fiber),)
        plain = plain + EnvElem(ring, "free", {word: base})
    straightened = normal_form(EnvElem(ring, algebra, plain.terms))
    result.record(divided == straightened, {**params, "route": "straightening"}, straightened, divided)
    return result


def _divided_chunk(ring: RingSpec, side: Side, max_index: int, max_power: int, fibers, m: int) -> CheckResult:
    result = CheckResult(identity=f"divided-commute-{side}")
    for k in range(max_index + 1):
        for n in range(1, max_index + 1):
            for d in range(1, max_power + 1):
                for mono in fibers:
                    result.merge(divided_commute_check(ring, m, k, ring.monomial(mono), n, d, side))
    return result


def divided_sweep(ring: RingSpec, max_index: int = 3, max_power: int = 3, side: Side = "row",
                  basis_degree: Optional[int] = None, threads: Optional[int] = None) -> CheckResult:
    fibers = ring.fiber_basis(default_basis_degree(ring) if basis_degree is None else basis_degree)
    return run_sweep(f"divided-commute-{side}", _divided_chunk, list(range(max_index + 1)),
                     shared=(ring, side, max_index, max_power, fibers), threads=threads)


def relation_iii_d1_check(ring: RingSpec, max_index: int = 3, side: Side = "row",
                          basis_degree: Optional[int] = None) -> CheckResult:
    """d = 1 时 P T - T P 必须给出括号 (列情形为 T P - P T)"""
    result = CheckResult(identity=f"relation-d1-{side}")
    algebra = _algebra(side)
    fibers = ring.fiber_basis(default_basis_degree(ring) if basis_degree is None else basis_degree)
    for m in range(max_index + 1):
        for k in range(max_index + 1):
            for n in range(1, max_index + 1):
                for mono in fibers:
                    a = ring.monomial(mono)
                    x = LieElem.P(ring, m, k, a)
                    gen = LieElem.P(ring, n, 0, ring.one()) if side == "row" else LieElem.P(ring, 0, n, ring.one())
                    px, pg = EnvElem.from_lie(x, algebra), EnvElem.from_lie(gen, algebra)
                    if side == "row":
                        lhs, rhs = px * pg - pg * px, EnvElem.from_lie(bracket(x, gen), algebra)
                    else:
                        lhs, rhs = pg * px - px * pg, EnvElem.from_lie(bracket(gen, x), algebra)
                    result.record(lhs == rhs, {"m": m, "k": k, "n": n, "a": str(a)}, lhs, rhs)
    return result


def genus_one_example_check(ring: RingSpec, max_index: int = 3, side: Side = "row",
                            basis_degree: Optional[int] = None) -> CheckResult:
    """a0 = 0 时: P_{m,k}(a) T^[d] = sum_i C(k,i) n^i T^[d-i] P_{m+i(n-1),k-i}(a), 列情形为镜像"""
    if not ring.a0.is_zero():
        raise ValidationError(detail="the genus one closed form needs a0 = 0", field="ring")
    result = CheckResult(identity=f"genus-one-{side}")
    algebra = _algebra(side)
    fibers = ring.fiber_basis(default_basis_degree(ring) if basis_degree is None else basis_degree)
    for m in range(max_index + 1):
        for k in range(max_index + 1):
            for n in range(1, max_index + 1):
                for d in range(1, max_index + 1):
                    for mono in fibers:
                        a = ring.monomial(mono)
                        pgen = EnvElem.from_lie(LieElem.P(ring, m, k, a), algebra)
                        tower = EnvElem.tower(ring, algebra, n, d, side)
                        lhs = pgen * tower if side == "row" else tower * pgen
                        rhs = EnvElem.zero(ring, algebra)
                        top = k if side == "row" else m
                        for i in range(min(top, d) + 1):
                            coeff = binomial(top, i) * n ** i
                            rest = EnvElem.tower(ring, algebra, n, d - i, side)
                            if side == "row":
                                term = rest * EnvElem.from_lie(LieElem.P(ring, m + i * (n - 1), k - i, a), algebra)
                            else:
                                term = EnvElem.from_lie(LieElem.P(ring, m - i, k + i * (n - 1), a), algebra) * rest
                            rhs = rhs + term.scale(coeff)
                        result.record(lhs == rhs, {"m": m, "k": k, "n": n, "d": d, "a": str(a)}, lhs, rhs)
    return result


def pbw_identity_check(x: LieElem, y: LieElem, d: int, algebra: str = "U1") -> CheckResult:
    """
    x^d y = sum_i C(d,i) (ad x)^i(y) x^{d-i}
    y x^d = sum_i C(d,i) x^{d-i} (-ad x)^i(y)
    x 必须是偶的
    """
    if d < 1:
        raise ValidationError(detail="d must be at least 1", field="d")
    if x.parity():
        raise ValidationError(detail="the divided sum identities need an even x", field="x")
    ring = x.ring
    result = CheckResult(identity="pbw-identity")
    ex, ey = EnvElem.from_lie(x, algebra), EnvElem.from_lie(y, algebra)
    powers = [EnvElem.one(ring, algebra)]
    for _ in range(d):
        powers.append(powers[-1] * ex)
    ads = [y]
    for _ in range(d):
        ads.append(bracket(x, ads[-1]))
    lhs_left = powers[d] * ey
    rhs_left = EnvElem.zero(ring, algebra)
    lhs_right = ey * powers[d]
    rhs_right = EnvElem.zero(ring, algebra)
    for i in range(d + 1):
        ad_i = EnvElem.from_lie(ads[i], algebra)
        rhs_left = rhs_left + (ad_i * powers[d - i]).scale(binomial(d, i))
        rhs_right = rhs_right + (powers[d - i] * ad_i).scale(binomial(d, i) * (-1) ** i)
    params = {"x": str(x), "y": str(y), "d": d}
    result.record(lhs_left == rhs_left, {**params, "side": "x^d y"}, lhs_left, rhs_left)
    result.record(lhs_right == rhs_right, {**params, "side": "y x^d"}, lhs_right, rhs_right)
    return result


def pbw_sweep(ring: RingSpec, max_index: int = 2, max_power: int = 3, algebra: str = "U1",
              basis_degree: Optional[int] = None) -> CheckResult:
    result = CheckResult(identity="pbw-identity")
    fibers = ring.fiber_basis(default_basis_degree(ring) if basis_degree is None else basis_degree)
    basis = [(m, k, mono) for m in range(max_index + 1) for k in range(max_index + 1) for mono in fibers]
    for left in basis:
        if ring.parity(left[2]):
            continue
        x = LieElem(ring, {left: ring.one()})
        for right in basis:
            y = LieElem(ring, {right: ring.one()})
            for d in range(1, max_power + 1):
                result.merge(pbw_identity_check(x, y, d, algebra))
    return result


def _random_word(ring: RingSpec, rng: random.Random, algebra: str, max_length: int, max_index: int,
                 fibers) -> Word:
    sides = {"U1": ("row",), "U2": ("col",), "heis": ("row", "col")}[algebra]
    word = []
    for _ in range(rng.randint(1, max_length)):
        if rng.random() < 0.25:
            n = 1 if algebra == "heis" else rng.randint(1, max_index)
            word.append(Tower(n, rng.randint(1, 2), rng.choice(sides)))
        else:
            word.append(PGen(rng.randint(0, max_index), rng.randint(0, max_index), rng.choice(fibers)))
    return tuple(word)


def _confluence_chunk(ring: RingSpec, algebra: str, max_length: int, max_index: int, fibers,
                      seed_and_trials) -> CheckResult:
    seed, start, count = seed_and_trials
    result = CheckResult(identity=f"confluence-{algebra}")
    rng = random.Random(f"{seed}:{start}")
    for trial in range(start, start + count):
        word = _random_word(ring, rng, algebra, max_length, max_index, fibers)
        raw = EnvElem(ring, algebra, {word: ring.one()})
        first = normal_form(raw)
        last = normal_form(raw, last=True)
        params = {"trial": trial, "word": str(EnvElem(ring, "free", {word: ring.one()}))}
        result.record(first == last, {**params, "property": "order-independent"}, first, last)
        normal = all(is_normal(ring, algebra, w) for w in first.terms)
        result.record(normal and normal_form(first) == first, {**params, "property": "idempotent"}, first,
                      normal_form(first))
    return result


def confluence_check(ring: RingSpec, trials: int = 10_000, max_length: int = 4, max_index: int = 3,
                     seed: int = 0, algebra: str = "U1", basis_degree: Optional[int] = None,
                     threads: Optional[int] = None) -> CheckResult:
    fibers = ring.fiber_basis(default_basis_degree(ring) if basis_degree is None else basis_degree)
    size = 250
    chunks = [(seed, start, min(size, trials - start)) for start in range(0, trials, size)]
    return run_sweep(f"confluence-{algebra}", _confluence_chunk, chunks,
                     shared=(ring, algebra, max_length, max_index, fibers), threads=threads)


def _scalar_elem(ring: RingSpec, value) -> EnvElem:
    scalar = value if isinstance(value, RingElem) else ring.scalar(value)
    return EnvElem(ring, "heis", {(): scalar})


def heisenberg_contract_check(ring: RingSpec, variant: str = "standard", max_power: int = 3,
                              alpha: Optional[RingElem] = None, beta: Optional[RingElem] = None) -> CheckResult:
    """
    中心化后: [du,t] = 0, [du,u] = 1, [dt,t] = 1, [dt,u] = 0, [t,u] = [du,dt] = 0,
    以及除幂形式 [du, u^[d]] = u^[d-1], [dt^[d], t] = dt^[d-1]
    """
    result = CheckResult(identity=f"heisenberg-{variant if alpha is None else 'rational'}")
    images = fock_images(ring, variant, max_power, alpha, beta)
    one = _scalar_elem(ring, 1)
    zero = EnvElem.zero(ring, "heis")
    expected = {
        ("du", "t"): zero, ("du", "u"): one, ("dt", "t"): one, ("dt", "u"): zero,
        ("t", "u"): zero, ("du", "dt"): zero,
    }
    for (left, right), target in expected.items():
        value = centralize(commutator(images[left], images[right]))
        result.record(value == target, {"pair": f"[{left},{right}]"}, value, target)
    for d in range(2, max_power + 1):
        value = centralize(commutator(images["du"], images[f"u[{d}]"]))
        target = centralize(images["u" if d == 2 else f"u[{d - 1}]"])
        result.record(value == target, {"pair": f"[du,u[{d}]]"}, value, target)
        value = centralize(commutator(images[f"dt[{d}]"], images["t"]))
        target = centralize(images["dt" if d == 2 else f"dt[{d - 1}]"])
        result.record(value == target, {"pair": f"[dt[{d}],t]"}, value, target)
    return result


def lefschetz_relations_check(ring: RingSpec, variant: str = "standard") -> CheckResult:
    """中心化后 [e,f] = h, [h,e] = 2e, [h,f] = -2f"""
    result = CheckResult(identity=f"lefschetz-sl2-{variant}")
    ops = {name: centralize(value) for name, value in lefschetz_operators(ring, variant).items()}
    e, f, h = ops["e"], ops["f"], ops["h"]
    cases = [
        ("[e,f]=h", commutator(e, f), h),
        ("[h,e]=2e", commutator(h, e), e.scale(2)),
        ("[h,f]=-2f", commutator(h, f), f.scale(-2)),
    ]
    for label, lhs, rhs in cases:
        lhs = centralize(lhs)
        result.record(lhs == rhs, {"relation": label}, lhs, rhs)
    return result


def row_column_commute_check(ring: RingSpec, d1: int, d2: int, max_weight: int = 8) -> CheckResult:
    """P_{1,0}(C)^[d1] 与 P_{0,1}(C)^[d2] 交换: 代数中是公理, 在 Fock 模上两种顺序作用相同"""
    from src.opcalc.models.fock import FockVector, fock_apply, fock_basis

    if d1 < 0 or d2 < 0:
        raise ValidationError(detail="divided powers must be nonnegative", field="d")
    result = CheckResult(identity="row-column-commute")
    row = EnvElem.tower(ring, "heis", 1, d1, "row")
    col = EnvElem.tower(ring, "heis", 1, d2, "col")
    result.record(col * row == row * col, {"d1": d1, "d2": d2, "where": "algebra"}, col * row, row * col)
    for m, n in fock_basis(max_weight):
        v = FockVector.basis(m, n)
        first = fock_apply([("u", d1), ("dt", d2)], v)
        second = fock_apply([("dt", d2), ("u", d1)], v)
        result.record(first == second, {"d1": d1, "d2": d2, "vector": str(v)}, first, second)
    return result

