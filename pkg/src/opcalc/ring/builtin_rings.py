"""
两个内置的曲线模型

CurveCohomology(g): H^*(C) 的展示, 上同调次数, psi = 0
CurveChowSymbolic(g): 相对曲线 CH^* 的符号模型, 只施加
    p0^2 = -psi*p0 与 K*p0 = psi*p0 两条关系; 这是声明的模型, 不是真正的 Chow 环,
    在其中验证的恒等式是公式层面的一致性检查. 未列出的推前 (如 K^n, n>=2) 取 0.
"""
from typing import Dict, List, Tuple

from src.opcalc.exceptions import ValidationError
from src.opcalc.ring.RingSpec import GeneratorSpec, Monomial, Poly, RingSpec, monomial_from_exponents


def make_curve_cohomology(g: int, rational: bool = False) -> RingSpec:
    if g < 0:
        raise ValidationError(detail="genus must be nonnegative", field="genus")
    generators: List[GeneratorSpec] = []
    for i in range(1, g + 1):
        generators.append(GeneratorSpec(f"alpha{i}", "odd", 1))
    for i in range(1, g + 1):
        generators.append(GeneratorSpec(f"beta{i}", "odd", 1))
    generators.append(GeneratorSpec("pt", "even", 2))
    arity = len(generators)

    def mono(**exps: int) -> Monomial:
        values = [0] * arity
        names = [gen.name for gen in generators]
        for name, e in exps.items():
            values[names.index(name)] = e
        return tuple(values)

    # 奇生成元按 alpha_1..alpha_g, beta_1..beta_g 排序; 次数 2 的乘积只剩 alpha_i beta_i = pt
    rules: List[Tuple[Monomial, Poly]] = []
    odd_names = [gen.name for gen in generators if gen.is_odd]
    for a in range(len(odd_names)):
        for b in range(a + 1, len(odd_names)):
            first, second = odd_names[a], odd_names[b]
            lhs = mono(**{first: 1, second: 1})
            paired = first.startswith("alpha") and second == "beta" + first[len("alpha"):]
            rules.append((lhs, {mono(pt=1): 1} if paired else {}))
    pushforward = {mono(pt=1): {mono(): 1}}
    return RingSpec(
        name="curve-cohomology",
        generators=generators,
        rules=rules,
        a0={mono(pt=1): 2 * g - 2} if g != 1 else {},
        pushforward=pushforward,
        restriction={},
        scalar_mode="rational" if rational else "integer",
        truncation=2,
        a0_degree=2,
        point_class={mono(pt=1): 1},
        psi=None,
        options={"genus": g, "rational": rational},
        description=f"H^*(C) of a genus {g} curve, cohomological degrees, a0 = (2g-2)pt",
    )


def make_curve_chow_symbolic(
    g: int,
    *,
    rational: bool = False,
    over_point: bool = False,
    canonical_split: bool = False,
    psi_truncation: int = 0,
    trivial_family: bool = False,
) -> RingSpec:
    if g < 0:
        raise ValidationError(detail="genus must be nonnegative", field="genus")
    if psi_truncation < 0:
        raise ValidationError(detail="psi truncation must be nonnegative", field="psi_truncation")
    if trivial_family:
        over_point = True
    if canonical_split and not over_point:
        raise ValidationError(
            detail="canonical_split (K = (2g-2)p0) is only consistent over a point (psi = 0)",
            field="canonical_split"
        )
    generators = [
        GeneratorSpec("K", "even", 1),
        GeneratorSpec("p0", "even", 1),
        GeneratorSpec("psi", "even", 1, base=True),
    ]
    ring_stub = RingSpec("stub", generators)

    def mono(**exps: int) -> Monomial:
        return monomial_from_exponents(ring_stub, exps)

    rules: List[Tuple[Monomial, Poly]] = []
    if over_point:
        rules.append((mono(psi=1), {}))
    elif psi_truncation:
        rules.append((mono(psi=psi_truncation), {}))
    if canonical_split:
        rules.append((mono(K=1), {mono(p0=1): 2 * g - 2} if g != 1 else {}))
    rules.append((mono(p0=2), {mono(psi=1, p0=1): -1}))
    rules.append((mono(K=1, p0=1), {mono(psi=1, p0=1): 1}))

    pushforward: Dict[Monomial, Poly] = {mono(p0=1): {mono(): 1}}
    if 2 * g - 2:
        pushforward[mono(K=1)] = {mono(): 2 * g - 2}
    restriction = {"K": {mono(psi=1): 1}, "p0": {mono(psi=1): -1}}
    options = {
        "genus": g,
        "rational": rational,
        "over_point": over_point,
        "canonical_split": canonical_split,
        "psi_truncation": psi_truncation,
        "trivial_family": trivial_family,
    }
    return RingSpec(
        name="curve-chow",
        generators=generators,
        rules=rules,
        a0={mono(K=1): 1},
        pushforward=pushforward,
        restriction=restriction,
        scalar_mode="rational" if rational else "integer",
        truncation=1 if trivial_family else None,
        a0_degree=1,
        point_class={mono(p0=1): 1},
        psi="psi",
        options=options,
        description=(
            "symbolic model of CH^*(C) for a family of genus "
            f"{g} curves with a section p0: only p0^2 = -psi p0 and K p0 = psi p0 are imposed"
        ),
    )
