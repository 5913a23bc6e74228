"""
规范序重写

每一步只处理字中第一个 (或最后一个) 违例:
  - P_{n,0}(1) 变为行塔 (U1, heis 中 n=1), P_{0,n}(1) 变为列塔 (U2, heis 中 n=1), d=0 的塔删去
  - 相同 n 的塔合并: T^[d1] T^[d2] = C(d1+d2,d1) T^[d1+d2]; 不同 n 的塔按 n 排序
  - PGen * 行塔 按行关系把塔移到左侧, 列塔 * PGen 按列关系把塔移到右侧
  - heis 中列塔在行塔左侧时直接交换
  - PGen 段按全序排序: x y = (-1)^{|x||y|} y x + [x,y], 奇元素平方为 0
行关系降低 PGen 的 k, 列关系降低 m, 交换降低逆序数, 括号项缩短字长, 所以重写终止;
步数超过上限时报错.
"""
import logging
from math import factorial
from typing import Dict, List, Optional, Tuple

from src.opcalc.combinat import A_coeff, binomial
from src.opcalc.env.words import EnvElem, Letter, PGen, Tower, Word, letter_parity, pgen_order
from src.opcalc.exceptions import RewriteError
from src.opcalc.liealg.bracket import bracket_keys
from src.opcalc.ring import RingElem, RingSpec

logger = logging.getLogger(__name__)

MAX_REWRITE_STEPS = 2_000_000

Rewrite = List[Tuple[Word, RingElem]]


def _pgen_terms(ring: RingSpec, m: int, k: int, value: RingElem) -> List[Tuple[PGen, RingElem]]:
    return [(PGen(m, k, fiber), base) for fiber, base in value.fiber_components().items()]


def row_relation(ring: RingSpec, letter: PGen, n: int, d: int) -> List[Tuple[Optional[Tower], PGen, RingElem]]:
    """
    P_{m,k}(a) T_n^[d] = sum_{j<=i} (-1)^{i-j} (i!/j!) C(k,i) A_j(i,n) T_n^[d-j] P_{m+nj-i,k-i}(a a0^{i-j})

    Returns:
        (左侧的塔或 None, PGen, 系数) 列表
    """
    m, k = letter.m, letter.k
    a = ring.monomial(letter.mono)
    out = []
    for i in range(k + 1):
        c_k = binomial(k, i)
        for j in range(min(i, d) + 1):
            coeff = (-1) ** (i - j) * (factorial(i) // factorial(j)) * c_k * A_coeff(j, i, n)
            if not coeff:
                continue
            value = a * ring.a0 ** (i - j) if i > j else a
            tower = Tower(n, d - j, "row") if d > j else None
            for pgen, base in _pgen_terms(ring, m + n * j - i, k - i, value):
                out.append((tower, pgen, base * coeff))
    return out


def column_relation(ring: RingSpec, letter: PGen, n: int, d: int) -> List[Tuple[PGen, Optional[Tower], RingElem]]:
    """T'_n^[d] P_{m,k}(a) = sum_{j<=i} (-1)^{i-j} (i!/j!) C(m,i) A_j(i,n) P_{m-i,k+nj-i}(a a0^{i-j}) T'_n^[d-j]"""
    m, k = letter.m, letter.k
    a = ring.monomial(letter.mono)
    out = []
    for i in range(m + 1):
        c_m = binomial(m, i)
        for j in range(min(i, d) + 1):
            coeff = (-1) ** (i - j) * (factorial(i) // factorial(j)) * c_m * A_coeff(j, i, n)
            if not coeff:
                continue
            value = a * ring.a0 ** (i - j) if i > j else a
            tower = Tower(n, d - j, "col") if d > j else None
            for pgen, base in _pgen_terms(ring, m - i, k + n * j - i, value):
                out.append((pgen, tower, base * coeff))
    return out


def _converts(algebra: str, letter: PGen, ring: RingSpec) -> Optional[Tower]:
    if any(letter.mono):
        return None
    if letter.k == 0 and letter.m >= 1 and (algebra == "U1" or (algebra == "heis" and letter.m == 1)):
        return Tower(letter.m, 1, "row")
    if letter.m == 0 and letter.k >= 1 and (algebra == "U2" or (algebra == "heis" and letter.k == 1)):
        return Tower(letter.k, 1, "col")
    return None


def _rewrite_pair(ring: RingSpec, algebra: str, word: Word, p: int) -> Optional[Rewrite]:
    left, right = word[p], word[p + 1]
    prefix, suffix = word[:p], word[p + 2:]
    one = ring.one()
    if isinstance(left, PGen) and isinstance(right, PGen):
        if left == right and letter_parity(ring, left):
            return []
        if pgen_order(ring, left) <= pgen_order(ring, right):
            return None
        sign = -1 if letter_parity(ring, left) and letter_parity(ring, right) else 1
        out: Rewrite = [(prefix + (right, left) + suffix, one * sign)]
        for key, coeff in bracket_keys(ring, left.key, right.key):
            out.append((prefix + (PGen(*key),) + suffix, coeff))
        return out
    if isinstance(left, PGen) and isinstance(right, Tower):
        if right.side != "row":
            return None
        out = []
        for tower, pgen, coeff in row_relation(ring, left, right.n, right.d):
            middle = ((tower,) if tower else ()) + (pgen,)
            out.append((prefix + middle + suffix, coeff))
        return out
    if isinstance(left, Tower) and isinstance(right, PGen):
        if left.side != "col":
            return None
        out = []
        for pgen, tower, coeff in column_relation(ring, right, left.n, left.d):
            middle = (pgen,) + ((tower,) if tower else ())
            out.append((prefix + middle + suffix, coeff))
        return out
    # 两个塔
    if left.side == right.side:
        if left.n == right.n:
            merged = Tower(left.n, left.d + right.d, left.side)
            return [(prefix + (merged,) + suffix, one * binomial(left.d + right.d, left.d))]
        if left.n > right.n:
            return [(prefix + (right, left) + suffix, one)]
        return None
    if left.side == "col" and right.side == "row":
        return [(prefix + (right, left) + suffix, one)]
    return None


def rewrite_once(ring: RingSpec, algebra: str, word: Word, last: bool = False) -> Optional[Rewrite]:
    """返回第一个 (last=True 时为最后一个) 违例的一步重写; 字已规范时返回 None"""
    if algebra == "free":
        return None
    positions = range(len(word) - 1, -1, -1) if last else range(len(word))
    for p in positions:
        letter = word[p]
        if isinstance(letter, Tower) and letter.d == 0:
            return [(word[:p] + word[p + 1:], ring.one())]
        if isinstance(letter, PGen):
            tower = _converts(algebra, letter, ring)
            if tower is not None:
                return [(word[:p] + (tower,) + word[p + 1:], ring.one())]
    pair_positions = range(len(word) - 2, -1, -1) if last else range(len(word) - 1)
    for p in pair_positions:
        step = _rewrite_pair(ring, algebra, word, p)
        if step is not None:
            return step
    return None


def normal_form(x: EnvElem, last: bool = False) -> EnvElem:
    ring, algebra = x.ring, x.algebra
    if algebra == "free":
        return x
    pending: Dict[Word, RingElem] = dict(x.terms)
    done: Dict[Word, RingElem] = {}
    steps = 0
    while pending:
        word, coeff = pending.popitem()
        if not coeff:
            continue
        step = rewrite_once(ring, algebra, word, last)
        if step is None:
            done[word] = done[word] + coeff if word in done else coeff
            continue
        for new_word, factor in step:
            value = coeff * factor
            pending[new_word] = pending[new_word] + value if new_word in pending else value
        steps += 1
        if steps > MAX_REWRITE_STEPS:
            raise RewriteError(detail=f"normal form did not terminate after {steps} steps", operation="normal_form")
    logger.debug(f"normal_form[{algebra}]: {len(x.terms)} words -> {len(done)} words in {steps} steps")
    return EnvElem(ring, algebra, done)


def is_normal(ring: RingSpec, algebra: str, word: Word) -> bool:
    return rewrite_once(ring, algebra, word) is None


def centralize(x: EnvElem) -> EnvElem:
    """删去中心字母 P_{0,0}(a), 系数乘以 pi_*(a), 然后重新规范化"""
    ring = x.ring
    terms: Dict[Word, RingElem] = {}
    for word, coeff in x.terms.items():
        kept: List[Letter] = []
        scalar = coeff
        for letter in word:
            if isinstance(letter, PGen) and letter.m == 0 and letter.k == 0:
                scalar = scalar * ring.monomial(letter.mono).pushforward()
            else:
                kept.append(letter)
        if scalar:
            key = tuple(kept)
            terms[key] = terms[key] + scalar if key in terms else scalar
    return normal_form(EnvElem(ring, x.algebra, terms))


def commutator(x: EnvElem, y: EnvElem) -> EnvElem:
    """超交换子 xy - (-1)^{|x||y|} yx"""
    sign = -1 if x.parity() and y.parity() else 1
    return x * y - (y * x).scale(sign)
