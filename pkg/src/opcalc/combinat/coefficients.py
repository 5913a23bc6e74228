"""
精确组合系数: 二项式, 第二类 Stirling 数, 合成求和系数 A_d(i,n), a(i_1..i_n;j), b(i,l;n)

所有除法都经过 exact_div, 余数非零时直接报错而不是截断
"""
import logging
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence, Tuple

from src.opcalc.exceptions import ExactnessError

logger = logging.getLogger(__name__)


def exact_div(numerator: int, denominator: int, operation: str = "division") -> int:
    """整除, 余数非零时抛出 ExactnessError"""
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise ExactnessError(
            detail=f"{numerator} is not divisible by {denominator}",
            operation=operation,
            context={"numerator": numerator, "denominator": denominator}
        )
    return quotient


def binomial(n: int, k: int) -> int:
    """C(n,k); k<0, k>n 或 n<0 时为 0"""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def falling(n: int, k: int) -> int:
    """下降阶乘 n(n-1)...(n-k+1)"""
    result = 1
    for r in range(k):
        result *= n - r
    return result


def compositions(total: int, parts: int, weak: bool = False) -> Iterator[Tuple[int, ...]]:
    """把 total 拆成 parts 个有序部分; weak=True 时允许 0"""
    if parts < 0 or total < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    low = 0 if weak else 1
    if parts == 1:
        if total >= low:
            yield (total,)
        return
    for first in range(low, total - low * (parts - 1) + 1):
        for rest in compositions(total - first, parts - 1, weak):
            yield (first,) + rest


@lru_cache(maxsize=None)
def stirling2(m: int, i: int) -> int:
    """S(m,i) = (1/i!) sum_j (-1)^j C(i,j) (i-j)^m"""
    if m < 0 or i < 0:
        return 0
    alternating = sum((-1) ** j * comb(i, j) * (i - j) ** m for j in range(i + 1))
    return exact_div(alternating, factorial(i), "stirling2")


@lru_cache(maxsize=None)
def stirling2_recurrence(m: int, i: int) -> int:
    """三角递推 S(m,i) = i S(m-1,i) + S(m-1,i-1), 作为独立对照"""
    if m == 0 and i == 0:
        return 1
    if m <= 0 or i <= 0:
        return 0
    return i * stirling2_recurrence(m - 1, i) + stirling2_recurrence(m - 1, i - 1)


def a_coeff_vanishes(parts: Sequence[int], j: int) -> bool:
    return j > sum(parts) - max(parts)


@lru_cache(maxsize=None)
def _a_coeff(parts: Tuple[int, ...], j: int) -> int:
    if j < 0:
        return 0
    if len(parts) == 1:
        return 1 if j == 0 else 0
    head, tail = parts[0], parts[1:]
    tail_total = sum(tail)
    total = 0
    for k in range(j + 1):
        inner = _a_coeff(tail, j - k)
        if inner:
            total += factorial(k) * binomial(head, k) * binomial(tail_total - j + k, k) * inner
    return total


def a_coeff(parts: Sequence[int], j: int) -> int:
    """
    a(i_1,...,i_n; j), 递推
    a(i_1..i_n;j) = sum_k k! C(i_1,k) C(i_2+..+i_n-j+k, k) a(i_2..i_n; j-k),
    a(i_1; j) = delta_{j,0}
    """
    parts = tuple(parts)
    if not parts or any(p < 0 for p in parts):
        raise ValueError("a_coeff needs a nonempty list of nonnegative parts")
    return _a_coeff(parts, j)


@lru_cache(maxsize=None)
def A_coeff(d: int, i: int, n: int) -> int:
    """A_d(i,n): 对 i 的 d 段正合成求 prod C(n, i_s); A_0(i,n) = delta_{i,0}"""
    if d == 0:
        return 1 if i == 0 else 0
    total = 0
    for composition in compositions(i, d):
        product = 1
        for part in composition:
            product *= binomial(n, part)
            if not product:
                break
        total += product
    return total


@lru_cache(maxsize=None)
def b_coeff(i: int, l: int, n: int) -> int:
    """b(i,l;n) = sum over weak compositions i_1+..+i_n=i of i!/(i_1!..i_n!) a(i_1..i_n; l)"""
    if l > i or l < 0:
        raise ValueError("b_coeff needs 0 <= l <= i")
    if n == 0:
        return 1 if i == 0 and l == 0 else 0
    total = 0
    for composition in compositions(i, n, weak=True):
        multinomial = factorial(i)
        for part in composition:
            multinomial //= factorial(part)
        total += multinomial * _a_coeff(composition, l)
    return total


def A_recursion_rhs(d: int, i: int, n: int) -> int:
    """sum_{r+s+t=d} d!/(r!s!t!) A_{d-r}(i-r-s, n-1)"""
    total = 0
    for r in range(d + 1):
        for s in range(d - r + 1):
            t = d - r - s
            if i - r - s < 0:
                continue
            multinomial = exact_div(factorial(d), factorial(r) * factorial(s) * factorial(t), "multinomial")
            total += multinomial * A_coeff(d - r, i - r - s, n - 1)
    return total
