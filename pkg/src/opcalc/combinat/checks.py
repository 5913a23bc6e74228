"""组合系数之间的一致性检查"""
from math import factorial

from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.combinat.coefficients import (
    A_coeff, A_recursion_rhs, a_coeff, a_coeff_vanishes, b_coeff, compositions,
    exact_div, stirling2, stirling2_recurrence,
)


def stirling_check(max_index: int = 12) -> CheckResult:
    result = CheckResult(identity="stirling2-recurrence")
    for m in range(max_index + 1):
        for i in range(max_index + 1):
            lhs, rhs = stirling2(m, i), stirling2_recurrence(m, i)
            result.record(lhs == rhs, {"m": m, "i": i}, lhs, rhs)
    return result


def A_recursion_check(d_max: int = 5, i_max: int = 8, n_max: int = 5) -> CheckResult:
    result = CheckResult(identity="A-recursion")
    for d in range(d_max + 1):
        for i in range(i_max + 1):
            for n in range(1, n_max + 1):
                lhs, rhs = A_coeff(d, i, n), A_recursion_rhs(d, i, n)
                result.record(lhs == rhs, {"d": d, "i": i, "n": n}, lhs, rhs)
    return result


def b_closed_form_check(i_max: int = 8, n_max: int = 4) -> CheckResult:
    result = CheckResult(identity="b-closed-form")
    for i in range(i_max + 1):
        for l in range(i + 1):
            for n in range(1, n_max + 1):
                lhs = b_coeff(i, l, n)
                rhs = exact_div(factorial(i), factorial(i - l)) * A_coeff(i - l, i, n)
                result.record(lhs == rhs, {"i": i, "l": l, "n": n}, lhs, rhs)
    return result


def a_support_check(total_max: int = 8, length_max: int = 4) -> CheckResult:
    """a(parts; j) = 0 whenever j > sum - max"""
    result = CheckResult(identity="a-support")
    for length in range(1, length_max + 1):
        for total in range(total_max + 1):
            for parts in compositions(total, length, weak=True):
                for j in range(total + 1):
                    if a_coeff_vanishes(parts, j):
                        value = a_coeff(parts, j)
                        result.record(value == 0, {"parts": parts, "j": j}, value, 0)
    return result


def combinat_suite(bound: int = 8) -> list:
    return [
        stirling_check(max(bound, 12)),
        A_recursion_check(5, bound, 5),
        b_closed_form_check(bound, 4),
        a_support_check(bound, 4),
    ]
