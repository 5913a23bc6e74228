"""
错误代码定义
"""
from enum import Enum


class ErrorCode(Enum):
    """错误代码枚举 (code, message, exit_code)"""

    # 通用错误
    INTERNAL_ERROR = ("INTERNAL_ERROR", "内部错误", 3)
    SERVICE_ERROR = ("SERVICE_ERROR", "服务执行失败", 3)

    # 输入与用法错误
    VALIDATION_ERROR = ("VALIDATION_ERROR", "验证错误", 2)
    INVALID_BOUNDS = ("INVALID_BOUNDS", "参数范围无效", 2)
    UNKNOWN_SUITE = ("UNKNOWN_SUITE", "未知的验证套件", 2)
    PARSE_ERROR = ("PARSE_ERROR", "表达式语法错误", 2)
    TYPE_ERROR = ("TYPE_ERROR", "表达式类型错误", 2)
    NOT_FOUND = ("NOT_FOUND", "资源未找到", 2)

    # 环结构错误
    INVALID_RING = ("INVALID_RING", "环定义无效", 2)
    RING_MISMATCH = ("RING_MISMATCH", "元素不属于同一个环", 2)

    # 模块错误
    NON_NILPOTENT = ("NON_NILPOTENT", "算子不是局部幂零的", 2)
    INVALID_ACTION_TABLE = ("INVALID_ACTION_TABLE", "作用表无效", 2)

    # 验证失败
    VERIFICATION_FAILED = ("VERIFICATION_FAILED", "恒等式验证失败", 1)

    # 内部不变量被破坏
    NON_EXACT_DIVISION = ("NON_EXACT_DIVISION", "整除不精确", 3)
    NON_TERMINATING_REWRITE = ("NON_TERMINATING_REWRITE", "重写未终止", 3)

    def __init__(self, code: str, message: str, exit_code: int):
        self.code = code
        self.message = message
        self.exit_code = exit_code

    def __str__(self):
        return f"{self.code}: {self.message}"
