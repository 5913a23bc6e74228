import logging
from dataclasses import dataclass, field
from typing import Generic, TypeVar, Optional, Any, Dict, List

# 定义泛型类型变量
T = TypeVar('T')

logger = logging.getLogger(__name__)


@dataclass
class CheckResult(Generic[T]):
    """
    单个恒等式检查的统一结果封装

    结构：
    {
        "identity": "super-jacobi",   # 被检查的恒等式
        "checked": 1234,              # 检查的实例数
        "failures": [...],            # 失败实例, 含 lhs/rhs/witness
        "data": {...}                 # 可选的附加数据
    }
    """
    identity: str
    checked: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    data: Optional[T] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(
        self,
        ok: bool,
        parameters: Dict[str, Any],
        lhs: Any = None,
        rhs: Any = None,
        witness: Any = None
    ) -> bool:
        """
        记录一个实例的比较结果, 失败时保存两边的规范文本

        Returns:
            ok 本身, 便于在循环中继续使用
        """
        self.checked += 1
        if not ok:
            failure = {
                "identity": self.identity,
                "parameters": {key: _plain(value) for key, value in parameters.items()},
                "lhs": str(lhs),
                "rhs": str(rhs),
                "witness": None if witness is None else str(witness)
            }
            logger.warning(f"{self.identity} failed at {failure['parameters']}")
            self.failures.append(failure)
        return ok

    def merge(self, other: 'CheckResult') -> 'CheckResult[T]':
        """按顺序合并另一个结果, 保持失败列表的确定性顺序"""
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "identity": self.identity,
            "checked": self.checked,
            "failures": self.failures
        }
        if self.data is not None:
            result["data"] = self.data
        return result


def _plain(value: Any) -> Any:
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)
