from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence

from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.model.vo.ReportVO import FailureVO, ReportVO

if TYPE_CHECKING:
    from src.opcalc.ring import RingSpec


class ReportUtils:
    """
    报告构建工具类
    把若干 CheckResult 汇总成 ReportVO, 或把子报告聚合成总报告
    """

    @staticmethod
    def from_checks(
        suite: str,
        results: Sequence[CheckResult],
        ring: Optional['RingSpec'] = None,
        parameters: Optional[Dict[str, Any]] = None,
        elapsed_ms: Optional[int] = None
    ) -> ReportVO:
        """
        由检查结果构建报告

        Args:
            suite: 套件名
            results: 按执行顺序排列的检查结果
            ring: 使用的环 (写入指纹)
            parameters: 本次运行的范围参数
            elapsed_ms: 仅在 --timing 时给出

        Returns:
            ReportVO: status 为 fail 当且仅当存在失败实例
        """
        failures: List[FailureVO] = [FailureVO(**failure) for result in results for failure in result.failures]
        details: Dict[str, Any] = {}
        for result in results:
            key = result.identity
            suffix = 2
            while key in details:
                key = f"{result.identity}#{suffix}"
                suffix += 1
            details[key] = {"checked": result.checked, **({"data": result.data} if result.data is not None else {})}
        return ReportVO(
            suite=suite,
            status="fail" if failures else "pass",
            checked=sum(result.checked for result in results),
            failures=failures,
            elapsed_ms=elapsed_ms,
            ring_fingerprint=ring.fingerprint() if ring is not None else None,
            parameters=dict(parameters or {}),
            details=details
        )

    @staticmethod
    def aggregate(
        suite: str,
        children: Sequence[ReportVO],
        parameters: Optional[Dict[str, Any]] = None,
        elapsed_ms: Optional[int] = None
    ) -> ReportVO:
        """子报告聚合; 失败列表按子报告顺序拼接"""
        failures = [failure for child in children for failure in child.failures]
        return ReportVO(
            suite=suite,
            status="fail" if failures else "pass",
            checked=sum(child.checked for child in children),
            failures=failures,
            elapsed_ms=elapsed_ms,
            parameters=dict(parameters or {}),
            children=list(children)
        )

    @staticmethod
    def to_payload(report: ReportVO) -> Dict[str, Any]:
        """序列化用的字典; 未计时的报告不含 elapsed_ms"""
        return report.model_dump(by_alias=True, exclude_none=True)
