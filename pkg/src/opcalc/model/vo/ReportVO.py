from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from src.opcalc.constants.CommonConstants import REPORT_SCHEMA_VERSION, TOOL_VERSION


class FailureVO(BaseModel):
    identity: str
    parameters: Dict[str, Any]
    lhs: str
    rhs: str
    witness: Optional[str] = None


class ReportVO(BaseModel):
    """验证报告; status 为 fail 当且仅当 failures 非空 (含子报告)"""
    schema_version: int = Field(default=REPORT_SCHEMA_VERSION, serialization_alias="schema")
    suite: str
    status: Literal["pass", "fail"]
    checked: int
    failures: List[FailureVO] = Field(default_factory=list)
    elapsed_ms: Optional[int] = None
    tool_version: str = TOOL_VERSION
    ring_fingerprint: Optional[str] = None
    parameters: Dict[str, Any] = Field(default_factory=dict)
    details: Dict[str, Any] = Field(default_factory=dict)
    children: List["ReportVO"] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


ReportVO.model_rebuild()
