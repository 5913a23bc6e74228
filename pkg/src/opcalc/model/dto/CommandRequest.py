from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.opcalc.constants.CommonConstants import DEFAULT_GENUS, RING_KEYS


class CommandRequest(BaseModel):
    """
    一次命令行调用的可序列化描述; 未知字段被拒绝,
    序列化结果足以复现同一次运行
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    verb: Literal["verify", "compute", "show"]
    target: str
    ring: Optional[str] = None
    genus: int = Field(default=DEFAULT_GENUS, ge=0)
    ring_file: Optional[str] = None
    rational: bool = False
    over_point: bool = False
    canonical_split: bool = False
    psi_truncation: int = Field(default=0, ge=0)
    trivial_family: bool = False
    max_index: Optional[int] = Field(default=None, ge=0)
    weight: Optional[int] = Field(default=None, ge=0)
    k: Optional[int] = Field(default=None, ge=0)
    quick: bool = False
    threads: Optional[int] = Field(default=None, ge=1)
    out: Optional[str] = None
    timing: bool = False
    apply_to: Optional[str] = None
    as_diffop: bool = False
    table: Optional[str] = None
    max_genus: Optional[int] = Field(default=None, ge=0)
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _check_ring(self) -> 'CommandRequest':
        if self.ring is not None and self.ring not in RING_KEYS:
            raise ValueError(f"unknown ring '{self.ring}'")
        return self
