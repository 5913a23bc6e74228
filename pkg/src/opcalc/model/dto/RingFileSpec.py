from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class GeneratorEntry(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(pattern=r"^[A-Za-z][A-Za-z0-9_]*$")
    parity: Literal["even", "odd"]
    degree: int = Field(ge=1)
    base: bool = False


class RingFileOptions(BaseModel):
    """[options] 段; 未知键被拒绝"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = "custom"
    scalar_mode: Literal["integer", "rational"] = "integer"
    truncation: Optional[int] = Field(default=None, ge=0)
    a0_degree: int = Field(default=1, ge=0)
    point_class: Optional[str] = None
    psi: Optional[str] = None
    genus: Optional[int] = Field(default=None, ge=0)
    over_point: bool = False
    description: str = ""


class RingFileSpec(BaseModel):
    """
    环定义文件解析后的内容, 多项式仍是文本,
    由 RingFileMapper 在生成元确定后求值
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    generators: List[GeneratorEntry]
    rules: List[List[str]] = Field(default_factory=list)
    a0: str = "0"
    pushforward: Dict[str, str] = Field(default_factory=dict)
    restriction: Dict[str, str] = Field(default_factory=dict)
    options: RingFileOptions = Field(default_factory=RingFileOptions)

    @field_validator("rules")
    @classmethod
    def _pairs(cls, rules: List[List[str]]) -> List[List[str]]:
        for rule in rules:
            if len(rule) != 2:
                raise ValueError(f"a rule needs exactly one '->', got {rule}")
        return rules

    @model_validator(mode="after")
    def _names(self) -> 'RingFileSpec':
        names = [gen.name for gen in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for key in self.restriction:
            if key not in names:
                raise ValueError(f"restriction of unknown generator '{key}'")
        if self.options.psi is not None and self.options.psi not in names:
            raise ValueError(f"psi names unknown generator '{self.options.psi}'")
        return self
