# commands 不在这里导入: service 层依赖 dsl, commands 又依赖 service
from .dsl import DslEvaluator, parse_expr

__all__ = ["DslEvaluator", "parse_expr"]
