"""规范文本输出: 计算结果的 JSON 负载, show ring 的表格"""
from typing import Any, Dict, Optional

from rich.console import Group
from rich.table import Table

from src.opcalc.cli.dsl import Value, type_name
from src.opcalc.constants.CommonConstants import REPORT_SCHEMA_VERSION, TOOL_VERSION
from src.opcalc.exceptions import RingError
from src.opcalc.ring import RingElem, RingSpec


def format_value(value: Value) -> str:
    """各类型的 __str__ 都是 DSL 可重新解析的规范形式"""
    return str(value)


def result_payload(
    command: str,
    ring: Optional[RingSpec],
    result: Dict[str, Any],
    parameters: Optional[Dict[str, Any]] = None
) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "schema": REPORT_SCHEMA_VERSION,
        "command": command,
        "tool_version": TOOL_VERSION,
        "result": result,
    }
    if ring is not None:
        payload["ring_fingerprint"] = ring.fingerprint()
    if parameters:
        payload["parameters"] = parameters
    return payload


def value_result(expression: str, value: Value) -> Dict[str, Any]:
    return {"expression": expression, "type": type_name(value), "value": format_value(value)}


def _point_text(ring: RingSpec) -> str:
    try:
        return str(ring.point_class)
    except RingError:
        return "-"


def ring_tables(ring: RingSpec) -> Group:
    gens = Table(title=f"{ring.name}: generators")
    for column in ("name", "parity", "degree", "kind"):
        gens.add_column(column)
    for gen in ring.generators:
        gens.add_row(gen.name, gen.parity, str(gen.degree), "base" if gen.base else "fiber")

    rules = Table(title="rewrite rules")
    rules.add_column("lhs")
    rules.add_column("rhs")
    for rule in ring.rules:
        rules.add_row(ring.format_monomial(rule.lhs), str(RingElem(ring, dict(rule.rhs))))

    push = Table(title="pi_*")
    push.add_column("fiber monomial")
    push.add_column("image")
    for fiber, image in sorted(ring.pushforward_table().items()):
        push.add_row(ring.format_monomial(fiber), str(RingElem(ring, image)))

    extra = Table(title="classes and options")
    extra.add_column("name")
    extra.add_column("value")
    extra.add_row("a0", str(ring.a0))
    extra.add_row("p0", _point_text(ring))
    extra.add_row("psi", str(ring.psi))
    extra.add_row("scalar mode", ring.scalar_mode)
    extra.add_row("fingerprint", ring.fingerprint())
    for key, value in ring.options.items():
        extra.add_row(key, str(value))
    return Group(gens, rules, push, extra)
