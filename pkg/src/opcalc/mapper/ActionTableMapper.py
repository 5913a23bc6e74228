"""
作用表文件的读取

    basis a:0 b:1 c:1
    max_weight 1
    op du: b -> a
    op dt[1]: c -> a
    op t: a -> c
    op u[1]: a -> b + 1/2*c

未列出的源向量视为零像.
"""
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, List

import pyparsing as pp

from src.opcalc.exceptions import ParseError, handle_mapper_exception
from src.opcalc.mapper.paths import resolve_input
from src.opcalc.models.decompose import ActionTable, Vector

logger = logging.getLogger(__name__)

_LABEL = pp.Word(pp.alphas, pp.alphanums + "_^[]{}*")
_INT = pp.Word(pp.nums)
_RATIONAL = pp.Combine(_INT + pp.Optional("/" + _INT)).set_parse_action(lambda t: Fraction(t[0]))
_TERM = pp.Group(pp.Optional(pp.one_of("+ -")("sign"))
                 + pp.Optional(_RATIONAL("coeff") + pp.Suppress("*"))
                 + _LABEL("label"))
_COMBINATION = pp.OneOrMore(_TERM) | pp.Literal("0")
_OP_NAME = pp.Regex(r"t|du|u\[\d+\]|dt\[\d+\]")
_ENTRY = pp.Group(_LABEL("source") + pp.Suppress("->") + pp.Group(_COMBINATION)("image"))

BASIS_LINE = pp.Keyword("basis") + pp.OneOrMore(pp.Group(_LABEL("label") + pp.Suppress(":") + _INT("weight")))
MAX_WEIGHT_LINE = pp.Keyword("max_weight") + _INT("value")
OP_LINE = (pp.Keyword("op") + _OP_NAME("name") + pp.Suppress(":")
           + pp.delimited_list(_ENTRY, delim=";")("entries") + pp.Optional(pp.Suppress(";")))


def _vector(image: pp.ParseResults) -> Vector:
    out: Vector = {}
    for term in image:
        if isinstance(term, str):
            continue
        coeff = term.get("coeff", Fraction(1))
        value = -coeff if term.get("sign") == "-" else coeff
        out[term["label"]] = out.get(term["label"], Fraction(0)) + value
    return {label: c for label, c in out.items() if c}


class ActionTableMapper:
    """把 .table 文件读成 ActionTable"""

    @staticmethod
    def parse_text(text: str) -> ActionTable:
        basis: List[str] = []
        weights: Dict[str, int] = {}
        max_weight = None
        ops: Dict[str, Dict[str, Vector]] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            content = line.split("#", 1)[0].strip()
            if not content:
                continue
            keyword = content.split(None, 1)[0]
            element = {"basis": BASIS_LINE, "max_weight": MAX_WEIGHT_LINE, "op": OP_LINE}.get(keyword)
            if element is None:
                raise ParseError(detail=f"action table: unknown line '{keyword}'", line=lineno, column=1)
            try:
                parsed = element.parse_string(content, parse_all=True)
            except pp.ParseException as exc:
                raise ParseError(detail=f"action table: {exc.msg}", line=lineno, column=exc.col)
            if keyword == "basis":
                for item in parsed[1:]:
                    basis.append(item["label"])
                    weights[item["label"]] = int(item["weight"])
            elif keyword == "max_weight":
                max_weight = int(parsed["value"])
            else:
                rows = ops.setdefault(parsed["name"], {})
                for entry in parsed["entries"]:
                    rows[entry["source"]] = _vector(entry["image"])
        if max_weight is None:
            max_weight = max(weights.values(), default=0)
        table = ActionTable(basis, weights, max_weight, ops)
        table.validate()
        return table

    @handle_mapper_exception
    def load(self, name: str) -> ActionTable:
        path: Path = resolve_input(name, "tables")
        table = self.parse_text(path.read_text(encoding="utf-8"))
        logger.info(f"loaded action table {path.name}: {len(table.basis)} basis vectors, {len(table.ops)} operators")
        return table
