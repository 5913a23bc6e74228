"""
环定义文件的读取

    # 注释
    [generators]
    K: even 1
    psi: even 1 base
    [rules]
    p0^2 -> -psi*p0
    [a0]
    K
    [pushforward]
    p0 -> 1
    [restriction]
    K -> psi
    [options]
    name = my-ring
    point_class = p0

每行按所在段用 pyparsing 解析, 内容交给 RingFileSpec 校验, 最后构造 RingSpec.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import pyparsing as pp

from src.opcalc.exceptions import ParseError, RingError, handle_mapper_exception
from src.opcalc.mapper.paths import resolve_input
from src.opcalc.model.dto.RingFileSpec import GeneratorEntry, RingFileSpec
from src.opcalc.ring import GeneratorSpec, Monomial, Poly, RingSpec
from src.opcalc.ring.expr_parser import parse_ring_expr

logger = logging.getLogger(__name__)

SECTIONS = ("generators", "rules", "a0", "pushforward", "restriction", "options")

_IDENT = pp.Word(pp.alphas, pp.alphanums + "_")
_SECTION = pp.Suppress("[") + pp.one_of(" ".join(SECTIONS))("section") + pp.Suppress("]") + pp.StringEnd()
_GENERATOR = (_IDENT("name") + pp.Suppress(":") + pp.one_of("even odd")("parity")
              + pp.Word(pp.nums)("degree") + pp.Optional(pp.Keyword("base"))("base") + pp.StringEnd())
_ARROW = pp.SkipTo("->")("lhs") + pp.Suppress("->") + pp.rest_of_line("rhs")
_OPTION = _IDENT("key") + pp.Suppress("=") + pp.rest_of_line("value")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_line(element: pp.ParserElement, text: str, lineno: int) -> pp.ParseResults:
    try:
        return element.parse_string(text, parse_all=True)
    except pp.ParseException as exc:
        raise ParseError(detail=f"ring file: {exc.msg}", line=lineno, column=exc.col)


class RingFileMapper:
    """把 .ring 文件读成 RingSpec"""

    @staticmethod
    def parse_text(text: str) -> RingFileSpec:
        section: Optional[str] = None
        raw: Dict[str, object] = {"generators": [], "rules": [], "pushforward": {}, "restriction": {}, "options": {}}
        a0_lines: List[str] = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            content = _strip(line)
            if not content:
                continue
            if content.startswith("["):
                section = _parse_line(_SECTION, content, lineno)["section"]
                continue
            if section is None:
                raise ParseError(detail="content before the first [section]", line=lineno, column=1)
            if section == "generators":
                parsed = _parse_line(_GENERATOR, content, lineno)
                raw["generators"].append({
                    "name": parsed["name"], "parity": parsed["parity"],
                    "degree": int(parsed["degree"]), "base": bool(parsed.get("base"))
                })
            elif section == "rules":
                parsed = _parse_line(_ARROW, content, lineno)
                raw["rules"].append([parsed["lhs"].strip(), parsed["rhs"].strip()])
            elif section in ("pushforward", "restriction"):
                parsed = _parse_line(_ARROW, content, lineno)
                raw[section][parsed["lhs"].strip()] = parsed["rhs"].strip()
            elif section == "options":
                parsed = _parse_line(_OPTION, content, lineno)
                raw["options"][parsed["key"]] = parsed["value"].strip()
            else:
                a0_lines.append(content)
        if a0_lines:
            raw["a0"] = " ".join(a0_lines)
        return RingFileSpec.model_validate(raw)

    @staticmethod
    def build(spec: RingFileSpec) -> RingSpec:
        """先用只有生成元的环求值多项式, 再构造带规则的环"""
        options = spec.options
        generators = [GeneratorSpec(g.name, g.parity, g.degree, base=g.base) for g in spec.generators]
        stub = RingSpec(f"{options.name}-stub", generators, scalar_mode=options.scalar_mode)

        def poly(text: str) -> Poly:
            return dict(parse_ring_expr(text, stub).terms)

        def monomial(text: str) -> Monomial:
            value = poly(text)
            if len(value) != 1 or list(value.values())[0] != 1:
                raise RingError(detail=f"'{text}' must be a single monomial", ring_name=options.name)
            return next(iter(value))

        rules: List[Tuple[Monomial, Poly]] = [(monomial(lhs), poly(rhs)) for lhs, rhs in spec.rules]
        ring_options: Dict[str, object] = {"rational": options.scalar_mode == "rational",
                                           "over_point": options.over_point}
        if options.genus is not None:
            ring_options["genus"] = options.genus
        return RingSpec(
            name=options.name,
            generators=generators,
            rules=rules,
            a0=poly(spec.a0),
            pushforward={monomial(key): poly(value) for key, value in spec.pushforward.items()},
            restriction={name: poly(value) for name, value in spec.restriction.items()},
            scalar_mode=options.scalar_mode,
            truncation=options.truncation,
            a0_degree=options.a0_degree,
            point_class=poly(options.point_class) if options.point_class else None,
            psi=options.psi,
            options=ring_options,
            description=options.description,
        )

    @handle_mapper_exception
    def load(self, name: str) -> RingSpec:
        """name 可以是路径, 也可以是 data/rings/ 下的文件名"""
        path: Path = resolve_input(name, "rings")
        text = path.read_text(encoding="utf-8")
        ring = self.build(self.parse_text(text))
        logger.info(f"loaded ring file {path.name}: {ring.name} with {len(ring.generators)} generators")
        return ring
