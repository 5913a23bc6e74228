import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import orjson

from src.opcalc.exceptions import handle_mapper_exception

logger = logging.getLogger(__name__)

_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_NON_STR_KEYS


def dumps(payload: Dict[str, Any]) -> bytes:
    """键排序, 两格缩进; 相同输入逐字节相同"""
    return orjson.dumps(payload, option=_OPTIONS, default=str) + b"\n"


class ReportMapper:
    """报告写到 stdout 或 --out 指定的文件"""

    @handle_mapper_exception
    def write(self, payload: Dict[str, Any], out: Optional[str] = None) -> None:
        data = dumps(payload)
        if out is None:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
            return
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        logger.info(f"report written to {path}")

    @handle_mapper_exception
    def read(self, path: str) -> Dict[str, Any]:
        return orjson.loads(Path(path).read_bytes())
