#用来定位data文件夹
from __future__ import annotations
from pathlib import Path
import os

from src.opcalc.configs import get_opcalc_config

_PROJECT_ROOT = Path(__file__).resolve().parents[3]


def data_dir() -> Path:
    """数据目录：优先读配置 OPCALC_DATA_DIR，默认使用仓库根目录下的 data/"""
    configured = get_opcalc_config().data_dir
    return Path(configured or str(_PROJECT_ROOT / "data")).resolve()


def in_data(*parts: str | os.PathLike) -> Path:
    """在 data/ 下拼路径，例如 in_data('rings', 'curve_chow_g2.ring')。"""
    return data_dir().joinpath(*parts).resolve()


_SUFFIXES = {"rings": ".ring", "tables": ".table"}


def resolve_input(name: str | os.PathLike, subdir: str) -> Path:
    """已存在的路径原样返回, 否则到 data/<subdir>/ 下查找, 可省略扩展名"""
    candidate = Path(name)
    if candidate.exists():
        return candidate.resolve()
    target = in_data(subdir, str(name))
    suffix = _SUFFIXES.get(subdir)
    if not target.exists() and suffix and not target.suffix:
        target = target.with_suffix(suffix)
    return target
