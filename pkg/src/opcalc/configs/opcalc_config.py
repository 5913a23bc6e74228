"""
opcalc 运行配置
从环境变量读取并发数, 日志级别, 数据目录等设置
"""
import os
from dataclasses import dataclass
from dotenv import load_dotenv

# 加载.env文件
load_dotenv()

_TRUE_VALUES = {"1", "true", "yes", "on"}


@dataclass(frozen=True)
class OpcalcConfig:
    """opcalc 配置类"""
    threads: int
    log_level: str
    data_dir: str
    progress: bool
    default_genus: int

    @classmethod
    def from_env(cls) -> 'OpcalcConfig':
        """从环境变量创建配置"""
        return cls(
            threads=max(1, int(os.getenv("OPCALC_THREADS", "1"))),
            log_level=os.getenv("OPCALC_LOG_LEVEL", "INFO").upper(),
            data_dir=os.getenv("OPCALC_DATA_DIR", ""),
            progress=os.getenv("OPCALC_PROGRESS", "false").strip().lower() in _TRUE_VALUES,
            default_genus=int(os.getenv("OPCALC_DEFAULT_GENUS", "2"))
        )


class OpcalcConfigProvider:
    """opcalc 配置提供者"""

    def __init__(self):
        self._config = OpcalcConfig.from_env()

    def get_config(self) -> OpcalcConfig:
        """获取配置"""
        return self._config

    def reload(self) -> None:
        """重新加载配置（从环境变量）"""
        self._config = OpcalcConfig.from_env()


# 全局配置提供者实例
_opcalc_config_provider = OpcalcConfigProvider()


def get_opcalc_config() -> OpcalcConfig:
    """获取 opcalc 配置（全局单例）"""
    return _opcalc_config_provider.get_config()


def reload_opcalc_config() -> OpcalcConfig:
    """重新读取环境变量后返回新配置"""
    _opcalc_config_provider.reload()
    return _opcalc_config_provider.get_config()
