"""
主入口文件
使用绝对导入启动 opcalc 命令行
"""

import logging

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

# 加载.env文件
load_dotenv()

from src.opcalc.cli.commands import cli
from src.opcalc.configs import get_opcalc_config

# 日志只写 stderr, stdout 留给报告
logging.basicConfig(
    level=get_opcalc_config().log_level,
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    handlers=[RichHandler(console=Console(stderr=True), show_path=False)]
)

if __name__ == "__main__":
    cli(prog_name="opcalc")
