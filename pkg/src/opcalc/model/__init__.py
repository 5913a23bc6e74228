"""
Model包 - 报告, 命令与环定义文件的数据模型
"""
from .dto.CommandRequest import CommandRequest
from .dto.RingFileSpec import GeneratorEntry, RingFileOptions, RingFileSpec
from .vo.ReportVO import FailureVO, ReportVO

__all__ = [
    'CommandRequest',
    'GeneratorEntry',
    'RingFileOptions',
    'RingFileSpec',
    'FailureVO',
    'ReportVO'
]
