from .ActionTableMapper import ActionTableMapper
from .ReportMapper import ReportMapper, dumps
from .RingFileMapper import RingFileMapper

__all__ = [
    'ActionTableMapper',
    'ReportMapper',
    'RingFileMapper',
    'dumps'
]
