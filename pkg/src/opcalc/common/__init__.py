from .CheckResult import CheckResult
from .ReportUtils import ReportUtils
from .SweepRunner import run_sweep

__all__ = [
    'CheckResult',
    'ReportUtils',
    'run_sweep'
]
