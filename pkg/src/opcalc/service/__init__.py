"""
服务层 - 套件分派与计算
"""
from .ComputeService import COMPUTE_TARGETS, ComputeService
from .VerificationService import VerificationService

__all__ = [
    'COMPUTE_TARGETS',
    'ComputeService',
    'VerificationService'
]
