"""
服务依赖模块
提供进程内共享的服务实例
"""
from typing import Optional

from src.opcalc.mapper.ReportMapper import ReportMapper
from src.opcalc.runtime_registry import RingRegistry
from src.opcalc.service.ComputeService import ComputeService
from src.opcalc.service.VerificationService import VerificationService


# ==================== 服务实例缓存 ====================
# 同一进程内的命令共享环缓存

_ring_registry: Optional[RingRegistry] = None
_verification_service: Optional[VerificationService] = None
_compute_service: Optional[ComputeService] = None
_report_mapper: Optional[ReportMapper] = None


# ==================== 服务依赖函数 ====================

def get_ring_registry() -> RingRegistry:
    """获取环注册表实例"""
    global _ring_registry
    if _ring_registry is None:
        _ring_registry = RingRegistry()
    return _ring_registry


def get_verification_service() -> VerificationService:
    """获取验证服务实例"""
    global _verification_service
    if _verification_service is None:
        _verification_service = VerificationService(get_ring_registry())
    return _verification_service


def get_compute_service() -> ComputeService:
    """获取计算服务实例"""
    global _compute_service
    if _compute_service is None:
        _compute_service = ComputeService(get_ring_registry())
    return _compute_service


def get_report_mapper() -> ReportMapper:
    """获取报告写出实例"""
    global _report_mapper
    if _report_mapper is None:
        _report_mapper = ReportMapper()
    return _report_mapper


# ==================== 清理函数 ====================

def clear_service_cache():
    """清除所有服务实例缓存 (测试之间使用)"""
    global _ring_registry, _verification_service, _compute_service, _report_mapper
    _ring_registry = None
    _verification_service = None
    _compute_service = None
    _report_mapper = None
