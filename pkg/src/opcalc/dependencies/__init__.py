"""
依赖模块
提供全局可复用的服务实例
"""
from .services import (
    clear_service_cache,
    get_compute_service,
    get_report_mapper,
    get_ring_registry,
    get_verification_service
)

__all__ = [
    "clear_service_cache",
    "get_compute_service",
    "get_report_mapper",
    "get_ring_registry",
    "get_verification_service",
]
