"""
统一异常处理模块
"""
from .custom_exceptions import (
    OpcalcException,
    ValidationError,
    NotFoundError,
    ParseError,
    DslTypeError,
    RingError,
    RingMismatchError,
    ExactnessError,
    RewriteError,
    NonNilpotentError,
    VerificationError,
    ServiceError
)
from .exception_handler import ExceptionHandlingGroup, handle_service_exception, handle_mapper_exception
from .error_codes import ErrorCode

__all__ = [
    'OpcalcException',
    'ValidationError',
    'NotFoundError',
    'ParseError',
    'DslTypeError',
    'RingError',
    'RingMismatchError',
    'ExactnessError',
    'RewriteError',
    'NonNilpotentError',
    'VerificationError',
    'ServiceError',
    'ExceptionHandlingGroup',
    'handle_service_exception',
    'handle_mapper_exception',
    'ErrorCode'
]
