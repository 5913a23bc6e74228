"""
全局异常处理器
"""
import functools
import logging
import sys
import traceback

import click
import orjson
from pydantic import ValidationError as PydanticValidationError

from .custom_exceptions import OpcalcException, ServiceError, ValidationError, NotFoundError
from .error_codes import ErrorCode

# 配置日志
logger = logging.getLogger(__name__)


def _emit_error(payload: dict) -> None:
    """错误对象写到 stderr, stdout 只保留报告"""
    sys.stderr.write(orjson.dumps(payload, option=orjson.OPT_SORT_KEYS).decode() + "\n")


class ExceptionHandlingGroup(click.Group):
    """把逃逸出命令的异常映射为 JSON 错误与退出码"""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except OpcalcException as exc:
            logger.error(f"opcalc exception: {exc.code} - {exc.detail}")
            logger.debug(f"Exception context: {exc.context}")
            _emit_error(exc.to_dict())
            ctx.exit(exc.exit_code)
        except PydanticValidationError as exc:
            logger.warning(f"Pydantic Validation Error: {exc.errors()}")
            formatted_errors = [
                {
                    "field": " -> ".join(str(loc) for loc in error["loc"]),
                    "message": error["msg"],
                    "type": error["type"]
                }
                for error in exc.errors()
            ]
            _emit_error({
                "error": ErrorCode.VALIDATION_ERROR.code,
                "message": ErrorCode.VALIDATION_ERROR.message,
                "detail": "Data validation failed",
                "validation_errors": formatted_errors
            })
            ctx.exit(ErrorCode.VALIDATION_ERROR.exit_code)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception as exc:
            logger.error(f"internal error: {exc}")
            logger.debug(f"Traceback: {traceback.format_exc()}")
            _emit_error({
                "error": ErrorCode.INTERNAL_ERROR.code,
                "message": ErrorCode.INTERNAL_ERROR.message,
                "detail": str(exc)
            })
            ctx.exit(ErrorCode.INTERNAL_ERROR.exit_code)


def handle_service_exception(func):
    """服务层异常处理装饰器"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except OpcalcException:
            # 重新抛出领域异常
            raise
        except Exception as e:
            # 将其他异常包装为 ServiceError
            logger.error(f"Service error in {func.__name__}: {str(e)}")
            logger.debug(f"Traceback: {traceback.format_exc()}")
            raise ServiceError(
                detail=f"Service error in {func.__name__}: {str(e)}",
                service_name=func.__name__
            )

    return wrapper


def handle_mapper_exception(func):
    """文件读写层异常处理装饰器"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except OpcalcException:
            raise
        except FileNotFoundError as e:
            raise NotFoundError(resource_type="file", resource_id=str(e.filename))
        except (OSError, UnicodeDecodeError) as e:
            logger.debug(f"Traceback: {traceback.format_exc()}")
            raise ValidationError(
                detail=f"I/O error in {func.__name__}: {str(e)}",
                field=func.__name__
            )

    return wrapper
