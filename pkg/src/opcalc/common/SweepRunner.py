"""
分块并行扫描

检查把参数空间切成有序的块, 每块交给顶层 worker 函数处理;
threads > 1 时用进程池并行, 结果按块序号合并, 与串行结果逐字相同.
"""
import logging
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Callable, List, Optional, Sequence

from tqdm import tqdm

from src.opcalc.common.CheckResult import CheckResult
from src.opcalc.configs import get_opcalc_config

logger = logging.getLogger(__name__)


def resolve_threads(threads: Optional[int]) -> int:
    if threads is None:
        return get_opcalc_config().threads
    return max(1, int(threads))


def run_sweep(
    identity: str,
    worker: Callable[..., CheckResult],
    chunks: Sequence[Any],
    shared: tuple = (),
    threads: Optional[int] = None,
) -> CheckResult:
    """
    worker(*shared, chunk) -> CheckResult; worker 必须是模块顶层函数以便 pickle

    Returns:
        按块顺序合并后的 CheckResult
    """
    threads = resolve_threads(threads)
    progress = get_opcalc_config().progress
    logger.info(f"sweep {identity}: {len(chunks)} chunks on {threads} worker(s)")
    results: List[Optional[CheckResult]] = [None] * len(chunks)
    bar = tqdm(total=len(chunks), desc=identity, file=sys.stderr, disable=not progress,
               dynamic_ncols=True, ascii=True)
    try:
        if threads == 1 or len(chunks) <= 1:
            for index, chunk in enumerate(chunks):
                results[index] = worker(*shared, chunk)
                bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=threads) as executor:
                futures = {executor.submit(worker, *shared, chunk): index for index, chunk in enumerate(chunks)}
                for future in as_completed(futures):
                    results[futures[future]] = future.result()
                    bar.update(1)
    finally:
        bar.close()
    merged = CheckResult(identity=identity)
    for partial in results:
        merged.merge(partial)
    logger.info(f"sweep {identity}: {merged.checked} instances, {len(merged.failures)} failures")
    return merged
