"""
Reusable function decorators.
"""

import functools
import time
from typing import Any, Callable

from .logger import get_logger

logger = get_logger(__name__)


def log_execution_time(func: Callable) -> Callable:
    """
    Decorator to log function execution time at DEBUG level.

    Usage:
        @log_execution_time
        def estimate_groups(...):
            ...
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        start_time = time.perf_counter()
        try:
            return func(*args, **kwargs)
        finally:
            execution_time = time.perf_counter() - start_time
            logger.debug(f"{func.__name__} executed in {execution_time:.3f}s")

    return wrapper
