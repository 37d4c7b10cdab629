"""
Tracing helpers.

Debug-level logging of the expensive pipeline stages.
"""

import logging
import time
from functools import wraps

# Configure logging
logger = logging.getLogger(__name__)


def traced(func):
    """Decorator to log a stage call and its wall time."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        logger.debug(f"{func.__qualname__} called")
        start = time.perf_counter()
        result = func(*args, **kwargs)
        logger.debug(f"{func.__qualname__} finished in {time.perf_counter() - start:.3f}s")
        return result
    return wrapper
