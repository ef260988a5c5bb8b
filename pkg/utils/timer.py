import logging
from functools import wraps
from time import perf_counter

logger = logging.getLogger(__name__)


def timing_wrapper(func):
    @wraps(func)
    def wrap(*args, **kwargs):
        start_time = perf_counter()
        result = func(*args, **kwargs)
        end_time = perf_counter()
        logger.debug(f"Function: {func.__name__} Took: {end_time - start_time:.4f}s")
        return result

    return wrap
