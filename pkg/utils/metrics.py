import asyncio
import functools
import logging
import time

'''Timing helpers and the shared logging setup.'''

# Configure basic logging if not already configured
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger("metrics")


def set_quiet(quiet: bool):
    logging.getLogger().setLevel(logging.WARNING if quiet else logging.INFO)


def _call_label(func, args) -> str:
    """Name the call after the CLI command or SimConfig in its first argument, if any."""
    target = args[0] if args else None
    if hasattr(target, "command"):
        decoders = getattr(target, "decoder", None)
        if isinstance(decoders, str):
            decoders = [decoders]
        label = f"{target.command} code={target.code}"
        return label + (f" decoders={','.join(decoders)}" if decoders else "")
    if hasattr(target, "decoders") and hasattr(target, "code"):
        names = ",".join(getattr(d, "value", d) for d in target.decoders)
        return f"{func.__name__} code={target.code.name} decoders={names}"
    return func.__name__


def _log_elapsed(label: str, start_time: float, failed: bool):
    outcome = "failed after" if failed else "finished in"
    logger.info(f"{label} {outcome} {time.perf_counter() - start_time:.6f} s")


def time_execution(func):
    """Log the wall time of a command, simulation run or plain function, sync or async."""
    if asyncio.iscoroutinefunction(func):
        @functools.wraps(func)
        async def async_wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            failed = True
            try:
                result = await func(*args, **kwargs)
                failed = False
                return result
            finally:
                _log_elapsed(_call_label(func, args), start_time, failed)
        return async_wrapper

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        failed = True
        try:
            result = func(*args, **kwargs)
            failed = False
            return result
        finally:
            _log_elapsed(_call_label(func, args), start_time, failed)
    return wrapper


class Stopwatch:
    """Context manager recording elapsed seconds in `.elapsed`."""

    def __enter__(self):
        self._start = time.perf_counter()
        self.elapsed = 0.0
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self._start
        return False


def latency_summary(times) -> dict:
    """p50/p95/p99/min/max of a list of durations in seconds."""
    ordered = sorted(times)
    count = len(ordered)
    if count == 0:
        raise ValueError("latency_summary needs at least one sample")
    return {
        "p50": ordered[int(count * 0.50)],
        "p95": ordered[min(count - 1, int(count * 0.95))],
        "p99": ordered[min(count - 1, int(count * 0.99))],
        "min": ordered[0],
        "max": ordered[-1],
    }
