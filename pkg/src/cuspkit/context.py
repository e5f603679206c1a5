import os
from contextvars import ContextVar
from contextlib import contextmanager
from dataclasses import dataclass, replace
from typing import Generator, Optional


@dataclass(frozen=True)
class Tolerance:
    """Numerical tolerance settings for classification thresholds."""
    atol: float = 1e-9  # absolute band around the parabolic threshold
    strict: bool = False  # raise instead of snapping inside the band
    noise_floor: float = 1e-12  # below this a discrepancy is rounding error


_tolerance: ContextVar[Tolerance] = ContextVar("cuspkit_tolerance", default=Tolerance())


@contextmanager
def tolerance_context(
    atol: Optional[float] = None,
    strict: Optional[bool] = None,
) -> Generator[Tolerance, None, None]:
    """
    Context manager scoping the numerical tolerance for the current execution.

    Usage:
        with tolerance_context(atol=1e-7, strict=True):
            classify(g)
    """
    current = _tolerance.get()
    if atol is not None:
        if atol <= 0:
            raise ValueError("Tolerance must be positive")
        current = replace(current, atol=atol)
    if strict is not None:
        current = replace(current, strict=strict)

    token = _tolerance.set(current)
    try:
        yield current
    finally:
        _tolerance.reset(token)


def get_tolerance() -> Tolerance:
    """Get the tolerance in effect for the current scope."""
    return _tolerance.get()


def resolve_threads(threads: Optional[int] = None) -> int:
    """Worker count: explicit value, else CUSPKIT_THREADS, else min(4, cpu count)."""
    if threads is None:
        env = os.environ.get("CUSPKIT_THREADS")
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise ValueError(f"CUSPKIT_THREADS must be an integer, got {env!r}")
        else:
            threads = min(4, os.cpu_count() or 1)
    if threads < 1:
        raise ValueError("Worker count must be positive")
    return threads
