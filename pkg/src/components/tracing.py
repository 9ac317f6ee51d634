"""
Call tracing for the builder independence audit.

Primitives decorated with ``traced`` record their top-level invocations while a
``trace_calls`` session is active. Nested calls (a primitive called from inside
another traced primitive) are not recorded.
"""
import functools
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any, Iterator, List, Optional, Tuple

TraceEntry = Tuple[str, Tuple[Any, ...], Tuple[Tuple[str, Any], ...]]

_session: ContextVar[Optional[List[TraceEntry]]] = ContextVar('trace_session', default=None)
_depth: ContextVar[int] = ContextVar('trace_depth', default=0)


def _freeze(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    if isinstance(value, dict):
        return tuple(sorted((k, _freeze(v)) for k, v in value.items()))
    return value


def traced(func):
    """Record top-level calls of ``func`` inside an active trace session."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        session = _session.get()
        if session is None:
            return func(*args, **kwargs)
        depth = _depth.get()
        if depth == 0:
            session.append((func.__name__, _freeze(args), _freeze(kwargs)))
        token = _depth.set(depth + 1)
        try:
            return func(*args, **kwargs)
        finally:
            _depth.reset(token)

    return wrapper


@contextmanager
def trace_calls() -> Iterator[List[TraceEntry]]:
    """Collect top-level traced calls made inside the block."""
    calls: List[TraceEntry] = []
    session_token = _session.set(calls)
    depth_token = _depth.set(0)
    try:
        yield calls
    finally:
        _depth.reset(depth_token)
        _session.reset(session_token)
