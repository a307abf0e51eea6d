"""Run deeply recursive work on a thread with a large C stack.

Elaborating a 1000-element vector literal nests thousands of Python frames;
CPython 3.10 puts each on the C stack, which overflows the 8 MiB default.
"""

from __future__ import annotations

import functools
import sys
import threading

STACK_BYTES = 512 * 1024 * 1024
RECURSION_LIMIT = 1_000_000

_state = threading.local()


def in_deep_thread() -> bool:
    return getattr(_state, "active", False)


def run_deep(fn, *args, **kwargs):
    if in_deep_thread():
        return fn(*args, **kwargs)
    box: dict = {}

    def target():
        _state.active = True
        try:
            box["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised on the calling thread
            box["error"] = exc

    if sys.getrecursionlimit() < RECURSION_LIMIT:
        sys.setrecursionlimit(RECURSION_LIMIT)
    previous = threading.stack_size(STACK_BYTES)
    try:
        worker = threading.Thread(target=target, name="fowlkit-deep")
        worker.start()
    finally:
        threading.stack_size(previous)
    worker.join()
    if "error" in box:
        raise box["error"]
    return box["value"]


def deep(fn):
    """Decorator: run ``fn`` via :func:`run_deep` unless already deep."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        if in_deep_thread():
            return fn(*args, **kwargs)
        return run_deep(fn, *args, **kwargs)

    return wrapper
