"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise (or
when ``TROPFIT_PURE_PYTHON`` is set) the numpy module ``_kernels_py`` is used.
Callers fetch :data:`kernels` at call time so :func:`set_backend` takes effect
immediately.
"""
from __future__ import annotations

import contextlib
import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

HAVE_COMPILED = _compiled is not None

kernels = _kernels_py if (_compiled is None or os.environ.get("TROPFIT_PURE_PYTHON")) else _compiled


def available() -> list[str]:
    return ["python"] + (["cython"] if HAVE_COMPILED else [])


def get_backend(name: str):
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("the compiled kernels are not available")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def set_backend(name: str) -> None:
    global kernels
    kernels = get_backend(name)


def current() -> str:
    return kernels.NAME


@contextlib.contextmanager
def use_backend(name: str):
    global kernels
    previous = kernels
    kernels = get_backend(name)
    try:
        yield kernels
    finally:
        kernels = previous
