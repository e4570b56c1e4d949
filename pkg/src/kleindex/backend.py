"""Kernel backend selection.

Two interchangeable kernel modules implement the hot loops: ``_kernels_nb``
(numba JIT) and ``_kernels_np`` (vectorized numpy).  Which one runs is
controlled by the KLEINDEX_BACKEND environment variable or an explicit
argument: "numba", "numpy", or "auto" (numba when importable, else numpy).
Both produce bit-identical hit grids, so the choice only affects speed.

KLEINDEX_WORKERS sets the default number of index-range chunks rendered in
parallel threads.
"""

from __future__ import annotations

import os

BACKEND_ENV = "KLEINDEX_BACKEND"
WORKERS_ENV = "KLEINDEX_WORKERS"

BACKENDS = ("numba", "numpy")


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend(name: str | None = None) -> str:
    """Map an explicit name or the environment to "numba" or "numpy"."""
    if name is None:
        name = os.environ.get(BACKEND_ENV, "auto")
    name = name.lower()
    if name == "auto":
        return "numba" if numba_available() else "numpy"
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose auto, numba or numpy")
    if name == "numba" and not numba_available():
        raise RuntimeError("backend 'numba' requested but numba is not importable")
    return name


def get_kernels(name: str | None = None):
    """Import and return the kernel module for the resolved backend."""
    backend = resolve_backend(name)
    if backend == "numba":
        from . import _kernels_nb
        return _kernels_nb
    from . import _kernels_np
    return _kernels_np


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    if workers < 1:
        raise ValueError(f"{WORKERS_ENV} must be at least 1, got {workers}")
    return workers
