"""Backend selection for the subset-sum DP kernels.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels``. Set ``WARING_SIEVE_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from types import ModuleType

from . import _pykernels

__all__ = ["BACKEND", "available_backends", "get_backend", "use_backend", "subset_table", "subset_totals"]

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

_BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

if os.environ.get("WARING_SIEVE_PURE") == "1" or _ckernels is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"

_active = _BACKENDS[BACKEND]


def available_backends() -> list[str]:
    return list(_BACKENDS)


def get_backend() -> str:
    return next(name for name, mod in _BACKENDS.items() if mod is _active)


@contextmanager
def use_backend(name: str):
    """Temporarily switch backend (tests and benchmarks)."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    prev, _active = _active, _BACKENDS[name]
    try:
        yield
    finally:
        _active = prev


def subset_table(slots: list[int], p: int, kmax: int) -> list[list[int]]:
    return _active.subset_table(slots, p, kmax)


def subset_totals(slots: list[int], p: int) -> list[int]:
    return _active.subset_totals(slots, p)
