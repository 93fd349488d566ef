"""Kernel backend selection: compiled extension if built, else pure Python.

Set FQCOVER_PURE_PYTHON=1 to force the fallback. Tests and the benchmark
switch backends at runtime via set_backend(); library code reaches the
kernels through this module's attributes so the switch takes effect
everywhere.
"""

from __future__ import annotations

import os

from . import pykernels

_BACKENDS = {"python": pykernels}

try:
    from . import ckernels

    _BACKENDS["compiled"] = ckernels
except ImportError:  # extension not built; fallback only
    ckernels = None

if os.environ.get("FQCOVER_PURE_PYTHON") == "1" or "compiled" not in _BACKENDS:
    BACKEND = "python"
else:
    BACKEND = "compiled"

_active = _BACKENDS[BACKEND]
mark_progression = _active.mark_progression
project_parents = _active.project_parents


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def set_backend(name: str) -> None:
    """Switch kernel implementations at runtime (diagnostic use)."""
    global BACKEND, _active, mark_progression, project_parents
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    BACKEND = name
    _active = _BACKENDS[name]
    mark_progression = _active.mark_progression
    project_parents = _active.project_parents
