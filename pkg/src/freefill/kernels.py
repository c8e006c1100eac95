"""Kernel selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python twin in ``_pykernels``. Set ``FREEFILL_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

python_kernels = _pykernels

try:
    from . import _ckernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and not os.environ.get("FREEFILL_PURE_PYTHON"):
    active = compiled_kernels
else:
    active = _pykernels

IMPLEMENTATION = active.IMPLEMENTATION

letter_key = _pykernels.letter_key
key_letter = _pykernels.key_letter
free_reduce = active.free_reduce
cyclic_peel = active.cyclic_peel
least_rotation = active.least_rotation
smallest_period = active.smallest_period
cyclic_counts = active.cyclic_counts
walk_draws = active.walk_draws
is_rotation = active.is_rotation

__all__ = [
    "IMPLEMENTATION",
    "compiled_kernels",
    "python_kernels",
    "letter_key",
    "key_letter",
    "free_reduce",
    "cyclic_peel",
    "least_rotation",
    "smallest_period",
    "cyclic_counts",
    "walk_draws",
    "is_rotation",
]


_NAMES = [n for n in __all__ if n not in ("IMPLEMENTATION", "compiled_kernels", "python_kernels", "letter_key", "key_letter")]


def select(implementation: str) -> str:
    """Rebind the kernel functions to ``"cython"`` or ``"python"``; returns the previous choice.

    Callers that looked kernels up through this module pick up the change.
    """
    global IMPLEMENTATION
    if implementation == "cython":
        if compiled_kernels is None:
            raise RuntimeError("compiled kernels are not built")
        source = compiled_kernels
    elif implementation == "python":
        source = _pykernels
    else:
        raise ValueError(f"unknown kernel implementation {implementation!r}")
    previous = IMPLEMENTATION
    g = globals()
    for name in _NAMES:
        g[name] = getattr(source, name)
    IMPLEMENTATION = source.IMPLEMENTATION
    return previous
