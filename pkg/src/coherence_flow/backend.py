"""Kernel backend selection.

The compiled ``_core`` extension is used when it imports; otherwise the
numpy implementation in ``_pycore`` takes over. Setting the environment
variable ``COHERENCE_FLOW_BACKEND=python`` forces the fallback.
"""
import os

from . import _pycore

BACKEND = "python"
_impl = _pycore

if os.environ.get("COHERENCE_FLOW_BACKEND", "").lower() != "python":
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pycore

eigh = _impl.eigh
dilate = _impl.dilate
l1_offdiag = _impl.l1_offdiag


def get_kernels(name=None):
    """Return the kernel module named ``"compiled"`` or ``"python"`` (default: active)."""
    if name is None or name == BACKEND:
        return _impl
    if name == "python":
        return _pycore
    if name == "compiled":
        from . import _core

        return _core
    raise ValueError(f"unknown backend {name!r}")
