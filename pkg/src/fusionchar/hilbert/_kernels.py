"""Backend selection for the hot loops.

``FUSIONCHAR_BACKEND=numpy`` forces the pure-numpy path; the default is
numba when it imports, numpy otherwise.
"""
import logging
import os

from . import _numpy_kernels

log = logging.getLogger(__name__)

ENV_FLAG = "FUSIONCHAR_BACKEND"


def _load_numba():
    try:
        from . import _numba_kernels
    except ImportError:
        return None
    return _numba_kernels


def get_kernels(name=None):
    """Kernel module for ``name`` ("numba" or "numpy"); None reads the env flag."""
    if name is None:
        name = os.environ.get(ENV_FLAG, "numba").strip().lower() or "numba"
    if name == "numpy":
        return _numpy_kernels
    if name != "numba":
        raise ValueError(f"unknown backend {name!r} (expected 'numba' or 'numpy')")
    mod = _load_numba()
    if mod is None:
        log.warning("numba unavailable, falling back to the numpy kernels")
        return _numpy_kernels
    return mod
