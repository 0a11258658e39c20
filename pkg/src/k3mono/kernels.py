"""Kernel backend selection.

The compiled Cython extension is used when it imports; otherwise the numpy
fallback. Set ``K3MONO_PURE_PYTHON=1`` to force the fallback (the benchmark and
the backend-parity tests do this through :func:`load_backend`).
"""

import importlib
import os

_NAMES = (
    "horner",
    "aberth",
    "newton_batch",
    "min_pairwise_distance",
    "nearest_distances",
    "poly_from_roots",
)

STATUS_OK = 0
STATUS_LEFT_TRUST = 1
STATUS_DERIVATIVE_VANISHES = 2
STATUS_NO_CONVERGENCE = 3


def load_backend(name):
    """Return the kernel module ``"compiled"`` or ``"python"``."""
    if name == "compiled":
        return importlib.import_module("k3mono._ckernels")
    if name == "python":
        return importlib.import_module("k3mono._kernels_py")
    raise ValueError(f"unknown kernel backend {name!r}")


def _select():
    if os.environ.get("K3MONO_PURE_PYTHON", "") not in ("", "0"):
        return "python", load_backend("python")
    try:
        return "compiled", load_backend("compiled")
    except ImportError:
        return "python", load_backend("python")


BACKEND, _mod = _select()

horner = _mod.horner
aberth = _mod.aberth
newton_batch = _mod.newton_batch
min_pairwise_distance = _mod.min_pairwise_distance
nearest_distances = _mod.nearest_distances
poly_from_roots = _mod.poly_from_roots

__all__ = ["BACKEND", "load_backend", *_NAMES]
