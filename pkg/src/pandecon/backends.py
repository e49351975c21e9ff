"""Kernel backend selection.

Two interchangeable RK4 kernels exist: the compiled Cython extension
(pandecon._sir_core) and the pure-Python reference (pandecon._sir_py). They are
bit-identical by construction; the compiled one is roughly two orders of
magnitude faster. Selection happens once at import, controlled by the
PANDECON_BACKEND environment variable:

    auto      use the extension when importable, else pure Python (default)
    compiled  require the extension, fail loudly if missing
    python    force the pure-Python kernel

benchmarks and tests can switch at runtime with use().
"""

import contextlib
import os

from . import _sir_py

try:
    from . import _sir_core
except ImportError:
    _sir_core = None

_KERNELS = {"python": _sir_py, "compiled": _sir_core}


def get_backend(name):
    """Return the kernel module for a backend name, or None if unavailable."""
    if name not in _KERNELS:
        raise ValueError("unknown backend %r (choose 'python' or 'compiled')" % name)
    return _KERNELS[name]


def _select(requested):
    if requested == "auto":
        return ("compiled", _sir_core) if _sir_core is not None else ("python", _sir_py)
    kernel = get_backend(requested)
    if kernel is None:
        raise ImportError(
            "PANDECON_BACKEND=compiled but pandecon._sir_core is not built; "
            "reinstall with a C toolchain or unset the variable"
        )
    return requested, kernel


_active_name, _active = _select(os.environ.get("PANDECON_BACKEND", "auto"))


def integrate(*args, **kwargs):
    """RK4 integration via the active kernel (see _sir_py.integrate)."""
    return _active.integrate(*args, **kwargs)


def backend_name():
    """Name of the kernel currently in use: 'compiled' or 'python'."""
    return _active_name


@contextlib.contextmanager
def use(name):
    """Temporarily switch the active kernel (for benchmarks and tests)."""
    global _active_name, _active
    previous = (_active_name, _active)
    _active_name, _active = _select(name)
    try:
        yield
    finally:
        _active_name, _active = previous
