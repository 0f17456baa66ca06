"""Exact elimination kernels with a compiled core and a pure-Python fallback.

The compiled ``_core`` extension is used when it was built; otherwise, or
when ``PMLAB_PURE_PYTHON=1`` is set, the ``_fallback`` module is loaded.  Both
expose the same functions.  :func:`coerce` converts integer matrices to
``gmpy2.mpz`` when entries are wide enough for GMP to pay off.
"""

import importlib
import os

from . import _fallback

try:
    import gmpy2
except ImportError:  # pragma: no cover
    gmpy2 = None


def _load_core():
    if os.environ.get("PMLAB_PURE_PYTHON", "") in ("1", "true", "yes"):
        return None
    try:
        return importlib.import_module(f"{__name__}._core")
    except ImportError:  # pragma: no cover - depends on the build
        return None


_core = _load_core()

active = _core if _core is not None else _fallback
BACKEND = active.BACKEND

# Below this many bits per entry Python ints are as fast as mpz.
MPZ_MIN_BITS = 24


def backends():
    """Available kernel modules by name, compiled first."""
    out = {}
    if _core is not None:
        out["cython"] = _core
    out["python"] = _fallback
    return out


def coerce(rows, force=None):
    """Copy an integer matrix into the fastest integer type for elimination."""
    rows = [list(r) for r in rows]
    if gmpy2 is None or force is False:
        return rows
    if force is None:
        width = max((abs(int(x)).bit_length() for r in rows for x in r), default=0)
        if width < MPZ_MIN_BITS or len(rows) < 8:
            return rows
    mpz = gmpy2.mpz
    return [[mpz(x) for x in r] for r in rows]


det = active.det
principal_det = active.principal_det
leading_minors = active.leading_minors
inertia = active.inertia
solve = active.solve
scan_minors = active.scan_minors
