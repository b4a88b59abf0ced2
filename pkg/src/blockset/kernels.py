"""Backend selection for the bitmask kernels.

The compiled module is used when it imported and the instance fits in
64-bit words; otherwise the pure-Python twin runs.  Setting the
environment variable ``BLOCKSET_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

_native = None
if os.environ.get("BLOCKSET_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _native
    except ImportError:  # pragma: no cover - depends on the build
        _native = None

BACKEND = "cython" if _native is not None else "python"

WORD = 64


def _pick(n, m=0):
    if _native is not None and n <= WORD and m <= WORD:
        return _native
    return _pykernels


def alpha_table(adj, n):
    return _pick(n).alpha_table(adj, n)


def alpha_bb(adj, allowed):
    return _pick(max(len(adj), allowed.bit_length())).alpha_bb(adj, allowed)


def maximum_independent_sets(adj, allowed, alpha):
    return _pick(max(len(adj), allowed.bit_length())).maximum_independent_sets(
        adj, allowed, alpha)


def max_minimal_transversal(edges, n):
    return _pick(n, len(edges)).max_minimal_transversal(edges, n)


def minimal_transversals(edges, n):
    return _pick(n, len(edges)).minimal_transversals(edges, n)


def max_minimal_dominating(adj, n):
    return _pick(n).max_minimal_dominating(adj, n)


def backends():
    """Name -> module for every available backend (used by tests and bench)."""
    out = {"python": _pykernels}
    if _native is not None:
        out["cython"] = _native
    return out
