"""Maximum minimal blocking sets through independence-number branching."""

from __future__ import annotations

from typing import Optional

from . import mmhs
from .alpha import AlphaOracle
from .core import Graph, Hypergraph, SetLike, from_mask, iter_bits, to_mask
from .oracle import mis_masks
from .search import SearchContext

MODES = ("exactly", "at_most", "at_least")


def mis_hypergraph(G: Graph, capacity=None) -> Hypergraph:
    """Hypergraph on V(G) whose edges are the maximum independent sets of G.

    Minimal blocking sets of G are exactly its minimal hitting sets.
    """
    _, sets = mis_masks(G, capacity)
    return Hypergraph(G.n, sets)


def is_minimal_blocking(G: Graph, Y: SetLike, alpha: Optional[AlphaOracle] = None) -> bool:
    """Minimality test through alpha drops; works up to the core capacity."""
    y = to_mask(Y)
    if y >> G.n:
        raise ValueError("Y is not a subset of V(G)")
    al = alpha or AlphaOracle(G)
    return _is_mbs(al, y, al(al.full))


def _is_mbs(al, y, a):
    full = al.full
    if al(full & ~y) >= a:
        return False
    for v in iter_bits(y):
        if al(full & ~(y & ~(1 << v))) != a:
            return False
    return True


def _search(G, beta, at_most, ctx):
    al = AlphaOracle(G)
    full = al.full
    a = al(full)

    def rec(x, size, depth):
        ctx.tick(depth)
        if al(full & ~x) < a:
            # x already blocks: no strict superset can be minimal
            if (at_most or size == beta) and _is_mbs(al, x, a):
                return x
            return None
        if size >= beta:
            return None
        # a maximum independent set avoiding x is a mis of G; every
        # blocking superset of x must take one of its vertices
        for v in iter_bits(al.lex_min_mis(full & ~x)):
            r = rec(x | 1 << v, size + 1, depth + 1)
            if r is not None:
                return r
        return None

    return rec(0, 0, 0)


def mmbs_search_exact(G: Graph, beta: int, mode: str = "exactly",
                      stats=None, deadline=None) -> bool:
    """Is there a minimal blocking set of size exactly (or at most) beta?"""
    return search_certificate(G, beta, mode, stats, deadline) is not None


def search_certificate(G, beta, mode="exactly", stats=None, deadline=None):
    if mode not in ("exactly", "at_most"):
        raise ValueError(f"mode must be 'exactly' or 'at_most', not {mode!r}")
    if beta < 1:
        raise ValueError("beta must be at least 1")
    if G.n == 0:
        raise ValueError("minimal blocking sets are undefined for the graph with no vertices")
    ctx = SearchContext(stats, deadline, poll=16)
    try:
        r = _search(G, beta, mode == "at_most", ctx)
    finally:
        ctx.finish()
    return None if r is None else from_mask(r)


def mmbs_at_least_fixed_alpha(G: Graph, beta: int, engine: str = "improved",
                              stats=None, deadline=None) -> bool:
    """mmbs(G) >= beta, answered by an mmhs engine on the mis hypergraph."""
    return at_least_certificate(G, beta, engine, stats, deadline) is not None


def at_least_certificate(G, beta, engine="improved", stats=None, deadline=None):
    if G.n == 0:
        raise ValueError("minimal blocking sets are undefined for the graph with no vertices")
    key = {"improved_fpt": "improved", "extension_branch": "extension",
           "alt_branch": "alt"}.get(engine, engine)
    if key not in mmhs.ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    return mmhs.ENGINES[key](mis_hypergraph(G), beta, stats, deadline)
