"""Independence numbers of induced subgraphs, memoized per graph."""

from __future__ import annotations

from . import kernels
from .core import Graph, check_capacity

TABLE_LIMIT = 20


class AlphaOracle:
    """alpha(G[mask]) for arbitrary masks of one fixed graph.

    Graphs with at most ``TABLE_LIMIT`` vertices get a full lookup table
    (one byte per subset); larger ones use branch and reduce with a memo.
    """

    def __init__(self, G: Graph, table_limit: int = TABLE_LIMIT):
        check_capacity(G.n)
        self.G = G
        self.adj = list(G.adj)
        self.full = G.vertex_mask
        self._table = kernels.alpha_table(self.adj, G.n) if G.n <= table_limit else None
        self._memo = {}

    def __call__(self, mask: int) -> int:
        if self._table is not None:
            return self._table[mask]
        r = self._memo.get(mask)
        if r is None:
            r = self._memo[mask] = kernels.alpha_bb(self.adj, mask)
        return r

    def lex_min_mis(self, allowed: int) -> int:
        """Lexicographically smallest maximum independent set of G[allowed]."""
        target = self(allowed)
        rem, out, k = allowed, 0, 0
        while k < target:
            low = rem & -rem
            v = low.bit_length() - 1
            rest = rem ^ low
            if k + 1 + self(rest & ~self.adj[v]) == target:
                out |= low
                k += 1
                rem = rest & ~self.adj[v]
            else:
                rem = rest
        return out
