"""Exhaustive ground truth.

Everything here scans subsets; nothing is clever on purpose.  All other
solvers are tested against these functions.  Subsets are visited in
(popcount, mask value) order, so certificates are the smallest mask
among the optimal ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import (CapacityError, Graph, Hypergraph, SetLike, check_capacity,
                   from_mask, iter_bits, to_mask)

ORACLE_CAPACITY = 20


@dataclass(frozen=True)
class MisFamily:
    alpha: int
    sets: tuple

    @property
    def masks(self) -> list:
        return [to_mask(s) for s in self.sets]


def _cap(n, capacity):
    check_capacity(n, ORACLE_CAPACITY if capacity is None else capacity, "oracle")


def mis_masks(G: Graph, capacity=None):
    """(alpha, ascending list of maximum independent set masks)."""
    _cap(G.n, capacity)
    full = G.vertex_mask
    alpha = kernels.alpha_table(G.adj, G.n)[full] if G.n else 0
    return alpha, kernels.maximum_independent_sets(G.adj, full, alpha)


def enumerate_max_independent_sets(G: Graph, capacity=None) -> MisFamily:
    alpha, sets = mis_masks(G, capacity)
    return MisFamily(alpha, tuple(from_mask(m) for m in sets))


def has_unique_mis(G: Graph, capacity=None) -> bool:
    return len(mis_masks(G, capacity)[1]) == 1


def _blocks_minimally(family, y: int) -> bool:
    if any(not (i & y) for i in family):
        return False
    for v in iter_bits(y):
        bit = 1 << v
        if not any(i & y == bit for i in family):
            return False
    return True


def is_minimal_blocking_set(G: Graph, Y: SetLike, capacity=None) -> bool:
    y = to_mask(Y)
    if y >> G.n:
        raise ValueError("Y is not a subset of V(G)")
    return _blocks_minimally(mis_masks(G, capacity)[1], y)


def is_minimal_hitting_set(H: Hypergraph, S: SetLike) -> bool:
    return _blocks_minimally(H.masks, to_mask(S))


def mmbs_bruteforce(G: Graph, capacity=None):
    """(mmbs(G), certificate).  Undefined for the empty graph."""
    if G.n == 0:
        raise ValueError("mmbs is undefined for the graph with no vertices")
    _, family = mis_masks(G, capacity)
    value, mask = kernels.max_minimal_transversal(family, G.n)
    return value, from_mask(mask)


def all_minimal_blocking_sets(G: Graph, capacity=None) -> list:
    _, family = mis_masks(G, capacity)
    return [from_mask(m) for m in kernels.minimal_transversals(family, G.n)]


def mmhs_bruteforce(H: Hypergraph, capacity=None):
    """(mmhs(H), certificate); zero edges give (0, {})."""
    _cap(H.n, capacity)
    if H.has_empty_edge():
        raise ValueError("hypergraph has an empty hyperedge, so no hitting set exists")
    value, mask = kernels.max_minimal_transversal(list(H.masks), H.n)
    return value, from_mask(mask)


def all_minimal_hitting_sets(H: Hypergraph, capacity=None) -> list:
    _cap(H.n, capacity)
    return [from_mask(m) for m in kernels.minimal_transversals(list(H.masks), H.n)]


def blocker(family, n: int, capacity=None) -> list:
    """b(A): all inclusion-minimal transversals of ``family`` over ``0..n-1``."""
    _cap(n, capacity)
    masks = [to_mask(a) for a in family]
    return [from_mask(m) for m in kernels.minimal_transversals(masks, n)]


def mmds_bruteforce(G: Graph, capacity=None):
    """(largest inclusion-minimal dominating set size, certificate)."""
    _cap(G.n, capacity)
    value, mask = kernels.max_minimal_dominating(G.adj, G.n)
    return value, from_mask(mask)


def all_minimal_dominating_sets(G: Graph, capacity=None) -> list:
    """Slow reference used by property tests (small n only)."""
    _cap(G.n, capacity)
    full = G.vertex_mask
    closed = [G.adj[v] | 1 << v for v in range(G.n)]

    def dominated(d):
        out = 0
        for v in iter_bits(d):
            out |= closed[v]
        return out

    found = []
    for d in range(1 << G.n):
        if dominated(d) != full:
            continue
        if all(dominated(d & ~(1 << v)) != full for v in iter_bits(d)):
            found.append(d)
    found.sort(key=lambda m: (m.bit_count(), m))
    return [from_mask(m) for m in found]


__all__ = [
    "CapacityError", "MisFamily", "ORACLE_CAPACITY", "all_minimal_blocking_sets",
    "all_minimal_dominating_sets", "all_minimal_hitting_sets", "blocker",
    "enumerate_max_independent_sets", "has_unique_mis", "is_minimal_blocking_set",
    "is_minimal_hitting_set", "mis_masks", "mmbs_bruteforce", "mmds_bruteforce",
    "mmhs_bruteforce",
]
