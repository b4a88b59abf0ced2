"""Graphs, hypergraphs and vertex-set helpers.

Vertices are dense ints ``0..n-1``.  Internally every vertex set is an
int bitmask; the public helpers accept any iterable of ints (or a mask)
and hand back frozensets.
"""

from __future__ import annotations

from typing import Iterable, Optional, Union

MAX_VERTICES = 128

SetLike = Union[int, Iterable[int]]


class CapacityError(ValueError):
    """Instance exceeds what a solver is willing to enumerate."""


def check_capacity(n: int, limit: int = MAX_VERTICES, what: str = "solver"):
    if n > limit:
        raise CapacityError(f"{what} capacity exceeded: n={n} > {limit}")


def to_mask(s: SetLike) -> int:
    if isinstance(s, int):
        if s < 0:
            raise ValueError("negative mask")
        return s
    m = 0
    for v in s:
        if v < 0:
            raise ValueError(f"negative vertex id {v}")
        m |= 1 << v
    return m


def from_mask(m: int) -> frozenset:
    return frozenset(iter_bits(m))


def iter_bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def members(m: int) -> list:
    return list(iter_bits(m))


def fmt_set(s: SetLike) -> list:
    """Sorted list form, used for printing and JSON."""
    return members(to_mask(s))


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``origin`` optionally records, for each vertex, the label it had in
    the graph this one was derived from (see ``induced_subgraph``).
    """

    __slots__ = ("n", "edges", "adj", "origin")

    def __init__(self, n: int, edges: Iterable = (), origin: Optional[tuple] = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        es = set()
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {{{u},{v}}} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            es.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(es))
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "origin", tuple(origin) if origin is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def neighbors(self, v: int) -> frozenset:
        self._check_vertex(v)
        return from_mask(self.adj[v])

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def _check_vertex(self, v):
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


class Hypergraph:
    """Vertex universe ``0..n-1`` plus an ordered list of hyperedges.

    Equality ignores edge order (edges are compared as sorted multisets).
    """

    __slots__ = ("n", "edges", "masks", "origin")

    def __init__(self, n: int, edges: Iterable = (), origin: Optional[tuple] = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es = []
        masks = []
        for e in edges:
            m = to_mask(e)
            if m >> n:
                raise ValueError(f"hyperedge {fmt_set(m)} out of range for n={n}")
            es.append(from_mask(m))
            masks.append(m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(es))
        object.__setattr__(self, "masks", tuple(masks))
        object.__setattr__(self, "origin", tuple(origin) if origin is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("Hypergraph is immutable")

    @property
    def m(self) -> int:
        return len(self.masks)

    @property
    def rank(self) -> int:
        """Largest edge size (the alpha(H) parameter)."""
        return max((e.bit_count() for e in self.masks), default=0)

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.masks if e >> v & 1)

    def has_empty_edge(self) -> bool:
        return any(e == 0 for e in self.masks)

    def canonical(self) -> tuple:
        return tuple(sorted(tuple(sorted(e)) for e in self.edges))

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.n, self.canonical()))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, edges={[sorted(e) for e in self.edges]})"


def induced_subgraph(G: Graph, S: SetLike) -> Graph:
    """G[S], relabelled densely in ascending order; ``origin`` maps back."""
    mask = to_mask(S)
    if mask >> G.n:
        raise ValueError(f"vertex set {fmt_set(mask)} out of range for n={G.n}")
    old = members(mask)
    new_of = {v: i for i, v in enumerate(old)}
    edges = [(new_of[u], new_of[v]) for u, v in G.edges if u in new_of and v in new_of]
    return Graph(len(old), edges, origin=old)


def complement(G: Graph) -> Graph:
    n = G.n
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                     if not G.adj[u] >> v & 1])


def closed_neighborhood(G: Graph, v: int) -> frozenset:
    G._check_vertex(v)
    return from_mask(G.adj[v] | 1 << v)


def is_independent_set(G: Graph, S: SetLike) -> bool:
    mask = to_mask(S)
    if mask >> G.n:
        raise ValueError("vertex out of range")
    return mask_independent(G.adj, mask)


def mask_independent(adj, mask: int) -> bool:
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        if adj[low.bit_length() - 1] & mask:
            return False
    return True


def is_hitting_set(H: Hypergraph, S: SetLike) -> bool:
    mask = to_mask(S)
    return all(e & mask for e in H.masks)


def is_clique(G: Graph, S: SetLike) -> bool:
    mask = to_mask(S)
    for v in iter_bits(mask):
        if (mask & ~(1 << v)) & ~G.adj[v]:
            return False
    return True


def is_triangle_free(G: Graph) -> bool:
    return not any(G.adj[u] & G.adj[v] for u, v in G.edges)


def edge_hypergraph(G: Graph) -> Hypergraph:
    """Edges of G as 2-element hyperedges (vertex covers = hitting sets)."""
    return Hypergraph(G.n, [(u, v) for u, v in G.sorted_edges()])


def closed_neighborhood_hypergraph(G: Graph) -> Hypergraph:
    return Hypergraph(G.n, [G.adj[v] | 1 << v for v in range(G.n)])
