"""Instance generators: reduction gadgets with known answers, plus seeded randomness.

Random streams come from ``XorShift64Star`` (named ``xorshift64star-v1``)
so a corpus can be regenerated bit-exactly from a JSON recipe in any
language.  The contract:

* seeding: ``state = splitmix64(seed mod 2^64)``, replaced by
  ``0x9E3779B97F4A7C15`` if that is zero;
* step: ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27`` (64-bit),
  output ``x * 0x2545F4914F6CDD1D mod 2^64``;
* ``uniform()`` is ``(next >> 11) * 2^-53``;
* ``below(k)`` is ``(next * k) >> 64``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .core import (Graph, Hypergraph, complement, is_clique, is_triangle_free,
                   mask_independent, to_mask)

PRNG_NAME = "xorshift64star-v1"
RECIPE_VERSION = 1

_M64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        s = splitmix64(seed & _M64)
        self.state = s if s else 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _M64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & _M64

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, k: int) -> int:
        return (self.next_u64() * k) >> 64


# ---------------------------------------------------------------- partitioned graphs

@dataclass(frozen=True)
class PartitionedGraph:
    graph: Graph
    parts: tuple  # of frozenset, in label order

    def __init__(self, graph: Graph, parts):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in parts))
        seen = 0
        for p in self.parts:
            m = to_mask(p)
            if m >> graph.n:
                raise ValueError("part contains a vertex outside the graph")
            if m & seen:
                raise ValueError("parts overlap")
            if not m:
                raise ValueError("empty part")
            if not is_clique(graph, m):
                raise ValueError(f"part {sorted(p)} is not a clique")
            seen |= m
        if seen != graph.vertex_mask:
            raise ValueError("parts do not cover the vertex set")

    @property
    def k(self) -> int:
        return len(self.parts)

    def part_of(self) -> list:
        out = [0] * self.graph.n
        for i, p in enumerate(self.parts):
            for v in p:
                out[v] = i
        return out


def mcis_bruteforce(PG: PartitionedGraph) -> Optional[frozenset]:
    """A multicolored independent set (one vertex per part), if any."""
    for pick in product(*(sorted(p) for p in PG.parts)):
        if mask_independent(PG.graph.adj, to_mask(pick)):
            return frozenset(pick)
    return None


# ---------------------------------------------------------------- reductions

def gen_pendant(G: Graph) -> Graph:
    """Attach a private pendant vertex n+v to every vertex v."""
    n = G.n
    return Graph(2 * n, list(G.edges) + [(v, n + v) for v in range(n)])


def gen_complement_mmvc(G: Graph) -> Graph:
    """Complement of a triangle-free graph: its mmbs equals mmvc(G)."""
    if G.m == 0:
        raise ValueError("input must have at least one edge")
    if not is_triangle_free(G):
        raise ValueError("input must be triangle-free")
    return complement(G)


def gen_mcis_join(PG: PartitionedGraph) -> Graph:
    """G plus k new independent vertices n..n+k-1, completely joined to G.

    mmbs >= 2 iff G has a multicolored independent set, else mmbs = 1.
    """
    G, n, k = PG.graph, PG.graph.n, PG.k
    edges = list(G.edges) + [(u, n + i) for u in range(n) for i in range(k)]
    return Graph(n + k, edges)


def gen_updom(PG: PartitionedGraph) -> Graph:
    """Three copies (ids v, n+v, 2n+v) of every vertex.

    Copies of one part form a clique minus the triangles of each vertex's
    own copies; a cross edge {u,v} becomes {u_A,v_B} and {u_B,v_A}.  The
    result has a minimal dominating set of size >= 3k iff G has a
    multicolored independent set.
    """
    G, n = PG.graph, PG.graph.n
    part = PG.part_of()
    edges = set()
    for p in PG.parts:
        copies = [(v, c) for v in sorted(p) for c in range(3)]
        for i, (u, cu) in enumerate(copies):
            for v, cv in copies[i + 1:]:
                if u != v:
                    edges.add((u + cu * n, v + cv * n))
    for u, v in G.edges:
        if part[u] != part[v]:
            edges.add((u, n + v))
            edges.add((n + u, v))
    return Graph(3 * n, edges)


def updom_to_mmhs(G: Graph) -> Hypergraph:
    """One hyperedge per closed neighbourhood, duplicates dropped."""
    seen, edges = set(), []
    for v in range(G.n):
        e = G.adj[v] | 1 << v
        if e not in seen:
            seen.add(e)
            edges.append(e)
    return Hypergraph(G.n, edges)


# ---------------------------------------------------------------- random instances

def random_graph(n: int, edge_prob: float, seed: int) -> Graph:
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = XorShift64Star(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.uniform() < edge_prob]
    return Graph(n, edges)


def random_hypergraph(n: int, m: int, max_edge_size: int, seed: int) -> Hypergraph:
    if n < 1 or m < 0 or max_edge_size < 1:
        raise ValueError("need n >= 1, m >= 0 and max_edge_size >= 1")
    rng = XorShift64Star(seed)
    cap = min(max_edge_size, n)
    edges = []
    for _ in range(m):
        size = 1 + rng.below(cap)
        pool = list(range(n))
        for i in range(size):
            j = i + rng.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        edges.append(sorted(pool[:size]))
    return Hypergraph(n, edges)


def random_partitioned_graph(sizes, cross_prob: float, seed: int) -> PartitionedGraph:
    """Parts of the given sizes (consecutive ids), random edges between parts."""
    if any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    if not 0.0 <= cross_prob <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = XorShift64Star(seed)
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    part = [i for i, p in enumerate(parts) for _ in p]
    edges = []
    for u in range(start):
        for v in range(u + 1, start):
            if part[u] == part[v] or rng.uniform() < cross_prob:
                edges.append((u, v))
    return PartitionedGraph(Graph(start, edges), parts)


def gen_random(kind: str, seed: int, **params):
    """``kind`` is 'graph' (n, edge_prob) or 'hypergraph' (n, m, max_edge_size)."""
    if kind == "graph":
        return random_graph(params["n"], params["edge_prob"], seed)
    if kind == "hypergraph":
        return random_hypergraph(params["n"], params["m"], params["max_edge_size"], seed)
    if kind == "partitioned":
        return random_partitioned_graph(params["sizes"], params["cross_prob"], seed)
    raise ValueError(f"unknown random kind {kind!r}")


# ---------------------------------------------------------------- recipes

def make_recipe(kind: str, seed: int, **params) -> dict:
    return {"version": RECIPE_VERSION, "prng": PRNG_NAME, "kind": kind,
            "seed": seed, "params": params}


def from_recipe(recipe) -> object:
    """Rebuild an instance from a recipe dict (or its JSON text)."""
    if isinstance(recipe, str):
        recipe = json.loads(recipe)
    if recipe.get("version") != RECIPE_VERSION or recipe.get("prng") != PRNG_NAME:
        raise ValueError("unsupported recipe version or generator")
    return gen_random(recipe["kind"], recipe["seed"], **recipe.get("params", {}))


__all__ = [
    "PRNG_NAME", "PartitionedGraph", "XorShift64Star", "from_recipe", "gen_complement_mmvc",
    "gen_mcis_join", "gen_pendant", "gen_random", "gen_updom", "make_recipe",
    "mcis_bruteforce", "random_graph", "random_hypergraph", "random_partitioned_graph",
    "splitmix64", "updom_to_mmhs",
]
