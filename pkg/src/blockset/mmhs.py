"""Solvers for the maximum minimal hitting set question mmhs(H) >= beta.

Internally a hypergraph is just a tuple of edge masks; vertices that
occur in no edge never matter for minimal hitting sets, so the solvers
do not track the vertex universe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional, Union

from .core import Hypergraph, SetLike, from_mask, iter_bits, members, to_mask
from .search import BranchStats, SearchContext

SUNFLOWER_SEARCH_CAP = 128
RAO_CONSTANT = 64


class MeasureViolation(AssertionError):
    """The improved branching failed to decrease its measure."""


# ---------------------------------------------------------------- helpers

def _hits(edges, s):
    for e in edges:
        if not e & s:
            return False
    return True


def _is_minimal_hs(edges, s):
    if not _hits(edges, s):
        return False
    for v in iter_bits(s):
        bit = 1 << v
        if not any(e & s == bit for e in edges):
            return False
    return True


def _shrink(edges, s, keep=0):
    """Greedily drop vertices of ``s`` outside ``keep`` in ascending order.

    ``s`` must hit every edge.  The result stays hitting and every
    dropped-candidate that survives is needed.
    """
    for v in iter_bits(s & ~keep):
        t = s & ~(1 << v)
        if _hits(edges, t):
            s = t
    return s


def greedy_minimal_hitting_set(edges, keep=0):
    """Minimal hitting set from all vertices occurring in ``edges``."""
    s = keep
    for e in edges:
        s |= e
    return _shrink(edges, s, keep)


def _clutter(edges):
    out = []
    for i, e in enumerate(edges):
        for j, f in enumerate(edges):
            if i != j and not f & ~e and (f != e or j < i):
                break
        else:
            out.append(e)
    return tuple(out)


def _open_edges(edges, x):
    return [e for e in edges if not e & x]


def _measure(edges, x):
    return max((e.bit_count() for e in edges if not e & x), default=0)


def _ctx(stats, deadline):
    return SearchContext(stats, deadline, poll=16)


# ---------------------------------------------------------------- reductions

def clutter_reduce(H: Hypergraph) -> Hypergraph:
    """Drop every edge that contains another one (duplicates keep the first)."""
    return Hypergraph(H.n, _clutter(H.masks), origin=H.origin)


def drop_isolated(H: Hypergraph) -> Hypergraph:
    """Remove vertices in no edge; ``origin`` maps new ids to old ones."""
    used = 0
    for e in H.masks:
        used |= e
    old = members(used)
    new_of = {v: i for i, v in enumerate(old)}
    edges = [[new_of[v] for v in iter_bits(e)] for e in H.masks]
    if H.origin is not None:
        old = [H.origin[v] for v in old]
    return Hypergraph(len(new_of), edges, origin=old)


def build_h_i(H: Hypergraph, I: SetLike) -> Hypergraph:
    """H_I: drop the vertices of the independent set I from V and every edge.

    Vertex ids are kept (vertices of I simply become unused).
    """
    i = to_mask(I)
    if any(not e & ~i for e in H.masks):
        raise ValueError("I is not independent: some edge is contained in I")
    return Hypergraph(H.n, [e & ~i for e in H.masks], origin=H.origin)


def build_h_xbar(H: Hypergraph, X: SetLike) -> Hypergraph:
    """H^{X-bar}: keep only the edges disjoint from X."""
    x = to_mask(X)
    return Hypergraph(H.n, _open_edges(H.masks, x), origin=H.origin)


# ---------------------------------------------------------------- sunflowers

@dataclass(frozen=True)
class Sunflower:
    core: frozenset
    petals: tuple  # edge indices


def s_classic(alpha: int, beta: int) -> int:
    """(alpha^2)! * alpha * (beta-1)^alpha."""
    return math.factorial(alpha * alpha) * alpha * max(beta - 1, 0) ** alpha


def s_rao(alpha: int, beta: int, c: int = RAO_CONSTANT) -> int:
    """(c * beta * log(alpha * beta))^alpha, rounded up (natural log)."""
    if alpha * beta <= 1:
        return 0
    return math.ceil(c * beta * math.log(alpha * beta)) ** alpha


SUNFLOWER_FUNCTIONS = {"classic": s_classic, "rao": s_rao}


def _pack(cands, beta):
    """Pick ``beta`` pairwise-disjoint petals; ``cands`` is [(index, petal)]."""
    chosen = []

    def rec(start, used):
        if len(chosen) == beta:
            return True
        for k in range(start, len(cands)):
            if len(cands) - k < beta - len(chosen):
                return False
            i, p = cands[k]
            if p & used:
                continue
            chosen.append(i)
            if rec(k + 1, used | p):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if rec(0, 0) else None


def _exhaustive_sunflower(edges, beta):
    cores = set()
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            cores.add(edges[i] & edges[j])
    for c in sorted(cores, key=lambda m: (m.bit_count(), m)):
        cands = [(i, e & ~c) for i, e in enumerate(edges) if not c & ~e and e != c]
        if len(cands) < beta:
            continue
        got = _pack(cands, beta)
        if got is not None:
            return c, got
    return None


def _extract_sunflower(fam, core, beta):
    """Classical extraction; ``fam`` is [(index, edge minus core)]."""
    fam = [(i, e) for i, e in fam if e]
    picked, used = [], 0
    for i, e in fam:
        if not e & used:
            picked.append(i)
            used |= e
            if len(picked) == beta:
                return core, tuple(picked)
    if not used:
        return None
    counts = {v: sum(1 for _, e in fam if e >> v & 1) for v in iter_bits(used)}
    x = max(sorted(counts), key=lambda v: counts[v])
    bit = 1 << x
    sub = [(i, e & ~bit) for i, e in fam if e & bit]
    if len(sub) < beta:
        return None
    return _extract_sunflower(sub, core | bit, beta)


def find_sunflower(H: Hypergraph, beta: int,
                   search_cap: int = SUNFLOWER_SEARCH_CAP) -> Optional[Sunflower]:
    """A sunflower with ``beta`` petals among the edges of H, if one is found.

    Exhaustive when H has at most ``search_cap`` edges.
    """
    edges = H.masks
    if beta <= 0:
        return Sunflower(frozenset(), ())
    if beta == 1:
        for i, e in enumerate(edges):
            if e:
                return Sunflower(frozenset(), (i,))
        return None
    if len(edges) < beta:
        return None
    if len(edges) <= search_cap:
        got = _exhaustive_sunflower(edges, beta)
    else:
        got = _extract_sunflower(list(enumerate(edges)), 0, beta)
    if got is None:
        return None
    core, petals = got
    return Sunflower(from_mask(core), tuple(sorted(petals)))


@dataclass
class KernelOutcome:
    kind: str  # "yes" or "reduced"
    hypergraph: Hypergraph  # clutter-reduced, isolated vertices dropped
    vertex_map: tuple  # new id -> id in the input
    sunflower: Optional[Sunflower] = None
    edges_before: int = 0
    edges_after: int = 0
    bound: int = 0  # alpha * s(alpha, beta)

    @property
    def is_yes(self):
        return self.kind == "yes"

    def to_dict(self):
        d = {"kind": self.kind, "edges_before": self.edges_before,
             "edges_after": self.edges_after,
             "vertices_after": self.hypergraph.n, "bound": self.bound}
        if self.sunflower is not None:
            d["core"] = sorted(self.vertex_map[v] for v in self.sunflower.core)
            d["petals"] = list(self.sunflower.petals)
        return d


def sunflower_kernel(H: Hypergraph, beta: int,
                     sunflower_fn: Union[str, Callable] = "rao",
                     search_cap: int = SUNFLOWER_SEARCH_CAP) -> KernelOutcome:
    """Clutter-reduce, drop isolated vertices, then look for a beta-sunflower."""
    if beta < 1:
        raise ValueError("beta must be at least 1")
    fn = SUNFLOWER_FUNCTIONS[sunflower_fn] if isinstance(sunflower_fn, str) else sunflower_fn
    base = Hypergraph(H.n, H.masks)
    reduced = drop_isolated(clutter_reduce(base))
    alpha = reduced.rank
    # a single edge is a degenerate 1-petal sunflower; beta=1 stays a plain reduction
    sf = find_sunflower(reduced, beta, search_cap) if beta >= 2 else None
    out = KernelOutcome("yes" if sf else "reduced", reduced, reduced.origin or (),
                        sunflower=sf, edges_before=H.m, edges_after=reduced.m,
                        bound=alpha * fn(alpha, beta))
    return out


# ---------------------------------------------------------------- search tree

def _search_tree(edges, beta, at_most, ctx):
    def rec(x, size, depth):
        ctx.tick(depth)
        for e in edges:
            if not e & x:
                break
        else:
            if not _is_minimal_hs(edges, x):
                return None
            ok = size <= beta if at_most else size == beta
            return x if ok else None
        if size >= beta:
            return None
        for v in iter_bits(e):
            y = x | 1 << v
            # every member of y still needs a possible private edge
            if any(not any(f & y == 1 << u for f in edges) for u in iter_bits(y)):
                continue
            r = rec(y, size + 1, depth + 1)
            if r is not None:
                return r
        return None

    return rec(0, 0, 0)


def search_tree_size(H: Hypergraph, beta: int, mode: str = "exactly",
                     stats: Optional[BranchStats] = None, deadline=None) -> bool:
    """Is there a minimal hitting set of size exactly (or at most) beta?"""
    return search_tree_certificate(H, beta, mode, stats, deadline) is not None


def search_tree_certificate(H, beta, mode="exactly", stats=None, deadline=None):
    if mode not in ("exactly", "at_most"):
        raise ValueError(f"unknown mode {mode!r}")
    ctx = _ctx(stats, deadline)
    try:
        r = _search_tree(H.masks, beta, mode == "at_most", ctx)
    finally:
        ctx.finish()
    return None if r is None else from_mask(r)


# ---------------------------------------------------------------- extension

def _simple_ext(edges, x):
    """A minimal hitting set containing ``x``, or None."""
    choices = []
    for v in iter_bits(x):
        bit = 1 << v
        c = [e for e in edges if e & x == bit]
        if not c:
            return None
        choices.append(c)
    for combo in product(*choices):
        w = 0
        for e in combo:
            w |= e
        w &= ~x
        if any(not e & ~w for e in edges):
            continue
        s = x
        for e in edges:
            s |= e
        return _shrink(edges, s & ~w, keep=x)
    return None


def simple_ext(H: Hypergraph, X: SetLike) -> bool:
    """Does some minimal hitting set of H contain X?"""
    x = to_mask(X)
    if x >> H.n:
        raise ValueError("X is not a subset of V(H)")
    return _simple_ext(H.masks, x) is not None


def simple_ext_witness(H: Hypergraph, X: SetLike) -> Optional[frozenset]:
    r = _simple_ext(H.masks, to_mask(X))
    return None if r is None else from_mask(r)


def _extension(edges, beta, ctx):
    def rec(x, size, depth):
        ctx.tick(depth)
        if size == beta:
            return _simple_ext(edges, x)
        for e in edges:
            if not e & x:
                break
        else:
            return None
        for v in iter_bits(e):
            r = rec(x | 1 << v, size + 1, depth + 1)
            if r is not None:
                return r
        return None

    return rec(0, 0, 0)


def extension_branch(H: Hypergraph, beta: int, stats=None, deadline=None) -> bool:
    """mmhs(H) >= beta by growing X along an uncovered edge, then simple_ext."""
    return extension_certificate(H, beta, stats, deadline) is not None


def extension_certificate(H, beta, stats=None, deadline=None):
    if beta < 1:
        raise ValueError("beta must be at least 1")
    ctx = _ctx(stats, deadline)
    try:
        r = _extension(H.masks, beta, ctx)
    finally:
        ctx.finish()
    return None if r is None else from_mask(r)


# ---------------------------------------------------------------- improved branching

def _improved(edges, beta, ctx, on_measure=None):
    def rec(edges, x, depth):
        ctx.tick(depth)
        open_ = _open_edges(edges, x)
        if not open_:
            if x.bit_count() >= beta and _is_minimal_hs(edges, x):
                return x
            return None
        s = greedy_minimal_hitting_set(open_)
        if s.bit_count() >= beta:
            # s extends to a minimal hitting set of the current hypergraph
            return _shrink(edges, s | x, keep=s)
        parent = max(e.bit_count() for e in open_)
        for s1 in _submasks(s):
            if any(not e & ~s1 for e in open_):
                continue
            child = tuple(e & ~s1 for e in edges)
            cx = x | (s & ~s1)
            m = _measure(child, cx)
            ctx.stats.measure_checks += 1
            if on_measure is not None:
                on_measure(parent, m)
            if not m < parent:
                raise MeasureViolation(f"measure did not drop: {parent} -> {m}")
            r = rec(child, cx, depth + 1)
            if r is not None:
                return r
        return None

    return rec(tuple(edges), 0, 0)


def _submasks(s):
    """All submasks of ``s`` in increasing numeric order."""
    bits = members(s)
    for k in range(1 << len(bits)):
        m = 0
        for j, v in enumerate(bits):
            if k >> j & 1:
                m |= 1 << v
        yield m


def improved_fpt(H: Hypergraph, beta: int, stats=None, deadline=None,
                 on_measure=None) -> bool:
    """mmhs(H) >= beta in O*(2^(alpha*beta)) by the minimal-hitting-set branching."""
    return improved_certificate(H, beta, stats, deadline, on_measure) is not None


def improved_certificate(H, beta, stats=None, deadline=None, on_measure=None):
    if H.has_empty_edge():
        raise ValueError("improved_fpt requires a hypergraph without empty hyperedges")
    if beta < 1:
        raise ValueError("beta must be at least 1")
    ctx = _ctx(stats, deadline)
    try:
        r = _improved(H.masks, beta, ctx, on_measure)
    finally:
        ctx.finish()
    return None if r is None else from_mask(r)


# ---------------------------------------------------------------- alternative branching

def _alt_reduce(edges, v, h):
    return tuple(e & ~h for e in edges if not e >> v & 1)


def alt_reduce(H: Hypergraph, v_star: int, h_star: int) -> Hypergraph:
    """H^(v*,H*): remove the vertices of H* and every edge through v*.

    The result is relabelled densely; ``origin`` gives the old ids.
    """
    if not 0 <= h_star < H.m:
        raise ValueError(f"edge index {h_star} out of range")
    h = H.masks[h_star]
    if not h >> v_star & 1:
        raise ValueError("v_star is not in the chosen edge")
    if _clutter(H.masks) != H.masks:
        raise ValueError("alt_reduce needs a clutter")
    keep = ((1 << H.n) - 1) & ~h
    old = members(keep)
    new_of = {u: i for i, u in enumerate(old)}
    edges = [[new_of[u] for u in iter_bits(e)] for e in _alt_reduce(H.masks, v_star, h)]
    if H.origin is not None:
        old = [H.origin[u] for u in old]
    return Hypergraph(len(old), edges, origin=old)


def _alt(edges, beta, ctx):
    def rec(edges, beta, depth):
        ctx.tick(depth)
        if beta == 0:
            return greedy_minimal_hitting_set(edges)
        if not edges:
            return None
        edges = _clutter(edges)
        h0 = edges[0]
        for v in iter_bits(h0):
            for h in edges:
                if not h >> v & 1:
                    continue
                r = rec(_alt_reduce(edges, v, h), beta - 1, depth + 1)
                if r is not None:
                    return r | 1 << v
        return None

    return rec(tuple(edges), beta, 0)


def alt_branch(H: Hypergraph, beta: int, stats=None, deadline=None) -> bool:
    """mmhs(H) >= beta by branching on (vertex, private edge) pairs."""
    if beta == 0:
        return True
    return alt_certificate(H, beta, stats, deadline) is not None


def alt_certificate(H, beta, stats=None, deadline=None):
    if beta < 0:
        raise ValueError("beta must be non-negative")
    if H.has_empty_edge():
        return None
    ctx = _ctx(stats, deadline)
    try:
        r = _alt(H.masks, beta, ctx)
    finally:
        ctx.finish()
    return None if r is None else from_mask(r)


def kernel_then_improved(H: Hypergraph, beta: int, stats=None, deadline=None,
                         sunflower_fn="rao"):
    """(answer, KernelOutcome): sunflower kernel followed by improved_fpt."""
    cert, k = kernel_certificate(H, beta, stats, deadline, sunflower_fn)
    return cert is not None, k


def kernel_certificate(H, beta, stats=None, deadline=None, sunflower_fn="rao"):
    """(certificate in the input's labels or None, KernelOutcome)."""
    k = sunflower_kernel(H, beta, sunflower_fn)
    red = k.hypergraph
    if k.is_yes:
        # the complement of the core hits every edge of the clutter
        r = _shrink(red.masks, ((1 << red.n) - 1) & ~to_mask(k.sunflower.core))
    else:
        r = improved_certificate(red, beta, stats, deadline)
        r = None if r is None else to_mask(r)
    if r is None:
        return None, k
    return frozenset(k.vertex_map[v] for v in iter_bits(r)), k


ENGINES = {
    "improved": improved_certificate,
    "extension": extension_certificate,
    "alt": alt_certificate,
}
