"""Maximum minimal blocking sets by dynamic programming over a nice decomposition.

For a node with bag X, G_X is the subgraph induced by everything in the
subtree.  An (X,Z)-independent set is an independent set I of G_X with
I & X = Z.  A DP state asks for a largest Y inside G_X that

  (i)    meets the bag exactly in Y0,
  (ii)   blocks every maximum (X,Z)-independent set for Z in L1 and L2,
  (iii)  does not block them for Z in S,
  (iv-a) can lose no vertex outside Y0 without unblocking some Z in L1,
  (iv-b) can lose no vertex v of Y0 without unblocking f(v).

At the root (empty bag) the state (Y0={}, L1={{}}, rest empty) is met
exactly by the minimal blocking sets of G.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from itertools import product
from typing import Optional

from ..alpha import AlphaOracle
from ..core import Graph, SetLike, from_mask, iter_bits, mask_independent, members, to_mask
from ..search import SearchContext
from .decomposition import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition

NEG_INF = float("-inf")
DEFAULT_BAG_LIMIT = 6


class BagLimitExceeded(ValueError):
    """The decomposition is too wide for the doubly exponential DP."""

    def __init__(self, bag_size, limit):
        super().__init__(f"width too large: bag of size {bag_size} exceeds limit {limit}")
        self.bag_size = bag_size
        self.limit = limit


def bag_limit_from_env() -> int:
    raw = os.environ.get("BLOCKSET_BAG_LIMIT")
    if raw is None or raw.strip() == "":
        return DEFAULT_BAG_LIMIT
    return int(raw)


class Criticality(enum.Enum):
    V_CRITICAL = "v-critical"  # v in every maximum (X,Z)-is
    V_BAR_CRITICAL = "v-bar-critical"  # v in none
    V_MIXED = "v-mixed"


# ---------------------------------------------------------------- graph-level arithmetic

def _nbhd(adj, z):
    out = 0
    for v in iter_bits(z):
        out |= adj[v]
    return out


def _alpha_xz(al, adj, within, x, z, y=0):
    if z & y or z & ~x or not mask_independent(adj, z):
        return NEG_INF
    return z.bit_count() + al(within & ~x & ~y & ~_nbhd(adj, z))


def _check_xz(G, x, z, within):
    if z & ~x:
        raise ValueError("Z must be a subset of X")
    if not mask_independent(G.adj, z):
        raise ValueError("Z must be an independent set")
    if (x | z) & ~within:
        raise ValueError("X must lie inside the graph")


def alpha_xz(G: Graph, X: SetLike, Z: SetLike, avoid: SetLike = 0,
             within: Optional[SetLike] = None):
    """Largest independent set I with I & X = Z (and I & avoid empty).

    ``within`` restricts the graph to an induced subgraph (default: all
    of G).  Returns ``-inf`` when no such set exists.
    """
    x, z, y = to_mask(X), to_mask(Z), to_mask(avoid)
    w = G.vertex_mask if within is None else to_mask(within)
    _check_xz(G, x, z, w)
    return _alpha_xz(AlphaOracle(G), G.adj, w, x, z, y)


def is_xz_blocking(G_X: Graph, X: SetLike, Z: SetLike, Y: SetLike,
                   within: Optional[SetLike] = None) -> bool:
    """Does Y meet every maximum (X,Z)-independent set?"""
    x, z, y = to_mask(X), to_mask(Z), to_mask(Y)
    w = G_X.vertex_mask if within is None else to_mask(within)
    _check_xz(G_X, x, z, w)
    al = AlphaOracle(G_X)
    return _alpha_xz(al, G_X.adj, w, x, z, y) < _alpha_xz(al, G_X.adj, w, x, z)


def _classify(al, adj, within, x, z, v):
    bit = 1 << v
    if z & bit:
        return Criticality.V_CRITICAL
    if x & bit:
        return Criticality.V_BAR_CRITICAL
    a = _alpha_xz(al, adj, within, x, z)
    if _alpha_xz(al, adj, within, x | bit, z) < a:
        return Criticality.V_CRITICAL
    if _alpha_xz(al, adj, within, x | bit, z | bit) < a:
        return Criticality.V_BAR_CRITICAL
    return Criticality.V_MIXED


def classify_criticality(G_X: Graph, X: SetLike, Z: SetLike, v: int,
                         within: Optional[SetLike] = None) -> Criticality:
    x, z = to_mask(X), to_mask(Z)
    w = G_X.vertex_mask if within is None else to_mask(within)
    _check_xz(G_X, x, z, w)
    if not w >> v & 1:
        raise ValueError(f"vertex {v} is not in the graph")
    return _classify(AlphaOracle(G_X), G_X.adj, w, x, z, v)


# ---------------------------------------------------------------- instances

def _fam(f):
    return frozenset(frozenset(z) for z in f)


@dataclass(frozen=True)
class PiInstance:
    """DP state at one node of a nice decomposition.

    Families are frozensets of frozensets; ``f`` is a tuple of
    ``(vertex, frozenset)`` pairs sorted by vertex.
    """

    node: int
    y0: frozenset = frozenset()
    l1: frozenset = frozenset()
    l2: frozenset = frozenset()
    f: tuple = ()
    s: frozenset = frozenset()

    @classmethod
    def make(cls, node, y0=(), l1=(), l2=(), f=None, s=()):
        fp = tuple(sorted((v, frozenset(z)) for v, z in (f or {}).items()))
        return cls(node, frozenset(y0), _fam(l1), _fam(l2), fp, _fam(s))

    @classmethod
    def root(cls, nice: NiceTreeDecomposition):
        return cls.make(nice.root, l1=[()])

    def key(self) -> tuple:
        fam = lambda F: frozenset(to_mask(z) for z in F)  # noqa: E731
        return (self.node, to_mask(self.y0), fam(self.l1), fam(self.l2),
                tuple((v, to_mask(z)) for v, z in self.f), fam(self.s))

    @classmethod
    def from_key(cls, key):
        node, y0, l1, l2, f, s = key
        fam = lambda F: frozenset(from_mask(z) for z in F)  # noqa: E731
        return cls(node, from_mask(y0), fam(l1), fam(l2),
                   tuple((v, from_mask(z)) for v, z in f), fam(s))

    def to_dict(self):
        fam = lambda F: sorted(sorted(z) for z in F)  # noqa: E731
        return {"node": self.node, "y0": sorted(self.y0), "l1": fam(self.l1),
                "l2": fam(self.l2), "f": {v: sorted(z) for v, z in self.f},
                "s": fam(self.s)}


def check_instance(G: Graph, nice: NiceTreeDecomposition, inst: PiInstance):
    """Raise ValueError unless ``inst`` is a well-formed state."""
    if not 0 <= inst.node < len(nice.nodes):
        raise ValueError("node index out of range")
    node, y0, l1, l2, f, s = inst.key()
    bag = nice.nodes[node].bag
    if y0 & ~bag:
        raise ValueError("Y0 must lie in the bag")
    for z in l1 | l2 | s:
        if z & ~bag or not mask_independent(G.adj, z):
            raise ValueError(f"family member {sorted(from_mask(z))} is not an independent subset of the bag")
    fmap = dict(f)
    if set(fmap) != set(iter_bits(y0)) or len(fmap) != len(f):
        raise ValueError("f must be a total map on Y0")
    if any(z not in l2 for z in fmap.values()):
        raise ValueError("f must map into L2")


# ---------------------------------------------------------------- the DP

class _DP:
    def __init__(self, G: Graph, nice: NiceTreeDecomposition, ctx: SearchContext):
        self.G = G
        self.adj = G.adj
        self.nodes = nice.nodes
        self.nice = nice
        self.al = AlphaOracle(G)
        self.below = [nice.below(i) for i in range(len(nice.nodes))]
        self.ctx = ctx
        self.memo = {}
        self._axz = {}
        self._crit = {}
        self.exhaustive = False  # enumerate every introduce split

    # (X,Z) arithmetic at a node; X is the node's bag and G_X its subtree
    def axz(self, node, z, y=0):
        if z & y:
            return NEG_INF
        key = (node, z, y)
        r = self._axz.get(key)
        if r is None:
            x = self.nodes[node].bag
            r = self._axz[key] = z.bit_count() + self.al(
                self.below[node] & ~x & ~y & ~_nbhd(self.adj, z))
        return r

    def blocks(self, node, z, y):
        return self.axz(node, z, y) < self.axz(node, z)

    def crit(self, node, z):
        """Criticality of (X,Z) w.r.t. the vertex forgotten at ``node``."""
        key = (node, z)
        r = self._crit.get(key)
        if r is None:
            nd = self.nodes[node]
            r = self._crit[key] = _classify(self.al, self.adj, self.below[node],
                                            nd.bag, z, nd.vertex)
        return r

    def holds(self, key, y) -> bool:
        node, y0, l1, l2, f, s = key
        if y & ~self.below[node]:
            return False
        if y & self.nodes[node].bag != y0:
            return False
        for z in l1 | l2:
            if not self.blocks(node, z, y):
                return False
        for z in s:
            if self.blocks(node, z, y):
                return False
        for v in iter_bits(y & ~y0):
            yv = y & ~(1 << v)
            if not any(not self.blocks(node, z, yv) for z in l1):
                return False
        fmap = dict(f)
        for v in iter_bits(y0):
            if v not in fmap or self.blocks(node, fmap[v], y & ~(1 << v)):
                return False
        return True

    # ------------------------------------------------------------ solve
    def solve(self, key, depth=0) -> Optional[int]:
        if key in self.memo:
            return self.memo[key]
        self.ctx.tick(depth)
        r = None if _clearly_infeasible(key) else self._solve(key, depth)
        self.memo[key] = r
        return r

    def _solve(self, key, depth):
        node = key[0]
        nd = self.nodes[node]
        if nd.kind == LEAF:
            return 0 if self.holds(key, 0) else None
        if nd.kind == INTRODUCE:
            return self._introduce(key, nd, depth)
        if nd.kind == FORGET:
            return self._forget(key, nd, depth)
        return self._join(key, nd, depth)

    def _introduce(self, key, nd, depth):
        _, y0, l1, l2, f, s = key
        v = nd.vertex
        bit = 1 << v
        c = nd.children[0]
        if not y0 & bit:
            drop = lambda F: frozenset(z & ~bit for z in F)  # noqa: E731
            child = (c, y0, drop(l1), drop(l2),
                     tuple((u, z & ~bit) for u, z in f), drop(s))
            return self.solve(child, depth + 1)
        fv = dict(f)[v]
        if any(z & bit for z in s):
            return None
        if any(z & bit for u, z in f if u != v):
            return None
        keep = lambda F: frozenset(z for z in F if not z & bit)  # noqa: E731
        cf = tuple((u, z) for u, z in f if u != v)
        l1c, l2c = keep(l1), keep(l2)
        best = None
        # L2(v) = A + B with f(v) in A.  A only adds non-blocking demands to
        # the child, so A = {f(v)}, the first split in counting order,
        # dominates the others: their solutions are solutions of it.
        splits = _subsets(sorted(z for z in l2 if z & bit and z != fv))
        if not self.exhaustive:
            splits = [next(splits)]
        for extra in splits:
            sa = (fv, *extra)
            child = (c, y0 & ~bit, l1c, l2c, cf, s | frozenset(z & ~bit for z in sa))
            r = self.solve(child, depth + 1)
            if r is not None and (best is None or r.bit_count() > best.bit_count()):
                best = r
        return None if best is None else best | bit

    def _forget(self, key, nd, depth):
        _, y0, l1, l2, f, s = key
        node = key[0]
        v = nd.vertex
        bit = 1 << v
        c = nd.children[0]
        crit = lambda z: self.crit(node, z)  # noqa: E731
        VC, VB = Criticality.V_CRITICAL, Criticality.V_BAR_CRITICAL

        def lift(F):
            out = set()
            for z in F:
                k = crit(z)
                if k is not VB:
                    out.add(z | bit)
                if k is not VC:
                    out.add(z)
            return frozenset(out)

        l1c, l2c = lift(l1), lift(l2)
        best = None

        def consider(r):
            nonlocal best
            if r is not None and (best is None or r.bit_count() > best.bit_count()):
                best = r

        # v in Y
        if all(crit(z) is not VC for z in s) and all(crit(z) is not VC for _, z in f):
            for zs in sorted(l1):
                if crit(zs) is VB:
                    continue
                cf = tuple(sorted(f + ((v, zs | bit),)))
                consider(self.solve((c, y0 | bit, l1c, l2c | {zs | bit}, cf, s), depth + 1))
        # v not in Y
        base = set()
        mixed = []
        for z in sorted(s):
            k = crit(z)
            if k is VC:
                base.add(z | bit)
            elif k is VB:
                base.add(z)
            else:
                mixed.append(z)
        fchoices = []
        for u, z in f:
            k = crit(z)
            if k is VC:
                fchoices.append([(u, z | bit)])
            elif k is VB:
                fchoices.append([(u, z)])
            else:
                fchoices.append([(u, z | bit), (u, z)])
        for cf in product(*fchoices):
            for sa in _subsets(mixed):
                sc = set(base)
                for z in mixed:
                    sc.add(z | bit if z in sa else z)
                consider(self.solve((c, y0, l1c, l2c, tuple(cf), frozenset(sc)), depth + 1))
        return best

    def _join(self, key, nd, depth):
        _, y0, l1, l2, f, s = key
        cl, cr = nd.children
        fvals = {z for _, z in f}
        items = sorted(l1 | l2)
        # a member that meets Y0 is blocked on both sides, and f-values
        # must be blocked on both sides as well: only B is possible.
        # A member of both L1 and L2 gets one label; mixed labels always
        # put it into both S and a blocking family of one child.
        options = [("B",) if (z & y0 or z in fvals) else ("A", "B", "C") for z in items]
        best = None
        for labels in product(*options):
            part = dict(zip(items, labels))
            l1a = frozenset(z for z in l1 if part[z] == "A")
            l1b = frozenset(z for z in l1 if part[z] == "B")
            l1c = frozenset(z for z in l1 if part[z] == "C")
            l2a = frozenset(z for z in l2 if part[z] == "A")
            l2b = frozenset(z for z in l2 if part[z] == "B")
            l2cc = frozenset(z for z in l2 if part[z] == "C")
            left = (cl, y0, l1a, l1b | l2b | l2a, f, s | l1c | l2cc)
            rl = self.solve(left, depth + 1)
            if rl is None:
                continue
            right = (cr, y0, l1c, l1b | l2b | l2cc, f, s | l1a | l2a)
            rr = self.solve(right, depth + 1)
            if rr is None:
                continue
            y = rl | rr
            if best is None or y.bit_count() > best.bit_count():
                best = y
        return best


def _subsets(items):
    """Subsets of a list in binary counting order (as tuples)."""
    k = len(items)
    for m in range(1 << k):
        yield tuple(items[j] for j in range(k) if m >> j & 1)


def _clearly_infeasible(key) -> bool:
    """Cheap necessary conditions for a state to have any solution."""
    _, y0, l1, l2, f, s = key
    if s & (l1 | l2):
        return True  # blocked and not blocked at once
    for z in s:
        if z & y0:
            return True  # Y0 inside Y meets Z, so Y blocks (X,Z)
    for v, z in f:
        # Y must block (X,f(v)) while Y - v does not: forces f(v) & Y0 = {v}
        if z & y0 != 1 << v:
            return True
    return False


# ---------------------------------------------------------------- public API

def _prepare(G, nice, bag_limit, stats, deadline):
    limit = bag_limit_from_env() if bag_limit is None else bag_limit
    if nice.max_bag > limit:
        raise BagLimitExceeded(nice.max_bag, limit)
    return _DP(G, nice, SearchContext(stats, deadline, poll=16))


def tchack_check(G: Graph, nice: NiceTreeDecomposition, inst: PiInstance, Y: SetLike) -> bool:
    """Does Y satisfy the state ``inst`` (properties i to iv)?"""
    dp = _DP(G, nice, SearchContext())
    return dp.holds(inst.key(), to_mask(Y))


def solve_pi(G: Graph, nice: NiceTreeDecomposition, inst: PiInstance,
             bag_limit: Optional[int] = None, stats=None, deadline=None) -> Optional[frozenset]:
    """A largest Y satisfying ``inst``, or None when the state is infeasible."""
    check_instance(G, nice, inst)
    dp = _prepare(G, nice, bag_limit, stats, deadline)
    try:
        r = dp.solve(inst.key())
    finally:
        dp.ctx.finish()
    return None if r is None else from_mask(r)


def mmbs_tw(G: Graph, nice: NiceTreeDecomposition, bag_limit: Optional[int] = None,
            stats=None, deadline=None):
    """(mmbs(G), a minimal blocking set of that size) via the decomposition."""
    if G.n == 0:
        raise ValueError("mmbs is undefined for the graph with no vertices")
    if nice.nodes[nice.root].bag:
        raise ValueError("the root of a nice decomposition must have an empty bag")
    dp = _prepare(G, nice, bag_limit, stats, deadline)
    try:
        r = dp.solve(PiInstance.root(nice).key())
    finally:
        dp.ctx.finish()
    if r is None:
        raise ValueError("root state infeasible: the decomposition does not cover the graph")
    return r.bit_count(), from_mask(r)


__all__ = [
    "BagLimitExceeded", "Criticality", "DEFAULT_BAG_LIMIT", "NEG_INF", "PiInstance",
    "alpha_xz", "bag_limit_from_env", "check_instance", "classify_criticality",
    "is_xz_blocking", "mmbs_tw", "solve_pi", "tchack_check",
]
