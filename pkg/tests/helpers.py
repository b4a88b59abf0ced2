"""Shared test utilities: seeded corpora and slow reference predicates.

Nothing here calls the DP code; the brute-force state predicate below
enumerates independent sets directly so it can referee the DP.
"""

import random
from itertools import combinations, product

from blockset.core import Graph, iter_bits
from blockset.generators import random_graph, random_hypergraph
from blockset.treewidth import FORGET, INTRODUCE, JOIN, PiInstance, compute_td_small, make_nice

ACCEPTANCE = {}  # criterion number -> (passed, title, detail)


def record(num, title, ok, detail=""):
    ACCEPTANCE[num] = (bool(ok), title, detail)
    line = f"criterion {num:>2} [{'PASS' if ok else 'FAIL'}] {title}"
    print(line + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {num} failed: {detail}"


# ---------------------------------------------------------------- corpora

def hypergraph_corpus(count=1000, base_seed=1000):
    """Seeded hypergraphs with n <= 8, m <= 10 and edges of size <= 4."""
    out = []
    for i in range(count):
        pick = random.Random(base_seed + i)
        n = pick.randint(1, 8)
        m = pick.randint(0, 10)
        out.append(random_hypergraph(n, m, 4, seed=base_seed + i))
    return out


def graph_stream(base_seed=5000):
    """Endless seeded graphs with n in [1, 8] and varied density."""
    i = 0
    while True:
        pick = random.Random(base_seed + i)
        n = pick.randint(1, 8)
        p = pick.choice((0.2, 0.35, 0.5, 0.65, 0.8))
        yield base_seed + i, random_graph(n, p, seed=base_seed + i)
        i += 1


def all_labeled_graphs(n):
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, [pairs[j] for j in range(len(pairs)) if bits >> j & 1])


def nice_of(G):
    D = compute_td_small(G, G.n)
    return make_nice(G, D)


# ---------------------------------------------------------------- brute-force DP semantics

class BruteNode:
    """Maximum (X,Z)-independent sets at one node, by plain enumeration."""

    def __init__(self, G, nice, node):
        self.bag = nice.nodes[node].bag
        self.within = nice.below(node)
        verts = list(iter_bits(self.within))
        self.indep = []
        for k in range(1 << len(verts)):
            s = 0
            for j, v in enumerate(verts):
                if k >> j & 1:
                    s |= 1 << v
            if all(not (G.adj[v] & s) for v in iter_bits(s)):
                self.indep.append(s)
        self._max = {}

    def maximum(self, z):
        r = self._max.get(z)
        if r is None:
            cands = [i for i in self.indep if i & self.bag == z]
            top = max((c.bit_count() for c in cands), default=-1)
            r = self._max[z] = [c for c in cands if c.bit_count() == top]
        return r

    def blocks(self, z, y):
        return all(i & y for i in self.maximum(z))

    def holds(self, key, y):
        _, y0, l1, l2, f, s = key
        if y & ~self.within or y & self.bag != y0:
            return False
        if not all(self.blocks(z, y) for z in l1 | l2):
            return False
        if any(self.blocks(z, y) for z in s):
            return False
        for v in iter_bits(y & ~y0):
            if all(self.blocks(z, y & ~(1 << v)) for z in l1):
                return False
        fmap = dict(f)
        return all(v in fmap and not self.blocks(fmap[v], y & ~(1 << v)) for v in iter_bits(y0))

    def criticality(self, z, v):
        """'c' if v is in every maximum (X,Z)-is, 'b' if in none, else 'm'."""
        ins = [bool(i >> v & 1) for i in self.maximum(z)]
        if all(ins):
            return "c"
        if not any(ins):
            return "b"
        return "m"

    def subsets(self):
        within = self.within
        verts = list(iter_bits(within))
        for k in range(1 << len(verts)):
            yield sum(1 << v for j, v in enumerate(verts) if k >> j & 1)


def independent_bag_subsets(G, bag):
    verts = list(iter_bits(bag))
    out = []
    for k in range(1 << len(verts)):
        s = sum(1 << v for j, v in enumerate(verts) if k >> j & 1)
        if all(not (G.adj[v] & s) for v in iter_bits(s)):
            out.append(s)
    return out


def random_state(G, nice, node, rng, brute=None, max_family=2):
    """A well-formed state at ``node``; half of them are built around a random Y."""
    bag = nice.nodes[node].bag
    zs = independent_bag_subsets(G, bag)
    if brute is not None and rng.random() < 0.5:
        y = rng.choice(list(brute.subsets()))
        y0 = y & bag
        blocked = [z for z in zs if brute.blocks(z, y)]
        free = [z for z in zs if not brute.blocks(z, y)]
        l1 = set(rng.sample(blocked, min(len(blocked), rng.randint(0, max_family))))
        l2 = set(rng.sample(blocked, min(len(blocked), rng.randint(0, max_family))))
        s = set(rng.sample(free, min(len(free), rng.randint(0, max_family))))
        f = {}
        for v in iter_bits(y0):
            good = [z for z in blocked if not brute.blocks(z, y & ~(1 << v))]
            z = rng.choice(good or blocked or zs)
            f[v] = z
            l2.add(z)
    else:
        y0 = sum(1 << v for v in iter_bits(bag) if rng.random() < 0.4)
        l1 = set(rng.sample(zs, min(len(zs), rng.randint(0, max_family))))
        l2 = set(rng.sample(zs, min(len(zs), rng.randint(0, max_family))))
        s = set(rng.sample(zs, min(len(zs), rng.randint(0, max_family))))
        f = {}
        for v in iter_bits(y0):
            f[v] = rng.choice(zs)
            l2.add(f[v])
    return PiInstance.make(node, _bits(y0), [_bits(z) for z in l1], [_bits(z) for z in l2],
                           {v: _bits(z) for v, z in f.items()}, [_bits(z) for z in s])


def _bits(m):
    return list(iter_bits(m))


# ---------------------------------------------------------------- node-lemma witnesses

def join_witness_pairs(key, left, right):
    """Child state pairs for every labelling of L1 and L2 into A/B/C."""
    _, y0, l1, l2, f, s = key
    l1s, l2s = sorted(l1), sorted(l2)
    for lab1 in product("ABC", repeat=len(l1s)):
        for lab2 in product("ABC", repeat=len(l2s)):
            p1 = {c: frozenset(z for z, t in zip(l1s, lab1) if t == c) for c in "ABC"}
            p2 = {c: frozenset(z for z, t in zip(l2s, lab2) if t == c) for c in "ABC"}
            lk = (left, y0, p1["A"], p1["B"] | p2["B"] | p2["A"], f, s | p1["C"] | p2["C"])
            rk = (right, y0, p1["C"], p1["B"] | p2["B"] | p2["C"], f, s | p1["A"] | p2["A"])
            yield lk, rk


def introduce_witnesses(key, child, v):
    """Child states for an introduce node of ``v``; nothing when the split is impossible."""
    _, y0, l1, l2, f, s = key
    bit = 1 << v
    if not y0 & bit:
        drop = lambda F: frozenset(z & ~bit for z in F)  # noqa: E731
        yield (child, y0, drop(l1), drop(l2), tuple((u, z & ~bit) for u, z in f), drop(s))
        return
    fmap = dict(f)
    if any(z & bit for z in s) or any(z & bit for u, z in f if u != v):
        return
    rest = sorted(z for z in l2 if z & bit and z != fmap[v])
    keep = lambda F: frozenset(z for z in F if not z & bit)  # noqa: E731
    for k in range(1 << len(rest)):
        a = [fmap[v]] + [rest[j] for j in range(len(rest)) if k >> j & 1]
        yield (child, y0 & ~bit, keep(l1), keep(l2), tuple((u, z) for u, z in f if u != v),
               s | frozenset(z & ~bit for z in a))


def forget_witnesses(key, child, v, brute):
    """(v_in_Y, child state) pairs for a forget node of ``v``."""
    _, y0, l1, l2, f, s = key
    bit = 1 << v
    crit = lambda z: brute.criticality(z, v)  # noqa: E731

    def lift(F):
        out = set()
        for z in F:
            if crit(z) != "b":
                out.add(z | bit)
            if crit(z) != "c":
                out.add(z)
        return frozenset(out)

    l1c, l2c = lift(l1), lift(l2)
    if all(crit(z) != "c" for z in s) and all(crit(z) != "c" for _, z in f):
        for zs in l1:
            if crit(zs) == "b":
                continue
            yield True, (child, y0 | bit, l1c, l2c | {zs | bit},
                         tuple(sorted(f + ((v, zs | bit),))), s)

    def opts(z):
        return {"c": [z | bit], "b": [z], "m": [z | bit, z]}[crit(z)]

    s_list = sorted(s)
    for s_pick in product(*(opts(z) for z in s_list)):
        for f_pick in product(*(opts(z) for _, z in f)):
            cf = tuple((u, z) for (u, _), z in zip(f, f_pick))
            yield False, (child, y0, l1c, l2c, cf, frozenset(s_pick))


# ---------------------------------------------------------------- node-lemma trials

def _node_biconditional(G, nice, node, key, cache):
    def brute(i):
        if i not in cache:
            cache[i] = BruteNode(G, nice, i)
        return cache[i]

    nd = nice.nodes[node]
    bp = brute(node)
    positives = 0
    for y in bp.subsets():
        if y & nd.bag != key[1]:
            continue
        lhs = bp.holds(key, y)
        if nd.kind == JOIN:
            left, right = nd.children
            bl, br = brute(left), brute(right)
            rhs = any(bl.holds(lk, y & bl.within) and br.holds(rk, y & br.within)
                      for lk, rk in join_witness_pairs(key, left, right))
        elif nd.kind == INTRODUCE:
            c = nd.children[0]
            rhs = any(brute(c).holds(ck, y & ~(1 << nd.vertex))
                      for ck in introduce_witnesses(key, c, nd.vertex))
        else:
            c = nd.children[0]
            inside = bool(y >> nd.vertex & 1)
            rhs = any(v_in == inside and brute(c).holds(ck, y)
                      for v_in, ck in forget_witnesses(key, c, nd.vertex, bp))
        if lhs != rhs:
            return None
        positives += lhs
    return positives


def node_lemma_trials(count, seed):
    """Run ``count`` configurations; returns per-kind (trials, failures, with witnesses)."""
    rng = random.Random(seed)
    tally = {k: [0, 0, 0] for k in (JOIN, INTRODUCE, FORGET)}
    kinds = [JOIN, INTRODUCE, FORGET]
    it = 0
    done = 0
    while done < count:
        want = kinds[done % 3]
        G = random_graph(rng.randint(3, 7), rng.choice((0.2, 0.4, 0.6)), seed=seed * 1000 + it)
        it += 1
        D = compute_td_small(G, G.n)
        nice = make_nice(G, D, rng.randrange(len(D.bags)))
        nodes = [i for i, nd in enumerate(nice.nodes) if nd.kind == want]
        if not nodes:
            continue
        node = rng.choice(nodes)
        cache = {}
        cache[node] = BruteNode(G, nice, node)
        inst = random_state(G, nice, node, rng, cache[node])
        pos = _node_biconditional(G, nice, node, inst.key(), cache)
        t = tally[want]
        t[0] += 1
        t[1] += pos is None
        t[2] += bool(pos)
        done += 1
    return tally
