"""Tree decompositions: validation, nice form, and exact search on tiny graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..core import CapacityError, Graph, from_mask, iter_bits, members, to_mask

TD_CAPACITY = 16

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple  # of frozenset
    tree_edges: tuple  # of (i, j) bag-index pairs
    declared_width: Optional[int] = None

    def __init__(self, bags, tree_edges=(), declared_width=None):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))
        object.__setattr__(self, "tree_edges", tuple((int(i), int(j)) for i, j in tree_edges))
        object.__setattr__(self, "declared_width", declared_width)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: int  # mask
    children: tuple = ()
    vertex: Optional[int] = None

    @property
    def bag_set(self) -> frozenset:
        return from_mask(self.bag)


@dataclass
class NiceTreeDecomposition:
    nodes: list
    root: int
    _below: Optional[list] = field(default=None, repr=False, compare=False)

    @property
    def width(self) -> int:
        return max(n.bag.bit_count() for n in self.nodes) - 1

    @property
    def max_bag(self) -> int:
        return max(n.bag.bit_count() for n in self.nodes)

    def below(self, i: int) -> int:
        """Mask of the vertices in bags of the subtree rooted at node ``i``."""
        if self._below is None:
            self._below = _below_masks(self.nodes, self.root)
        return self._below[i]

    def postorder(self) -> list:
        out, stack = [], [(self.root, False)]
        while stack:
            i, done = stack.pop()
            if done:
                out.append(i)
                continue
            stack.append((i, True))
            for c in reversed(self.nodes[i].children):
                stack.append((c, False))
        return out

    def as_tree_decomposition(self) -> TreeDecomposition:
        edges = [(i, c) for i, nd in enumerate(self.nodes) for c in nd.children]
        return TreeDecomposition([from_mask(n.bag) for n in self.nodes], edges)


def _below_masks(nodes, root):
    below = [0] * len(nodes)
    nice = NiceTreeDecomposition(nodes, root)
    for i in nice.postorder():
        m = nodes[i].bag
        for c in nodes[i].children:
            m |= below[c]
        below[i] = m
    return below


def _tree_adjacency(k, tree_edges):
    adj = [[] for _ in range(k)]
    for i, j in tree_edges:
        if not (0 <= i < k and 0 <= j < k):
            raise ValueError(f"tree edge ({i}, {j}) refers to a missing bag")
        adj[i].append(j)
        adj[j].append(i)
    return adj


def _is_tree(k, tree_edges, adj):
    if k == 0 or len(tree_edges) != k - 1:
        return False
    if any(i == j for i, j in tree_edges):
        return False
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == k


def validate_td(G: Graph, D: TreeDecomposition) -> bool:
    """True iff D is a tree decomposition of G (and respects its declared width)."""
    k = len(D.bags)
    adj = _tree_adjacency(k, D.tree_edges)
    for b in D.bags:
        for v in b:
            if not 0 <= v < G.n:
                raise ValueError(f"bag vertex {v} out of range for n={G.n}")
    if not _is_tree(k, D.tree_edges, adj):
        return False
    masks = [to_mask(b) for b in D.bags]
    covered = 0
    for m in masks:
        covered |= m
    if covered != G.vertex_mask:
        return False
    for u, v in G.edges:
        pair = 1 << u | 1 << v
        if not any(m & pair == pair for m in masks):
            return False
    # bags containing a vertex induce a subforest; it is connected iff
    # it has exactly one edge fewer than nodes
    for v in range(G.n):
        nodes = sum(1 for m in masks if m >> v & 1)
        links = sum(1 for i, j in D.tree_edges if masks[i] >> v & 1 and masks[j] >> v & 1)
        if links != nodes - 1:
            return False
    if D.declared_width is not None and D.width > D.declared_width:
        return False
    return True


def validate_nice(G: Graph, nice: NiceTreeDecomposition) -> bool:
    nodes = nice.nodes
    if not 0 <= nice.root < len(nodes) or nodes[nice.root].bag:
        return False
    parents = [0] * len(nodes)
    for nd in nodes:
        for c in nd.children:
            if not 0 <= c < len(nodes):
                return False
            parents[c] += 1
        kids = [nodes[c] for c in nd.children]
        if nd.kind == LEAF:
            ok = not kids and nd.bag == 0
        elif nd.kind == INTRODUCE:
            ok = (len(kids) == 1 and nd.vertex is not None
                  and not kids[0].bag >> nd.vertex & 1
                  and nd.bag == kids[0].bag | 1 << nd.vertex)
        elif nd.kind == FORGET:
            ok = (len(kids) == 1 and nd.vertex is not None
                  and kids[0].bag >> nd.vertex & 1
                  and nd.bag == kids[0].bag & ~(1 << nd.vertex))
        elif nd.kind == JOIN:
            ok = len(kids) == 2 and kids[0].bag == nd.bag == kids[1].bag
        else:
            ok = False
        if not ok:
            return False
    if parents[nice.root] != 0 or any(p != 1 for i, p in enumerate(parents) if i != nice.root):
        return False
    return validate_td(G, nice.as_tree_decomposition())


def make_nice(G: Graph, D: TreeDecomposition, root: int = 0) -> NiceTreeDecomposition:
    """Nice decomposition of the same width, rooted at bag ``root``."""
    if not validate_td(G, D):
        raise ValueError("not a valid tree decomposition of the graph")
    masks = [to_mask(b) for b in D.bags]
    tadj = _tree_adjacency(len(masks), D.tree_edges)
    nodes = []

    def add(kind, bag, children=(), vertex=None):
        nodes.append(NiceNode(kind, bag, tuple(children), vertex))
        return len(nodes) - 1

    def chain(cur, bag, target):
        for v in members(bag & ~target):
            bag &= ~(1 << v)
            cur = add(FORGET, bag, (cur,), v)
        for v in members(target & ~bag):
            bag |= 1 << v
            cur = add(INTRODUCE, bag, (cur,), v)
        return cur

    # iterative post-order over the input tree
    order, parent = [], {root: -1}
    stack = [root]
    while stack:
        t = stack.pop()
        order.append(t)
        for c in tadj[t]:
            if c != parent[t]:
                parent[c] = t
                stack.append(c)
    top = {}
    for t in reversed(order):
        kids = sorted(c for c in tadj[t] if c != parent[t])
        if not kids:
            top[t] = chain(add(LEAF, 0), 0, masks[t])
            continue
        subs = [chain(top[c], masks[c], masks[t]) for c in kids]
        cur = subs[0]
        for s in subs[1:]:
            cur = add(JOIN, masks[t], (cur, s))
        top[t] = cur
    r = chain(top[root], masks[root], 0)
    return NiceTreeDecomposition(nodes, r)


# ---------------------------------------------------------------- exact search

def _reach(adj, s, v):
    """Vertices outside s and v reachable from v through s."""
    comp, frontier = 1 << v, 1 << v
    while frontier:
        nb = 0
        for u in iter_bits(frontier):
            nb |= adj[u]
        frontier = nb & s & ~comp
        comp |= frontier
    out = 0
    for u in iter_bits(comp):
        out |= adj[u]
    return out & ~s & ~(1 << v)


def elimination_ordering(G: Graph, max_width: int) -> Optional[list]:
    """An elimination ordering of width <= max_width, or None.

    Explores only vertex sets that can be eliminated first without ever
    exceeding the width, so small widths stay cheap.
    """
    n, adj = G.n, G.adj
    full = G.vertex_mask
    parent = {0: None}
    layer = [0]
    for _ in range(n):
        nxt = []
        for s in layer:
            for v in iter_bits(full & ~s):
                t = s | 1 << v
                if t in parent:
                    continue
                if _reach(adj, s, v).bit_count() <= max_width:
                    parent[t] = (s, v)
                    nxt.append(t)
        layer = nxt
    if full not in parent:
        return None
    order, s = [], full
    while s:
        s, v = parent[s]
        order.append(v)
    order.reverse()
    return order


def td_from_ordering(G: Graph, order: list) -> TreeDecomposition:
    n = G.n
    pos = {v: i for i, v in enumerate(order)}
    nb = list(G.adj)
    bags, parent = [], []
    for v in order:
        later = members(nb[v] & ~_done_mask(order, pos[v]))
        bags.append(frozenset([v, *later]))
        for a in later:
            nb[a] |= _mask(later) & ~(1 << a)
        parent.append(min(later, key=pos.get) if later else None)
    edges = []
    roots = []
    for i, v in enumerate(order):
        if parent[i] is None:
            roots.append(i)
        else:
            edges.append((i, pos[parent[i]]))
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    if n == 0:
        return TreeDecomposition([frozenset()], [])
    return TreeDecomposition(bags, edges, max(len(b) for b in bags) - 1)


def _mask(vs):
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _done_mask(order, upto):
    return _mask(order[: upto + 1])


def compute_td_small(G: Graph, max_width: int) -> Optional[TreeDecomposition]:
    """Minimum-width decomposition if the treewidth is at most ``max_width``."""
    if G.n > TD_CAPACITY:
        raise CapacityError(f"exact decomposition capacity exceeded: n={G.n} > {TD_CAPACITY}")
    for w in range(0, max_width + 1):
        order = elimination_ordering(G, w)
        if order is not None:
            return td_from_ordering(G, order)
    return None


def treewidth(G: Graph) -> int:
    if G.n == 0:
        return -1
    for w in range(G.n):
        if elimination_ordering(G, w) is not None:
            return w
    return G.n - 1
