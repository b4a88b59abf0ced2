"""Pure-Python bitmask kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same
signature and the same output.  Vertex sets are ints used as bitmasks,
``adj[v]`` is the neighbourhood mask of ``v``.
"""


def alpha_table(adj, n):
    """Independence number of every induced subgraph, indexed by mask."""
    t = bytearray(1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        v = low.bit_length() - 1
        a = t[mask ^ low]
        b = 1 + t[mask & ~adj[v] & ~low]
        t[mask] = a if a >= b else b
    return t


def alpha_bb(adj, allowed):
    """Independence number of G[allowed] by branch and reduce."""
    if not allowed:
        return 0
    best_v = -1
    best_d = -1
    rest = allowed
    while rest:
        low = rest & -rest
        rest ^= low
        v = low.bit_length() - 1
        d = (adj[v] & allowed).bit_count()
        if d <= 1:
            # a vertex of degree <= 1 is in some maximum independent set
            return 1 + alpha_bb(adj, allowed & ~adj[v] & ~low)
        if d > best_d:
            best_d = d
            best_v = v
    bit = 1 << best_v
    a = alpha_bb(adj, allowed & ~bit)
    b = 1 + alpha_bb(adj, allowed & ~adj[best_v] & ~bit)
    return a if a >= b else b


def maximum_independent_sets(adj, allowed, alpha):
    """All independent subsets of ``allowed`` of size ``alpha``, ascending."""
    out = []

    def rec(cand, cur, size):
        if size == alpha:
            out.append(cur)
            return
        if size + cand.bit_count() < alpha:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        rec(cand & ~adj[v] & ~low, cur | low, size + 1)
        rec(cand & ~low, cur, size)

    rec(allowed, 0, 0)
    out.sort()
    return out


def _hit_table(edges, n):
    cover = [0] * n
    for i, e in enumerate(edges):
        bit = 1 << i
        while e:
            low = e & -e
            e ^= low
            cover[low.bit_length() - 1] |= bit
    hit = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        hit[mask] = hit[mask ^ low] | cover[low.bit_length() - 1]
    return hit


def _is_minimal(table, mask, full):
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        if table[mask ^ low] == full:
            return False
    return True


def max_minimal_transversal(edges, n):
    """Largest minimal hitting set over vertices ``0..n-1``.

    Returns ``(size, mask)``; ties go to the smallest mask, which is the
    first hit in (popcount, value) order.  ``(-1, -1)`` if nothing hits.
    """
    full = (1 << len(edges)) - 1
    hit = _hit_table(edges, n)
    best, best_mask = -1, -1
    for mask in range(1 << n):
        if hit[mask] != full:
            continue
        c = mask.bit_count()
        if c > best and _is_minimal(hit, mask, full):
            best, best_mask = c, mask
    return best, best_mask


def minimal_transversals(edges, n):
    """Every minimal hitting set, ordered by (popcount, value)."""
    full = (1 << len(edges)) - 1
    hit = _hit_table(edges, n)
    out = [m for m in range(1 << n) if hit[m] == full and _is_minimal(hit, m, full)]
    out.sort(key=lambda m: (m.bit_count(), m))
    return out


def max_minimal_dominating(adj, n):
    """Largest inclusion-minimal dominating set; same tie rule as above."""
    full = (1 << n) - 1
    dom = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        dom[mask] = dom[mask ^ low] | adj[low.bit_length() - 1] | low
    best, best_mask = -1, -1
    for mask in range(1 << n):
        if dom[mask] != full:
            continue
        c = mask.bit_count()
        if c > best and _is_minimal(dom, mask, full):
            best, best_mask = c, mask
    return best, best_mask
