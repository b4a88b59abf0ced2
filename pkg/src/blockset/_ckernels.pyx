# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Masks are uint64 here, so callers must route n > 64 (and edge families
with more than 64 members) to the pure-Python versions.
"""

from libc.stdint cimport uint64_t, uint8_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef inline int popc(uint64_t x) nogil:
    return __builtin_popcountll(x)

cdef inline int ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef uint64_t* _adj_array(adj) except NULL:
    cdef Py_ssize_t k = len(adj)
    cdef uint64_t* a = <uint64_t*>malloc((k + 1) * sizeof(uint64_t))
    if a == NULL:
        raise MemoryError()
    for i in range(k):
        a[i] = <uint64_t>adj[i]
    return a


def alpha_table(adj, int n):
    cdef uint64_t* a = _adj_array(adj)
    cdef bytearray out = bytearray(1 << n)
    cdef uint8_t* t = <uint8_t*>out
    cdef uint64_t mask, low
    cdef int v, x, y
    try:
        for mask in range(1, (<uint64_t>1) << n):
            low = mask & (~mask + 1)
            v = ctz(mask)
            x = t[mask ^ low]
            y = 1 + t[mask & ~a[v] & ~low]
            t[mask] = x if x >= y else y
    finally:
        free(a)
    return out


cdef int _alpha_bb(uint64_t* a, uint64_t allowed) nogil:
    if allowed == 0:
        return 0
    cdef uint64_t rest = allowed, low, bit
    cdef int v, d, best_v = -1, best_d = -1, x, y
    while rest:
        low = rest & (~rest + 1)
        rest ^= low
        v = ctz(low)
        d = popc(a[v] & allowed)
        if d <= 1:
            return 1 + _alpha_bb(a, allowed & ~a[v] & ~low)
        if d > best_d:
            best_d = d
            best_v = v
    bit = (<uint64_t>1) << best_v
    x = _alpha_bb(a, allowed & ~bit)
    y = 1 + _alpha_bb(a, allowed & ~a[best_v] & ~bit)
    return x if x >= y else y


def alpha_bb(adj, allowed):
    cdef uint64_t* a = _adj_array(adj)
    cdef int r
    try:
        r = _alpha_bb(a, <uint64_t>allowed)
    finally:
        free(a)
    return r


cdef void _mis_rec(uint64_t* a, uint64_t cand, uint64_t cur, int size,
                   int alpha, list out):
    if size == alpha:
        out.append(cur)
        return
    if size + popc(cand) < alpha:
        return
    cdef uint64_t low = cand & (~cand + 1)
    cdef int v = ctz(cand)
    _mis_rec(a, cand & ~a[v] & ~low, cur | low, size + 1, alpha, out)
    _mis_rec(a, cand & ~low, cur, size, alpha, out)


def maximum_independent_sets(adj, allowed, int alpha):
    cdef uint64_t* a = _adj_array(adj)
    cdef list out = []
    try:
        _mis_rec(a, <uint64_t>allowed, 0, 0, alpha, out)
    finally:
        free(a)
    out.sort()
    return out


cdef uint64_t* _hit_table(edges, int n) except NULL:
    cdef uint64_t* cover = <uint64_t*>malloc((n + 1) * sizeof(uint64_t))
    cdef uint64_t* hit = <uint64_t*>malloc(((<size_t>1) << n) * sizeof(uint64_t))
    cdef uint64_t e, low, mask
    cdef int i
    if cover == NULL or hit == NULL:
        free(cover)
        free(hit)
        raise MemoryError()
    for i in range(n):
        cover[i] = 0
    for i in range(len(edges)):
        e = <uint64_t>edges[i]
        while e:
            low = e & (~e + 1)
            e ^= low
            cover[ctz(low)] |= (<uint64_t>1) << i
    hit[0] = 0
    for mask in range(1, (<uint64_t>1) << n):
        low = mask & (~mask + 1)
        hit[mask] = hit[mask ^ low] | cover[ctz(low)]
    free(cover)
    return hit


cdef inline bint _is_minimal(uint64_t* table, uint64_t mask, uint64_t full) nogil:
    cdef uint64_t rest = mask, low
    while rest:
        low = rest & (~rest + 1)
        rest ^= low
        if table[mask ^ low] == full:
            return False
    return True


cdef uint64_t _full(int m):
    if m == 64:
        return ~(<uint64_t>0)
    return ((<uint64_t>1) << m) - 1


def max_minimal_transversal(edges, int n):
    cdef uint64_t full = _full(len(edges))
    cdef uint64_t* hit = _hit_table(edges, n)
    cdef uint64_t mask, best_mask = 0
    cdef int c, best = -1
    try:
        for mask in range((<uint64_t>1) << n):
            if hit[mask] != full:
                continue
            c = popc(mask)
            if c > best and _is_minimal(hit, mask, full):
                best = c
                best_mask = mask
    finally:
        free(hit)
    if best < 0:
        return -1, -1
    return best, best_mask


def minimal_transversals(edges, int n):
    cdef uint64_t full = _full(len(edges))
    cdef uint64_t* hit = _hit_table(edges, n)
    cdef uint64_t mask
    cdef list out = []
    try:
        for mask in range((<uint64_t>1) << n):
            if hit[mask] == full and _is_minimal(hit, mask, full):
                out.append(mask)
    finally:
        free(hit)
    out.sort(key=lambda m: (m.bit_count(), m))
    return out


def max_minimal_dominating(adj, int n):
    cdef uint64_t* a = _adj_array(adj)
    cdef uint64_t* dom = <uint64_t*>malloc(((<size_t>1) << n) * sizeof(uint64_t))
    cdef uint64_t full = _full(n)
    cdef uint64_t mask, low, best_mask = 0
    cdef int c, best = -1
    if dom == NULL:
        free(a)
        raise MemoryError()
    try:
        dom[0] = 0
        for mask in range(1, (<uint64_t>1) << n):
            low = mask & (~mask + 1)
            dom[mask] = dom[mask ^ low] | a[ctz(low)] | low
        for mask in range((<uint64_t>1) << n):
            if dom[mask] != full:
                continue
            c = popc(mask)
            if c > best and _is_minimal(dom, mask, full):
                best = c
                best_mask = mask
    finally:
        free(a)
        free(dom)
    if best < 0:
        return -1, -1
    return best, best_mask
