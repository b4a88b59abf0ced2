"""Text formats: DIMACS-like graphs, hitting-set hypergraphs, PACE tree decompositions.

All formats are 1-indexed on disk and 0-indexed in memory.  Lines
starting with ``c`` are comments.
"""

from __future__ import annotations

import logging
from pathlib import Path

from .core import Graph, Hypergraph
from .treewidth.decomposition import TreeDecomposition

log = logging.getLogger(__name__)


class FormatError(ValueError):
    pass


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def _vertex(v, n, lineno):
    if not 1 <= v <= n:
        raise FormatError(f"line {lineno}: vertex {v} out of range 1..{n}")
    return v - 1


def _lines(text):
    for i, raw in enumerate(text.splitlines(), 1):
        yield i, raw.strip()


# ---------------------------------------------------------------- graphs

def _parse_graph_lines(text, extra=None):
    n = m = None
    edges = []
    seen = set()
    for lineno, line in _lines(text):
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: second header")
            if len(tok) != 4 or tok[1] != "edge":
                raise FormatError(f"line {lineno}: malformed header, expected 'p edge <n> <m>'")
            n, m = _ints(tok[2:], lineno)
            if n < 0 or m < 0:
                raise FormatError(f"line {lineno}: negative counts in header")
            continue
        if n is None:
            raise FormatError(f"line {lineno}: data before the 'p edge' header")
        if tok[0] == "e":
            if len(tok) != 3:
                raise FormatError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = (_vertex(x, n, lineno) for x in _ints(tok[1:], lineno))
            if u == v:
                raise FormatError(f"line {lineno}: loop at vertex {u + 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                log.warning("line %d: duplicate edge {%d,%d} ignored", lineno, u + 1, v + 1)
                continue
            seen.add(key)
            edges.append(key)
        elif extra is not None and tok[0] in extra:
            extra[tok[0]](tok, n, lineno)
        else:
            raise FormatError(f"line {lineno}: unknown line type {tok[0]!r}")
    if n is None:
        raise FormatError("missing 'p edge <n> <m>' header")
    if len(edges) != m:
        log.warning("header announces %d edges, found %d distinct", m, len(edges))
    return n, edges


def parse_graph(text: str) -> Graph:
    n, edges = _parse_graph_lines(text)
    return Graph(n, edges)


def format_graph(G: Graph, comment: str = None) -> str:
    out = []
    if comment:
        out += [f"c {line}" for line in comment.splitlines()]
    out.append(f"p edge {G.n} {G.m}")
    out += [f"e {u + 1} {v + 1}" for u, v in G.sorted_edges()]
    return "\n".join(out) + "\n"


def parse_partitioned_graph(text: str):
    """Graph format plus one ``k <v1> <v2> ...`` line per part."""
    from .generators import PartitionedGraph

    parts = []

    def part(tok, n, lineno):
        parts.append([_vertex(v, n, lineno) for v in _ints(tok[1:], lineno)])

    n, edges = _parse_graph_lines(text, {"k": part})
    return PartitionedGraph(Graph(n, edges), parts)


def format_partitioned_graph(PG) -> str:
    body = format_graph(PG.graph)
    body += "".join("k " + " ".join(str(v + 1) for v in sorted(p)) + "\n" for p in PG.parts)
    return body


# ---------------------------------------------------------------- hypergraphs

def parse_hypergraph(text: str) -> Hypergraph:
    n = m = None
    edges = []
    pending_blank = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("c"):
            continue
        if not line:
            if n is not None and pending_blank is None:
                pending_blank = lineno
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: second header")
            if len(tok) != 4 or tok[1] != "hs":
                raise FormatError(f"line {lineno}: malformed header, expected 'p hs <n> <m>'")
            n, m = _ints(tok[2:], lineno)
            if n < 0 or m < 0:
                raise FormatError(f"line {lineno}: negative counts in header")
            continue
        if n is None:
            raise FormatError(f"line {lineno}: data before the 'p hs' header")
        if pending_blank is not None:
            raise FormatError(f"line {pending_blank}: blank edge line (empty hyperedge)")
        edges.append(sorted({_vertex(v, n, lineno) for v in _ints(tok, lineno)}))
    if n is None:
        raise FormatError("missing 'p hs <n> <m>' header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} hyperedges, found {len(edges)}")
    return Hypergraph(n, edges)


def format_hypergraph(H: Hypergraph, comment: str = None) -> str:
    if H.has_empty_edge():
        raise FormatError("the hitting-set format cannot represent an empty hyperedge")
    out = []
    if comment:
        out += [f"c {line}" for line in comment.splitlines()]
    out.append(f"p hs {H.n} {H.m}")
    out += [" ".join(str(v + 1) for v in sorted(e)) for e in H.edges]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- tree decompositions

def parse_td(text: str, n: int = None) -> TreeDecomposition:
    header = None
    bags = {}
    edges = []
    for lineno, line in _lines(text):
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "s":
            if header is not None:
                raise FormatError(f"line {lineno}: second header")
            if len(tok) != 5 or tok[1] != "td":
                raise FormatError(f"line {lineno}: malformed header, expected 's td <bags> <width+1> <n>'")
            header = _ints(tok[2:], lineno)
            continue
        if header is None:
            raise FormatError(f"line {lineno}: data before the 's td' header")
        nb, wplus, nv = header
        if tok[0] == "b":
            vals = _ints(tok[1:], lineno)
            if not vals:
                raise FormatError(f"line {lineno}: bag line without index")
            i = vals[0]
            if not 1 <= i <= nb:
                raise FormatError(f"line {lineno}: bag index {i} out of range 1..{nb}")
            if i in bags:
                raise FormatError(f"line {lineno}: bag {i} defined twice")
            bags[i] = frozenset(_vertex(v, nv, lineno) for v in vals[1:])
        else:
            vals = _ints(tok, lineno)
            if len(vals) != 2:
                raise FormatError(f"line {lineno}: expected a tree edge 'i j'")
            for i in vals:
                if not 1 <= i <= nb:
                    raise FormatError(f"line {lineno}: bag index {i} out of range 1..{nb}")
            edges.append((vals[0] - 1, vals[1] - 1))
    if header is None:
        raise FormatError("missing 's td' header")
    nb, wplus, nv = header
    if n is not None and nv != n:
        raise FormatError(f"decomposition is for {nv} vertices, graph has {n}")
    if len(bags) != nb:
        raise FormatError(f"header announces {nb} bags, found {len(bags)}")
    width = wplus - 1
    return TreeDecomposition([bags[i] for i in range(1, nb + 1)], edges, width)


def format_td(D: TreeDecomposition, n: int) -> str:
    out = [f"s td {len(D.bags)} {D.width + 1} {n}"]
    for i, b in enumerate(D.bags, 1):
        out.append(" ".join(["b", str(i), *(str(v + 1) for v in sorted(b))]))
    out += [f"{i + 1} {j + 1}" for i, j in D.tree_edges]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- files

def sniff(text: str) -> str:
    """'graph', 'hypergraph' or 'td' from the first header line."""
    for _, line in _lines(text):
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p" and len(tok) > 1:
            if tok[1] == "edge":
                return "graph"
            if tok[1] == "hs":
                return "hypergraph"
        if tok[0] == "s" and len(tok) > 1 and tok[1] == "td":
            return "td"
        break
    raise FormatError("cannot tell the file format from its header")


def read_instance(path):
    """('graph', Graph) or ('hypergraph', Hypergraph)."""
    text = Path(path).read_text(encoding="utf-8")
    kind = sniff(text)
    if kind == "graph":
        return kind, parse_graph(text)
    if kind == "hypergraph":
        return kind, parse_hypergraph(text)
    raise FormatError(f"{path}: expected a graph or hypergraph, found a tree decomposition")
