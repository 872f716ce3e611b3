"""Simple undirected graphs on vertices 0..n-1.

Graphs are immutable and hashable. Besides the edge list, each graph carries
bitmask adjacency (``adj[v]`` has bit ``u`` set iff ``uv`` is an edge), which
is what the exhaustive routines in this package iterate over.
"""

from __future__ import annotations

import gzip
import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

GRAPH6_HEADER = ">>graph6<<"
MAX_GRAPH6_N = 2000
MAX_ENUMERATE_N = 8


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the index of the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.reason = message
        self.offset = offset


class UnsupportedSize(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()
    adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            if u < 0 or v >= self.n:
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((u, v))
        if len(norm) != len(self.edges):
            raise ValueError("duplicate edge")
        adj = [0] * self.n
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> Graph:
        n = len(adj)
        return cls(n, tuple((u, v) for u in range(n) for v in range(u + 1, n) if adj[u] >> v & 1))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(iter_bits(a)) for a in self.adj)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return component_mask(self.adj, 1, self.full_mask) == self.full_mask

    def add_edge(self, u: int, v: int) -> Graph:
        return Graph(self.n, self.edges + ((min(u, v), max(u, v)),))

    def without_vertex(self, v: int) -> Graph:
        """Delete ``v`` and relabel the remaining vertices in order."""
        keep = [u for u in range(self.n) if u != v]
        return self.induced(keep)

    def induced(self, vertices: Iterable[int]) -> Graph:
        vs = sorted(set(vertices))
        pos = {u: i for i, u in enumerate(vs)}
        return Graph(len(vs), tuple((pos[a], pos[b]) for a, b in self.edges if a in pos and b in pos))

    def __str__(self) -> str:
        return encode_graph6(self) if self.n <= MAX_GRAPH6_N else f"Graph(n={self.n}, m={self.m})"


def popcount(x: int) -> int:
    return bin(x).count("1")


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def component_mask(adj: Sequence[int], seed: int, within: int) -> int:
    """Vertices reachable from the bits of ``seed`` inside the vertex mask ``within``."""
    comp = seed & within
    frontier = comp
    while frontier:
        nb = 0
        for v in iter_bits(frontier):
            nb |= adj[v]
        frontier = nb & within & ~comp
        comp |= frontier
    return comp


def component_masks(adj: Sequence[int], within: int) -> list[int]:
    """Connected components of the subgraph induced by ``within``, lowest vertex first."""
    comps = []
    rest = within
    while rest:
        c = component_mask(adj, rest & -rest, within)
        comps.append(c)
        rest &= ~c
    return comps


# --------------------------------------------------------------------------
# graph6
# --------------------------------------------------------------------------

def _strip(line: str) -> str:
    s = line.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    return s


def parse_graph6(line: str | bytes) -> Graph:
    if isinstance(line, bytes):
        line = line.decode("latin-1")
    s = _strip(line)
    data = [ord(c) for c in s]
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    for i, b in enumerate(data):
        if b < 63 or b > 126:
            raise Graph6Error(f"byte value {b} outside graph6 range 63..126", i)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    else:
        if len(data) < 4:
            raise Graph6Error("truncated long size field", len(data))
        if data[1] == 126:
            raise Graph6Error("8-byte size field not supported", 1)
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
        if n <= 62:
            raise Graph6Error(f"long size field used for small n={n}", 0)
    if n > MAX_GRAPH6_N:
        raise UnsupportedSize(f"n={n} exceeds supported maximum {MAX_GRAPH6_N}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise Graph6Error(f"expected {nbytes} edge bytes, found {len(data) - pos}", len(data))
    if len(data) - pos > nbytes:
        raise Graph6Error("trailing bytes after edge data", pos + nbytes)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            b = data[pos + k // 6] - 63
            if b >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, tuple(edges))


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n > MAX_GRAPH6_N:
        raise UnsupportedSize(f"n={n} exceeds supported maximum {MAX_GRAPH6_N}")
    if n <= 62:
        out = [n + 63]
    else:
        out = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    cur = 0
    k = 0
    for j in range(1, n):
        aj = g.adj[j]
        for i in range(j):
            cur = (cur << 1) | (aj >> i & 1)
            k += 1
            if k == 6:
                out.append(cur + 63)
                cur = k = 0
    if k:
        out.append((cur << (6 - k)) + 63)
    return "".join(map(chr, out))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for every non-blank line; line numbers start at 1."""
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.strip() == GRAPH6_HEADER:
            continue
        try:
            yield lineno, parse_graph6(line)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc.reason}", exc.offset) from None


def open_text(path: str):
    if path.endswith(".gz"):
        return gzip.open(path, "rt", encoding="ascii")
    return open(path, encoding="ascii")


def read_graph6_file(path: str) -> list[Graph]:
    with open_text(path) as fh:
        return [g for _, g in read_graph6_lines(fh)]


# --------------------------------------------------------------------------
# components
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentProfile:
    odd: int
    isolated: int
    big_odd: int
    comps: tuple[frozenset[int], ...]

    @property
    def even(self) -> int:
        return len(self.comps) - self.odd


def components(g: Graph, removed: Iterable[int] = ()) -> ComponentProfile:
    """Components of ``g - removed`` with counts of odd, isolated and odd >= 3 components."""
    rm = mask_of(removed)
    if rm >> g.n:
        raise ValueError("removed set not contained in the vertex range")
    masks = component_masks(g.adj, g.full_mask & ~rm)
    sizes = [popcount(c) for c in masks]
    odd = sum(1 for s in sizes if s % 2)
    iso = sum(1 for s in sizes if s == 1)
    return ComponentProfile(odd, iso, odd - iso, tuple(frozenset(iter_bits(c)) for c in masks))


def odd_and_isolated(adj: Sequence[int], within: int) -> tuple[int, int]:
    """Fast ``(o, i)`` counts for the subgraph induced by ``within``."""
    odd = iso = 0
    rest = within
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        if not adj[v] & within:
            odd += 1
            iso += 1
            rest ^= low
            continue
        c = component_mask(adj, low, within)
        if popcount(c) & 1:
            odd += 1
        rest &= ~c
    return odd, iso


def isolated_count(adj: Sequence[int], within: int) -> int:
    return sum(1 for v in iter_bits(within) if not adj[v] & within)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for h in graphs:
        edges.extend((u + off, v + off) for u, v in h.edges)
        off += h.n
    return Graph(off, tuple(edges))


# --------------------------------------------------------------------------
# canonical form and enumeration
# --------------------------------------------------------------------------

def _refine(nbrs: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    ncol = len(set(colors))
    while True:
        sig = [(colors[v], tuple(sorted(colors[u] for u in nb))) for v, nb in enumerate(nbrs)]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        colors = [rank[s] for s in sig]
        if len(rank) == ncol:
            return colors
        ncol = len(rank)


def _code(adj: Sequence[int], colors: Sequence[int]) -> int:
    # colors form a permutation: vertex v gets label colors[v]
    n = len(adj)
    inv = [0] * n
    for v, c in enumerate(colors):
        inv[c] = v
    code = 0
    for j in range(1, n):
        aj = adj[inv[j]]
        for i in range(j):
            code = (code << 1) | (aj >> inv[i] & 1)
    return code


def canonical_labeling(g: Graph) -> list[int]:
    """Labeling ``v -> label`` such that isomorphic graphs relabel to identical graphs.

    Individualization-refinement: refine colors to an equitable partition,
    branch on the first non-singleton cell, and keep the leaf with the
    largest adjacency code. Vertices that are twins (same neighborhood apart
    from each other) lie in one automorphism orbit, so only one of them is
    branched on per cell.
    """
    n = g.n
    if n <= 1:
        return list(range(n))
    adj = g.adj
    nbrs = g.neighbors
    best: list = [None, None]

    def search(colors: list[int]) -> None:
        colors = _refine(nbrs, colors)
        if len(set(colors)) == n:
            c = _code(adj, colors)
            if best[0] is None or c > best[0]:
                best[0], best[1] = c, colors
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(n) if colors[v] == target]
        tried: list[int] = []
        for v in cell:
            if any((adj[v] & ~(1 << w)) == (adj[w] & ~(1 << v)) for w in tried):
                continue
            tried.append(v)
            # v is split off ahead of the rest of its cell
            search([2 * c + (0 if u == v else 1) if c == target else 2 * c for u, c in enumerate(colors)])

    search([popcount(a) for a in adj])
    return best[1]


def canonical_form(g: Graph) -> Graph:
    lab = canonical_labeling(g)
    return Graph(g.n, tuple((lab[u], lab[v]) for u, v in g.edges))


def canonical_key(g: Graph) -> tuple[int, str]:
    return g.n, encode_graph6(canonical_form(g))


def extend_by_vertex(parents: Iterable[Graph], connected: bool = True) -> list[Graph]:
    """All graphs on n+1 vertices obtained by adding one vertex to some parent, up to isomorphism.

    With ``connected`` the new vertex gets a nonempty neighborhood; since every
    connected graph has a non-cut vertex, extending all connected graphs on n
    vertices reaches every connected graph on n+1 vertices.
    """
    seen: dict[str, Graph] = {}
    for p in parents:
        n = p.n
        for nb in range(1 if connected else 0, 1 << n):
            adj = list(p.adj) + [nb]
            for u in iter_bits(nb):
                adj[u] |= 1 << n
            h = canonical_form(Graph.from_adjacency(adj))
            key = encode_graph6(h)
            if key not in seen:
                seen[key] = h
    return [seen[k] for k in sorted(seen)]


@lru_cache(maxsize=None)
def _connected_level(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1),)
    return tuple(extend_by_vertex(_connected_level(n - 1), connected=True))


@lru_cache(maxsize=None)
def _all_level(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0),)
    return tuple(extend_by_vertex(_all_level(n - 1), connected=False))


def enumerate_connected(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected graphs on n vertices."""
    if not 1 <= n <= MAX_ENUMERATE_N:
        raise UnsupportedSize(
            f"internal enumeration supports 1 <= n <= {MAX_ENUMERATE_N}; "
            f"read larger corpora from a graph6 file instead")
    return iter(_connected_level(n))


def enumerate_all(n: int) -> Iterator[Graph]:
    """Every graph on n vertices up to isomorphism, connected or not (n <= 7)."""
    if not 0 <= n <= 7:
        raise UnsupportedSize(f"enumerate_all supports 0 <= n <= 7, got {n}")
    return iter(_all_level(n))


def iter_unions(connected_by_n: dict[int, Sequence[Graph]], max_n: int,
                min_parts: int = 1) -> Iterator[Graph]:
    """Disjoint unions of connected graphs with total order <= max_n.

    Each multiset of components appears once, so when the inputs are
    isomorphism-class representatives so are the outputs. Components are laid
    out largest first.
    """
    if max_n < 0:
        return
    sizes = sorted((s for s in connected_by_n if 1 <= s <= max_n), reverse=True)
    pool = [(s, i) for s in sizes for i in range(len(connected_by_n[s]))]
    # first pool index whose component fits in r vertices
    fits = [next((k for k, (s, _) in enumerate(pool) if s <= r), len(pool)) for r in range(max_n + 1)]

    def rec(start: int, remaining: int, chosen: list[tuple[int, int]]):
        if len(chosen) >= min_parts:
            yield disjoint_union(*(connected_by_n[s][i] for s, i in chosen))
        for k in range(max(start, fits[remaining]), len(pool)):
            chosen.append(pool[k])
            yield from rec(k, remaining - pool[k][0], chosen)
            chosen.pop()

    yield from rec(0, max_n, [])


# --------------------------------------------------------------------------
# named graphs and extremal families
# --------------------------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def gen_triangle_star(k: int) -> Graph:
    """Vertex 0 joined to the singleton 1 and to one vertex of each of k disjoint triangles."""
    if k < 1:
        raise ValueError("k must be positive")
    edges = [(0, 1)]
    for t in range(k):
        a, b, c = 2 + 3 * t, 3 + 3 * t, 4 + 3 * t
        edges += [(a, b), (a, c), (b, c), (0, a)]
    return Graph(3 * k + 2, tuple(edges))


def gen_equality_small() -> list[Graph]:
    """C5 and K2 + K3 joined by a single bridge."""
    k2k3 = Graph(5, ((0, 1), (2, 3), (2, 4), (3, 4), (1, 2)))
    return [cycle(5), k2k3]


def gen_disjoint_triangles(k: int) -> Graph:
    if k < 1:
        raise ValueError("k must be positive")
    return disjoint_union(*([complete(3)] * k))
