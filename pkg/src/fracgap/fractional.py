"""Fractional matchings in exact half-units.

A weight of 0, 1/2 or 1 on an edge is stored as the integer 0, 1 or 2, so a
fractional matching number alpha_f is always reported as ``2 * alpha_f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .graph import Graph, component_masks, isolated_count, iter_bits, popcount
from .matching import DEFAULT_CAP, DeficiencyWitness, _best_subset

FPM_CAP = 12


class NonOptimalInput(ValueError):
    """The matching handed to the canonicalizer admits a size-increasing change."""


class NotCanonical(ValueError):
    pass


@dataclass(frozen=True)
class HalfIntegralMatching:
    host: Graph
    weight: Mapping[tuple[int, int], int]

    def __post_init__(self):
        w = {e: int(self.weight.get(e, 0)) for e in self.host.edges}
        extra = set(self.weight) - set(w)
        if extra:
            raise ValueError(f"weights given for non-edges {sorted(extra)}")
        for e, x in w.items():
            if x not in (0, 1, 2):
                raise ValueError(f"edge {e} has weight {x} outside {{0, 1, 2}} half-units")
        object.__setattr__(self, "weight", w)
        for v, load in enumerate(self.loads()):
            if load > 2:
                raise ValueError(f"vertex {v} carries {load} half-units")

    def loads(self) -> list[int]:
        load = [0] * self.host.n
        for (u, v), x in self.weight.items():
            load[u] += x
            load[v] += x
        return load

    @property
    def size_halves(self) -> int:
        return sum(self.weight.values())

    def edges_of_weight(self, x: int) -> list[tuple[int, int]]:
        return [e for e, y in self.weight.items() if y == x]

    def to_json(self) -> list[list[int]]:
        return [[u, v, x] for (u, v), x in sorted(self.weight.items())]


@dataclass(frozen=True)
class CanonicalStats:
    w0: int
    w1: int
    c: dict[int, int] = field(default_factory=dict)

    @property
    def cycles(self) -> int:
        return sum(self.c.values())

    @property
    def size_halves(self) -> int:
        return 2 * self.w1 + sum((2 * i + 1) * k for i, k in self.c.items())

    @property
    def order(self) -> int:
        return self.w0 + 2 * self.w1 + sum((2 * i + 1) * k for i, k in self.c.items())

    @property
    def matching_lower_bound(self) -> int:
        return self.w1 + sum(i * k for i, k in self.c.items())

    def to_json(self) -> dict:
        return {"w0": self.w0, "w1": self.w1, "c": {str(i): k for i, k in sorted(self.c.items())}}


@dataclass(frozen=True)
class FpmPartition:
    parts: tuple[tuple[int, ...], ...]


# --------------------------------------------------------------------------
# alpha_f through the bipartite double cover
# --------------------------------------------------------------------------

def double_cover(g: Graph) -> Graph:
    n = g.n
    edges = []
    for u, v in g.edges:
        edges.append((u, n + v))
        edges.append((v, n + u))
    return Graph(2 * n, tuple(edges))


def _cover_matching(g: Graph) -> list[int]:
    """Maximum matching of the double cover as ``right[v] = u`` meaning u -- v' is matched.

    Left copies are processed in increasing order with Kuhn's augmenting search.
    """
    n = g.n
    nbrs = g.neighbors
    right = [-1] * n
    left = [-1] * n
    for u in range(n):
        for v in nbrs[u]:
            if right[v] == -1:
                right[v], left[u] = u, v
                break

    def try_augment(u: int, seen: list[bool]) -> bool:
        for v in nbrs[u]:
            if not seen[v]:
                seen[v] = True
                if right[v] == -1 or try_augment(right[v], seen):
                    right[v], left[u] = u, v
                    return True
        return False

    for u in range(n):
        if left[u] == -1 and nbrs[u]:
            try_augment(u, [False] * n)
    return right


def alpha_f_halves(g: Graph) -> int:
    """Twice the fractional matching number."""
    return sum(1 for u in _cover_matching(g) if u != -1)


def extract_half_integral(g: Graph) -> HalfIntegralMatching:
    """Optimal half-integral fractional matching folded from a double-cover matching."""
    w: dict[tuple[int, int], int] = {}
    for v, u in enumerate(_cover_matching(g)):
        if u != -1:
            e = (min(u, v), max(u, v))
            w[e] = w.get(e, 0) + 1
    return HalfIntegralMatching(g, w)


# --------------------------------------------------------------------------
# canonicalization
# --------------------------------------------------------------------------

def _half_pieces(g: Graph, w: dict) -> list[tuple[str, list[int]]]:
    """Components of the half-edge subgraph as ('path' | 'cycle', vertex sequence).

    Sequences start at the lowest endpoint (paths) or lowest vertex (cycles)
    and walk towards the smaller neighbor first; pieces are ordered by their
    lowest vertex.
    """
    hn: dict[int, list[int]] = {}
    for (u, v), x in w.items():
        if x == 1:
            hn.setdefault(u, []).append(v)
            hn.setdefault(v, []).append(u)
    for lst in hn.values():
        lst.sort()
    pieces = []
    done: set[int] = set()
    for s in sorted(hn):
        if s in done:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in hn[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        done |= comp
        ends = sorted(v for v in comp if len(hn[v]) == 1)
        kind = "path" if ends else "cycle"
        start = ends[0] if ends else min(comp)
        seq = [start]
        prev, cur = None, start
        while True:
            nxt = [y for y in hn[cur] if y != prev]
            if not nxt or (kind == "cycle" and nxt[0] == start):
                break
            prev, cur = cur, nxt[0]
            if cur == start:
                break
            seq.append(cur)
        pieces.append((kind, seq))
    return pieces


def _set(w: dict, u: int, v: int, x: int) -> None:
    w[(min(u, v), max(u, v))] = x


def _alternate_path(w: dict, seq: list[int]) -> None:
    for k in range(len(seq) - 1):
        _set(w, seq[k], seq[k + 1], 2 if k % 2 == 0 else 0)


def canonicalize(g: Graph, f: HalfIntegralMatching,
                 log: list[str] | None = None) -> HalfIntegralMatching:
    """Rewrite an optimal half-integral matching until its half-edges form
    pairwise non-adjacent odd cycles.

    Rewrites, tried in this order and restarted after each application:
    half-weight paths and even cycles become alternating 1/0 edges, and an
    edge joining two half-weight odd cycles takes weight 1 while both
    cycles, minus that edge's endpoints, alternate. Each rewrite preserves
    the size and adds at least one 1-edge. ``log`` collects one tag per
    applied rewrite.
    """
    if f.host != g:
        raise ValueError("matching belongs to a different graph")
    w = dict(f.weight)
    while True:
        pieces = _half_pieces(g, w)
        rewrite = None
        for kind, seq in pieces:
            if kind == "path":
                if (len(seq) - 1) % 2:
                    raise NonOptimalInput(
                        f"half-weight path {seq} has an odd number of edges; alternating it gains weight")
                rewrite = ("R1", kind, seq)
                break
        if rewrite is None:
            for kind, seq in pieces:
                if kind == "cycle" and len(seq) % 2 == 0:
                    rewrite = ("R2", kind, seq)
                    break
        if rewrite is None:
            owner = {}
            for idx, (_, seq) in enumerate(pieces):
                for v in seq:
                    owner[v] = idx
            for u, v in g.edges:
                if u in owner and v in owner and owner[u] != owner[v]:
                    rewrite = ("R3", u, v)
                    break
        if rewrite is None:
            break
        tag = rewrite[0]
        if tag == "R1":
            _alternate_path(w, rewrite[2])
        elif tag == "R2":
            seq = rewrite[2]
            _alternate_path(w, seq + [seq[0]])
        else:
            _, u, v = rewrite
            _set(w, u, v, 2)
            for end in (u, v):
                seq = next(s for _, s in pieces if end in s)
                k = seq.index(end)
                rest = seq[k + 1:] + seq[:k]
                _set(w, end, seq[k - 1], 0)
                _set(w, end, seq[(k + 1) % len(seq)], 0)
                _alternate_path(w, rest)
        if log is not None:
            log.append(tag)
    out = HalfIntegralMatching(g, w)
    _check_unweighted(g, out)
    return out


def _check_unweighted(g: Graph, f: HalfIntegralMatching) -> None:
    load = f.loads()
    full = [False] * g.n
    for u, v in f.edges_of_weight(2):
        full[u] = full[v] = True
    for x in range(g.n):
        if load[x] == 0:
            for y in g.neighbors[x]:
                if not full[y]:
                    raise NonOptimalInput(
                        f"unweighted vertex {x} has non-full neighbor {y}; the matching is not maximum")


def canonical_stats(g: Graph, f: HalfIntegralMatching) -> CanonicalStats:
    """Counts of unweighted vertices, 1-edges and half-weight odd cycles by length."""
    load = f.loads()
    w0 = sum(1 for x in load if x == 0)
    w1 = len(f.edges_of_weight(2))
    c: dict[int, int] = {}
    owner = {}
    for idx, (kind, seq) in enumerate(_half_pieces(g, f.weight)):
        if kind != "cycle" or len(seq) % 2 == 0:
            raise NotCanonical(f"half-weight {kind} {seq} is not an odd cycle")
        c[(len(seq) - 1) // 2] = c.get((len(seq) - 1) // 2, 0) + 1
        for v in seq:
            owner[v] = idx
    for u, v in g.edges:
        if u in owner and v in owner and owner[u] != owner[v]:
            raise NotCanonical(f"edge ({u}, {v}) joins two half-weight cycles")
    return CanonicalStats(w0, w1, dict(sorted(c.items())))


def canonical_matching(g: Graph, log: list[str] | None = None) -> HalfIntegralMatching:
    return canonicalize(g, extract_half_integral(g), log)


# --------------------------------------------------------------------------
# fractional deficiency and fractional perfect matchings
# --------------------------------------------------------------------------

def frac_deficiency_witness(g: Graph, cap: int = DEFAULT_CAP) -> DeficiencyWitness:
    """Set S maximizing i(G-S) - |S|, preferring the largest such S."""
    adj = g.adj
    val, s = _best_subset(g, lambda s, rest: isolated_count(adj, rest) - popcount(s), cap)
    return DeficiencyWitness(tuple(iter_bits(s)), val, "isolated-vertex")


def _hamiltonian(adj, mask: int) -> bool:
    """Whether the subgraph induced by ``mask`` (at least 3 vertices) has a Hamiltonian cycle."""
    start = mask & -mask
    s = start.bit_length() - 1
    size = popcount(mask)

    def extend(v: int, visited: int, count: int) -> bool:
        if count == size:
            return bool(adj[v] & start)
        for u in iter_bits(adj[v] & mask & ~visited):
            rest = mask & ~visited & ~(1 << u)
            # every unvisited vertex still needs a way in
            if rest and any(not (adj[x] & (rest | start | (1 << u)) & ~(1 << x)) for x in iter_bits(rest)):
                continue
            if extend(u, visited | (1 << u), count + 1):
                return True
        return False

    return extend(s, start, 1)


def _subsets_containing(v: int, pool: int, size: int) -> Iterator[int]:
    others = [u for u in iter_bits(pool) if u != v]

    def rec(i: int, need: int, acc: int):
        if need == 0:
            yield acc
            return
        for j in range(i, len(others) - need + 1):
            yield from rec(j + 1, need - 1, acc | (1 << others[j]))

    yield from rec(0, size - 1, 1 << v)


def fpm_partition(g: Graph, cap: int = FPM_CAP) -> FpmPartition | None:
    """Partition into parts inducing K2 or an odd Hamiltonian graph, or None if none exists."""
    if g.n > cap:
        raise ValueError(f"n={g.n} exceeds partition search cap {cap}")
    adj = g.adj
    ham: dict[int, bool] = {}
    dead: set[int] = set()
    parts: list[int] = []

    def solve(rest: int) -> bool:
        if not rest:
            return True
        if rest in dead:
            return False
        low = rest & -rest
        v = low.bit_length() - 1
        for u in iter_bits(adj[v] & rest):
            parts.append(low | (1 << u))
            if solve(rest & ~parts[-1]):
                return True
            parts.pop()
        for size in range(3, popcount(rest) + 1, 2):
            for m in _subsets_containing(v, rest, size):
                if m not in ham:
                    ham[m] = _hamiltonian(adj, m)
                if ham[m]:
                    parts.append(m)
                    if solve(rest & ~m):
                        return True
                    parts.pop()
        dead.add(rest)
        return False

    if not solve(g.full_mask):
        return None
    return FpmPartition(tuple(tuple(iter_bits(m)) for m in parts))


def is_fpm_partition(g: Graph, p: FpmPartition) -> bool:
    seen = 0
    for part in p.parts:
        m = sum(1 << v for v in part)
        if m & seen:
            return False
        seen |= m
        if len(part) == 2:
            if not g.has_edge(*part):
                return False
        elif len(part) % 2 == 0 or len(part) < 3 or not _hamiltonian(g.adj, m):
            return False
    return seen == g.full_mask
