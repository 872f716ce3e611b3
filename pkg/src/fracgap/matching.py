"""Maximum matchings and Tutte-Berge deficiency witnesses."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Literal

from .graph import Graph, component_masks, iter_bits, odd_and_isolated, popcount

DEFAULT_CAP = 16
HARD_CAP = 20

Flavor = Literal["odd-component", "isolated-vertex"]


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    edges: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.edges)

    def mate(self, n: int) -> list[int]:
        m = [-1] * n
        for u, v in self.edges:
            m[u], m[v] = v, u
        return m

    def is_valid_for(self, g: Graph) -> bool:
        seen: set[int] = set()
        for u, v in self.edges:
            if not g.has_edge(u, v) or u in seen or v in seen:
                return False
            seen.update((u, v))
        return True


@dataclass(frozen=True)
class DeficiencyWitness:
    S: tuple[int, ...]
    value: int
    flavor: Flavor

    def to_json(self) -> dict:
        return {"S": list(self.S), "value": self.value, "flavor": self.flavor}


def _greedy(g: Graph) -> list[int]:
    mate = [-1] * g.n
    for u in range(g.n):
        if mate[u] == -1:
            for w in g.neighbors[u]:
                if mate[w] == -1:
                    mate[u], mate[w] = w, u
                    break
    return mate


def _augment_from(root: int, nbrs, mate: list[int]) -> bool:
    """Edmonds' search for an augmenting path from the exposed vertex ``root``.

    Blossoms are contracted implicitly through ``base``. Returns True after
    flipping the path found, False if none exists.
    """
    n = len(mate)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    q = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while q:
        v = q.popleft()
        for to in nbrs[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                b = lca(v, to)
                blossom = [False] * n
                mark(v, b, to, blossom)
                mark(to, b, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = b
                        if not used[i]:
                            used[i] = True
                            q.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    while to != -1:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to], mate[pv] = pv, to
                        to = nxt
                    return True
                used[mate[to]] = True
                q.append(mate[to])
    return False


def max_matching_mate(g: Graph, forbid: int = 0) -> list[int]:
    """Mate array of a maximum matching of ``g`` minus the vertices in mask ``forbid``."""
    if forbid:
        keep = g.full_mask & ~forbid
        nbrs = [tuple(iter_bits(g.adj[v] & keep)) if keep >> v & 1 else () for v in range(g.n)]
        mate = [-1] * g.n
        for u in range(g.n):
            if mate[u] == -1:
                for w in nbrs[u]:
                    if mate[w] == -1:
                        mate[u], mate[w] = w, u
                        break
    else:
        nbrs = g.neighbors
        mate = _greedy(g)
    for root in range(g.n):
        if mate[root] == -1 and nbrs[root]:
            _augment_from(root, nbrs, mate)
    return mate


def max_matching(g: Graph) -> Matching:
    mate = max_matching_mate(g)
    return Matching(frozenset((u, v) for u, v in enumerate(mate) if u < v))


def matching_number(g: Graph) -> int:
    return sum(1 for v in max_matching_mate(g) if v != -1) // 2


def _check_cap(g: Graph, cap: int) -> None:
    if cap > HARD_CAP:
        raise ValueError(f"cap {cap} above hard limit {HARD_CAP}")
    if g.n > cap:
        raise CapExceeded(f"n={g.n} exceeds brute-force cap {cap}; use gallai_edmonds instead")


def _best_subset(g: Graph, score, cap: int) -> tuple[int, int]:
    """Maximize ``score(S)`` over all vertex masks; ties go to larger |S|, then the
    lexicographically least sorted member list."""
    _check_cap(g, cap)
    full = g.full_mask
    best_val, best_mask, best_key = None, 0, None
    for s in range(full + 1):
        val = score(s, full & ~s)
        if best_val is not None and val < best_val:
            continue
        size = popcount(s)
        key = (val, size)
        if best_key is None or key > best_key:
            best_key, best_val, best_mask = key, val, s
        elif key == best_key and list(iter_bits(s)) < list(iter_bits(best_mask)):
            best_mask = s
    return best_val, best_mask


def tutte_berge_witness(g: Graph, cap: int = DEFAULT_CAP) -> DeficiencyWitness:
    """Set S maximizing o(G-S) - |S|, preferring the largest such S."""
    adj = g.adj
    val, s = _best_subset(g, lambda s, rest: odd_and_isolated(adj, rest)[0] - popcount(s), cap)
    return DeficiencyWitness(tuple(iter_bits(s)), val, "odd-component")


def deficiency(g: Graph, cap: int = DEFAULT_CAP) -> int:
    return tutte_berge_witness(g, cap).value


def gallai_edmonds(g: Graph) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Gallai-Edmonds decomposition ``(D, A, C)``.

    D holds the vertices left exposed by some maximum matching, found by
    re-solving with each vertex deleted in turn.
    """
    nu = matching_number(g)
    D = 0
    for v in range(g.n):
        mate = max_matching_mate(g, forbid=1 << v)
        if sum(1 for x in mate if x != -1) // 2 == nu:
            D |= 1 << v
    A = 0
    for v in iter_bits(D):
        A |= g.adj[v]
    A &= ~D
    C = g.full_mask & ~D & ~A
    return frozenset(iter_bits(D)), frozenset(iter_bits(A)), frozenset(iter_bits(C))


def gallai_edmonds_deficiency(g: Graph) -> int:
    """c(G[D]) - |A|, which equals n - 2*alpha' for the decomposition above."""
    D, A, _ = gallai_edmonds(g)
    dmask = sum(1 << v for v in D)
    return len(component_masks(g.adj, dmask)) - len(A)
