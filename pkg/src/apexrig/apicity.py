"""How far a graph is from planar, measured by vertex or edge deletions.

Four numbers are computed exactly:

* vertex apicity: fewest vertices whose deletion leaves a planar graph;
* edge apicity: fewest edges whose deletion leaves a planar graph;
* critical vertex apicity: smallest k such that deleting *any* k vertices
  leaves a planar graph;
* critical edge apicity: the same with edges.

All are 0 exactly for planar graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Edge, Graph, bits, mask_of
from .planarity import min_nonplanar_subgraph_size, planar, planar_mask

KURATOWSKI_SEARCH_LIMIT = 16


@dataclass(frozen=True)
class ApicityProfile:
    vertex_apicity: int
    edge_apicity: int
    critical_vertex_apicity: int
    critical_edge_apicity: int
    vertex_witness: tuple[int, ...]
    edge_witness: tuple[Edge, ...]

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (
            self.vertex_apicity,
            self.edge_apicity,
            self.critical_vertex_apicity,
            self.critical_edge_apicity,
        )


def apex_vertices(g: Graph) -> list[int]:
    """Vertices whose deletion leaves a planar graph."""
    full = g.full_mask
    return [v for v in range(g.n) if planar_mask(g.adj, full & ~(1 << v))]


def apex_edges(g: Graph) -> list[Edge]:
    """Edges whose deletion leaves a planar graph."""
    rows = list(g.adj)
    full = g.full_mask
    out = []
    for u, v in g.edges():
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
        if planar_mask(rows, full):
            out.append((u, v))
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
    return out


# ---------------------------------------------------------------------------
# Vertex deletions
# ---------------------------------------------------------------------------


def vertex_apicity(g: Graph) -> tuple[int, tuple[int, ...]]:
    """(k, S) with S the lexicographically least k-set such that G - S is planar."""
    full = g.full_mask
    for k in range(g.n + 1):
        for s in combinations(range(g.n), k):
            if planar_mask(g.adj, full & ~mask_of(s)):
                return k, s
    raise AssertionError("unreachable: the empty graph is planar")


def is_k_apex(g: Graph, k: int) -> bool:
    full = g.full_mask
    return any(planar_mask(g.adj, full & ~mask_of(s)) for s in combinations(range(g.n), k))


def is_critically_k_apex(g: Graph, k: int) -> bool:
    """True if deleting any k vertices leaves a planar graph."""
    if k >= g.n:
        return True
    full = g.full_mask
    return all(planar_mask(g.adj, full & ~mask_of(s)) for s in combinations(range(g.n), k))


def critical_vertex_apicity(g: Graph) -> int:
    k = 0
    while not is_critically_k_apex(g, k):
        k += 1
    return k


# ---------------------------------------------------------------------------
# Edge deletions
# ---------------------------------------------------------------------------


def _planarizing_edge_set(g: Graph, k: int) -> tuple[Edge, ...] | None:
    """Lexicographically least k-edge set F with G - F planar, or None.

    Depth-first over the sorted edge list, trying "delete" before "keep" so
    that the first success is lexicographically least.  A branch dies as soon
    as the kept edges alone form a non-planar graph, or when the Euler bound
    on the whole graph or on the graph minus one or two low-degree vertices
    demands more deletions than remain.
    """
    edges = g.edges()
    m = len(edges)
    n = g.n
    full = g.full_mask
    cap = 3 * n - 6 if n >= 3 else n * (n - 1) // 2
    kept = [0] * n
    alive = list(g.adj)
    deg = [bin(r).count("1") for r in alive]
    chosen: list[Edge] = []

    def excess_bound(size: int, left: int) -> bool:
        # Deletions still needed on the subgraph after dropping low-degree vertices.
        order = sorted(range(n), key=deg.__getitem__)
        if n - 1 >= 3 and size - deg[order[0]] - (3 * (n - 1) - 6) > left:
            return False
        if n - 2 >= 3:
            low = order[:4]
            for a in range(len(low)):
                for b in range(a + 1, len(low)):
                    u, v = low[a], low[b]
                    inner = size - deg[u] - deg[v] + ((alive[u] >> v) & 1)
                    if inner - (3 * (n - 2) - 6) > left:
                        return False
        return True

    def leaf_planar(i: int) -> bool:
        rows = list(kept)
        for u, v in edges[i:]:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return planar_mask(rows, full)

    def rec(i: int, kept_count: int) -> bool:
        left = k - len(chosen)
        if left == 0:
            return leaf_planar(i)
        if m - i < left:
            return False
        u, v = edges[i]
        chosen.append((u, v))
        alive[u] &= ~(1 << v)
        alive[v] &= ~(1 << u)
        deg[u] -= 1
        deg[v] -= 1
        if excess_bound(m - len(chosen), left - 1) and rec(i + 1, kept_count):
            return True
        chosen.pop()
        alive[u] |= 1 << v
        alive[v] |= 1 << u
        deg[u] += 1
        deg[v] += 1
        if kept_count + 1 + (m - i - 1 - left) > cap:
            return False
        kept[u] |= 1 << v
        kept[v] |= 1 << u
        ok = kept_count + 1 < 9 or planar_mask(kept, full)
        if ok and rec(i + 1, kept_count + 1):
            return True
        kept[u] &= ~(1 << v)
        kept[v] &= ~(1 << u)
        return False

    return tuple(chosen) if rec(0, 0) else None


def edge_apicity(g: Graph) -> tuple[int, tuple[Edge, ...]]:
    """(k, F) with F the lexicographically least k-edge set making G - F planar."""
    if planar(g):
        return 0, ()
    cap = 3 * g.n - 6
    k = max(1, g.m - cap)
    while True:
        found = _planarizing_edge_set(g, k)
        if found is not None:
            return k, found
        k += 1


def is_k_edge_apex(g: Graph, k: int) -> bool:
    if planar(g):
        return True
    if k <= 0 or g.m - k > 3 * g.n - 6:
        return False
    if k == 1:
        return bool(apex_edges(g))
    return any(_planarizing_edge_set(g, j) is not None for j in range(max(1, g.m - (3 * g.n - 6)), k + 1))


def _critical_edge_apicity_direct(g: Graph) -> int:
    edges = g.edges()
    k = 0
    while True:
        if all(planar_without(g, f) for f in combinations(edges, k)):
            return k
        k += 1


def planar_without(g: Graph, edges) -> bool:
    rows = list(g.adj)
    for u, v in edges:
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    return planar_mask(rows, g.full_mask)


def critical_edge_apicity(g: Graph) -> int:
    """Smallest k such that every k-edge deletion leaves a planar graph.

    Deleting F leaves a non-planar graph iff some Kuratowski subgraph avoids
    F, so the answer is |E| - s + 1 with s the fewest edges in a non-planar
    subgraph.
    """
    if g.n > KURATOWSKI_SEARCH_LIMIT:
        return _critical_edge_apicity_direct(g)
    size = min_nonplanar_subgraph_size(g)
    if size is None:
        return 0
    return g.m - size[1] + 1


def is_critically_k_edge_apex(g: Graph, k: int) -> bool:
    return critical_edge_apicity(g) <= k


def apicity_profile(g: Graph) -> ApicityProfile:
    kv, sv = vertex_apicity(g)
    ke, se = edge_apicity(g)
    return ApicityProfile(kv, ke, critical_vertex_apicity(g), critical_edge_apicity(g), sv, se)
