"""Planarity with certificates, triangulations and their structure trees.

The yes/no decision and the initial rotation system come from the
left-right planarity test shipped with networkx.  Everything built on top of
it lives here: face tracing, Kuratowski witnesses by edge-deletion,
an exhaustive Kuratowski-subdivision search used for exact minimisation,
triangulation completion and the decomposition of a triangulation into
4-connected pieces glued along separating triangles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .graph import (
    Edge,
    Graph,
    GraphError,
    NotSuppressibleError,
    UnsupportedSizeError,
    bits,
    is_isomorphic,
    mask_of,
    popcount,
    suppress_degree_two,
)


class PreconditionError(ValueError):
    """Raised when an operation's documented precondition does not hold."""


# ---------------------------------------------------------------------------
# Fast boolean decision
# ---------------------------------------------------------------------------


def _reduce(adj: Sequence[int], mask: int) -> dict[int, int]:
    """Strip vertices of degree at most two without changing planarity.

    A degree-2 vertex is smoothed into an edge between its neighbours, or
    simply deleted when they are already adjacent.
    """
    nb = {v: adj[v] & mask for v in bits(mask)}
    stack = [v for v, r in nb.items() if popcount(r) <= 2]
    while stack:
        v = stack.pop()
        r = nb.get(v)
        if r is None:
            continue
        d = popcount(r)
        if d > 2:
            continue
        del nb[v]
        bit = 1 << v
        ws = list(bits(r))
        for w in ws:
            nb[w] &= ~bit
        if d == 2:
            a, b = ws
            if nb[a] >> b & 1:
                stack.extend(ws)
            else:
                nb[a] |= 1 << b
                nb[b] |= 1 << a
        else:
            stack.extend(ws)
    return nb


def planar_mask(adj: Sequence[int], mask: int) -> bool:
    """Planarity of the subgraph induced on the vertex set ``mask``."""
    nb = _reduce(adj, mask)
    n = len(nb)
    if n <= 4:
        return True
    m = sum(popcount(r) for r in nb.values()) // 2
    if m > 3 * n - 6:
        return False
    if n == 5:
        return True
    h = nx.Graph()
    h.add_nodes_from(nb)
    h.add_edges_from((v, w) for v, r in nb.items() for w in bits(r) if v < w)
    return nx.check_planarity(h, counterexample=False)[0]


def planar(g: Graph) -> bool:
    return planar_mask(g.adj, g.full_mask)


def planar_without_edges(g: Graph, edges: Iterable[Edge]) -> bool:
    rows = list(g.adj)
    for u, v in edges:
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    return planar_mask(rows, g.full_mask)


# ---------------------------------------------------------------------------
# Embeddings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarEmbedding:
    """Rotation system (clockwise neighbour order per vertex) plus face walks."""

    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rotation(cls, rotation: Sequence[Sequence[int]]) -> "PlanarEmbedding":
        rot = tuple(tuple(r) for r in rotation)
        return cls(rot, trace_faces(rot))

    def euler_characteristic_ok(self, g: Graph) -> bool:
        """n - m + f = 1 + c, where isolated vertices carry one empty face."""
        comps = g.components()
        isolated = sum(1 for v in range(g.n) if g.degree(v) == 0)
        return g.n - g.m + len(self.faces) + isolated == 1 + len(comps)

    def reflected(self) -> "PlanarEmbedding":
        return PlanarEmbedding.from_rotation([tuple(reversed(r)) for r in self.rotation])

    def facial_triangles(self) -> set[frozenset[int]]:
        return {frozenset(f) for f in self.faces if len(f) == 3 and len(set(f)) == 3}


def trace_faces(rotation: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Face walks of a rotation system.

    The dart (u, v) is followed by (v, w) with w the clockwise successor of u
    around v.  Each walk is rotated to start at its smallest vertex and the
    walks are sorted.
    """
    position = [{u: i for i, u in enumerate(r)} for r in rotation]
    seen: set[tuple[int, int]] = set()
    faces = []
    for u in range(len(rotation)):
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                r = rotation[b]
                c = r[(position[b][a] + 1) % len(r)]
                a, b = b, c
            faces.append(_normalize_walk(walk))
    return tuple(sorted(faces))


def _normalize_walk(walk: Sequence[int]) -> tuple[int, ...]:
    k = len(walk)
    return min(tuple(walk[i:]) + tuple(walk[:i]) for i in range(k) if walk[i] == min(walk))


def embed(g: Graph) -> PlanarEmbedding | None:
    """A planar embedding of ``g`` or None when ``g`` is non-planar."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    ok, emb = nx.check_planarity(h)
    if not ok:
        return None
    return PlanarEmbedding.from_rotation([list(emb.neighbors_cw_order(v)) for v in range(g.n)])


def embedding_from_coordinates(g: Graph, coords: Sequence[tuple[float, float]]) -> PlanarEmbedding:
    """Rotation system read off a straight-line drawing (clockwise by angle)."""
    from math import atan2

    rot = []
    for v in range(g.n):
        x0, y0 = coords[v]
        nbrs = g.neighbors(v)
        nbrs.sort(key=lambda w: -atan2(coords[w][1] - y0, coords[w][0] - x0))
        rot.append(nbrs)
    emb = PlanarEmbedding.from_rotation(rot)
    if not emb.euler_characteristic_ok(g):
        raise PreconditionError("the drawing is not a plane embedding (Euler check failed)")
    return emb


def canonical_embedding(emb: PlanarEmbedding) -> PlanarEmbedding:
    """Each rotation starts at its smallest neighbour; the smaller of the two reflections wins."""

    def norm(rot):
        out = []
        for r in rot:
            if not r:
                out.append(())
                continue
            i = r.index(min(r))
            out.append(tuple(r[i:]) + tuple(r[:i]))
        return tuple(out)

    a = norm(emb.rotation)
    b = norm(tuple(tuple(reversed(r)) for r in emb.rotation))
    return PlanarEmbedding.from_rotation(min(a, b))


# ---------------------------------------------------------------------------
# Planarity with witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    embedding: PlanarEmbedding | None = None
    witness: tuple[Edge, ...] | None = None

    def witness_graph(self) -> Graph:
        """The Kuratowski witness relabelled onto its own vertices."""
        if self.witness is None:
            raise PreconditionError("planar graphs carry no witness")
        verts = sorted({v for e in self.witness for v in e})
        index = {v: i for i, v in enumerate(verts)}
        return Graph.from_edges(len(verts), [(index[u], index[v]) for u, v in self.witness])

    def __bool__(self) -> bool:
        return self.planar


def kuratowski_witness(g: Graph) -> tuple[Edge, ...]:
    """Edge set of a K5 or K33 subdivision inside a non-planar graph."""
    rows = list(g.adj)
    full = g.full_mask
    if planar_mask(rows, full):
        raise PreconditionError("graph is planar")
    for u, v in g.edges():
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        if planar_mask(rows, full):
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return tuple((u, v) for u in range(g.n) for v in bits(rows[u]) if u < v)


def is_planar(g: Graph) -> PlanarityResult:
    emb = embed(g)
    if emb is not None:
        return PlanarityResult(True, embedding=emb)
    return PlanarityResult(False, witness=kuratowski_witness(g))


def subdivision_type(g: Graph) -> str:
    """'K5', 'K33' or 'neither'."""
    try:
        h = suppress_degree_two(g)
    except NotSuppressibleError:
        return "neither"
    if h.n == 5 and h.m == 10:
        return "K5"
    if h.n == 6 and h.m == 9 and is_isomorphic(h, _K33):
        return "K33"
    return "neither"


_K33 = Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])


# ---------------------------------------------------------------------------
# Exhaustive Kuratowski subdivision search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KuratowskiSubgraph:
    kind: str                      # "K5" or "K33"
    branch: tuple[int, ...]        # branch vertices (for K33 the two sides in order)
    paths: tuple[tuple[int, ...], ...]  # one vertex path per branch edge

    @property
    def internal(self) -> int:
        return sum(len(p) - 2 for p in self.paths)

    @property
    def edges(self) -> tuple[Edge, ...]:
        out = set()
        for p in self.paths:
            for a, b in zip(p, p[1:]):
                out.add((min(a, b), max(a, b)))
        return tuple(sorted(out))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for p in self.paths for v in p}))


def _branch_configurations(g: Graph):
    degs = g.degrees()
    rich4 = [v for v in range(g.n) if degs[v] >= 4]
    for b in combinations(rich4, 5):
        yield "K5", b, list(combinations(b, 2))
    rich3 = [v for v in range(g.n) if degs[v] >= 3]
    for six in combinations(rich3, 6):
        first = six[0]
        for pair in combinations(six[1:], 2):
            side_a = (first,) + pair
            side_b = tuple(v for v in six if v not in side_a)
            yield "K33", side_a + side_b, [(a, b) for a in side_a for b in side_b]


def _route(g: Graph, pairs: list[Edge], free: int, budget: int):
    """Internally disjoint paths through ``free`` joining every pair.

    Returns (internal vertex count, paths) of a cheapest routing using at most
    ``budget`` internal vertices, or None.
    """
    adj = g.adj
    best: list = [None]
    limit = [budget]

    def paths_from(a: int, b: int, avail: int, room: int):
        # simple paths a -> ... -> b with 1..room internal vertices from avail
        stack = [(a, (a,), avail)]
        while stack:
            x, path, av = stack.pop()
            if len(path) > 1 and adj[x] >> b & 1:
                yield path + (b,)
            if len(path) - 1 < room:
                for y in bits(adj[x] & av):
                    stack.append((y, path + (y,), av & ~(1 << y)))

    def rec(i: int, avail: int, used: int, chosen: list):
        if i == len(pairs):
            if best[0] is None or used < best[0][0]:
                best[0] = (used, list(chosen))
                limit[0] = used - 1
            return
        remaining = len(pairs) - i
        room = limit[0] - used - (remaining - 1)
        if room < 1:
            return
        a, b = pairs[i]
        for p in sorted(paths_from(a, b, avail, room), key=len):
            k = len(p) - 2
            if used + k + remaining - 1 > limit[0]:
                continue
            chosen.append(p)
            rec(i + 1, avail & ~mask_of(p[1:-1]), used + k, chosen)
            chosen.pop()

    rec(0, free, 0, [])
    return best[0]


def search_kuratowski(g: Graph, kind: str | None = None, limit: int = 16) -> dict[str, KuratowskiSubgraph | None]:
    """Cheapest K5- and K33-subdivisions of ``g`` by exhaustive branch assignment.

    "Cheapest" means fewest subdivision vertices.  Entries are None when no
    subdivision of that kind exists.  Exhaustive, so only meant for small
    graphs.
    """
    if g.n > limit:
        raise UnsupportedSizeError(f"exhaustive Kuratowski search supports n <= {limit}")
    best: dict[str, KuratowskiSubgraph | None] = {"K5": None, "K33": None}
    full = g.full_mask
    for k, branch, need in _branch_configurations(g):
        if kind is not None and k != kind:
            continue
        cur = best[k]
        budget = (g.n - len(branch)) if cur is None else cur.internal - 1
        missing = [(a, b) for a, b in need if not g.has_edge(a, b)]
        if len(missing) > budget:
            continue
        res = _route(g, missing, full & ~mask_of(branch), budget)
        if res is None:
            continue
        used, chosen = res
        routed = dict(zip(missing, chosen))
        paths = tuple(routed.get((a, b), (a, b)) for a, b in need)
        best[k] = KuratowskiSubgraph(k, tuple(branch), paths)
    return best


def find_kuratowski(g: Graph) -> KuratowskiSubgraph | None:
    found = search_kuratowski(g)
    options = [s for s in found.values() if s is not None]
    return min(options, key=lambda s: (len(s.edges), s.kind)) if options else None


def min_nonplanar_subgraph_size(g: Graph) -> tuple[int, int] | None:
    """(fewest vertices, fewest edges) over all non-planar subgraphs, or None if planar."""
    found = search_kuratowski(g)
    verts, edges = [], []
    if found["K5"] is not None:
        verts.append(5 + found["K5"].internal)
        edges.append(10 + found["K5"].internal)
    if found["K33"] is not None:
        verts.append(6 + found["K33"].internal)
        edges.append(9 + found["K33"].internal)
    if not verts:
        return None
    return min(verts), min(edges)


# ---------------------------------------------------------------------------
# Triangulations
# ---------------------------------------------------------------------------


def is_triangulation(g: Graph) -> bool:
    return g.n >= 3 and g.m == 3 * g.n - 6 and g.is_connected() and planar(g)


def complete_to_triangulation(g: Graph, emb: PlanarEmbedding | None = None) -> tuple[Graph, list[Edge]]:
    """Add chords inside every face until all faces are triangles.

    Faces are processed in sorted order.  Each face is fanned from its
    smallest vertex; when a chord would duplicate an edge the fan moves on to
    the next vertex of the walk.
    """
    if g.n < 3:
        raise UnsupportedSizeError("triangulations need at least 3 vertices")
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    if emb is None:
        emb = embed(g)
        if emb is None:
            raise PreconditionError("graph is not planar")
    elif not emb.euler_characteristic_ok(g):
        raise PreconditionError("embedding does not belong to this graph")
    rows = list(g.adj)
    added: list[Edge] = []
    for face in emb.faces:
        walk = list(face)
        p = 0
        stalls = 0
        while len(walk) > 3:
            k = len(walk)
            a, c = walk[p % k], walk[(p + 2) % k]
            if a != c and not rows[a] >> c & 1:
                rows[a] |= 1 << c
                rows[c] |= 1 << a
                added.append((min(a, c), max(a, c)))
                del walk[(p + 1) % k]
                if (p + 1) % k < p % k:
                    p -= 1
                stalls = 0
            else:
                p += 1
                stalls += 1
                if stalls > k:
                    raise PreconditionError("face cannot be triangulated without a parallel edge")
    out = Graph(g.n, rows, check=False)
    if out.m != 3 * out.n - 6:
        raise PreconditionError("completion did not reach 3n-6 edges")
    return out, added


def triangles(g: Graph, mask: int | None = None) -> list[tuple[int, int, int]]:
    allowed = g.full_mask if mask is None else mask
    out = []
    for a in bits(allowed):
        na = g.adj[a] & allowed & ~((1 << (a + 1)) - 1)
        for b in bits(na):
            for c in bits(na & g.adj[b] & ~((1 << (b + 1)) - 1)):
                out.append((a, b, c))
    return out


def nonfacial_triangles(t: Graph, emb: PlanarEmbedding | None = None) -> list[tuple[int, int, int]]:
    if emb is None:
        emb = embed(t)
        if emb is None:
            raise PreconditionError("graph is not planar")
    facial = emb.facial_triangles()
    return [tri for tri in triangles(t) if frozenset(tri) not in facial]


@dataclass(frozen=True)
class StructureTree:
    """Blocks of a triangulation joined along separating triangles."""

    blocks: tuple[tuple[int, ...], ...]
    links: tuple[tuple[int, int, tuple[int, int, int]], ...]
    block_edges: tuple[tuple[Edge, ...], ...] = field(repr=False, compare=False, default=())

    def to_json(self) -> str:
        return json.dumps(
            {
                "blocks": [list(b) for b in self.blocks],
                "links": [[i, j, list(t)] for i, j, t in self.links],
            }
        )

    def is_path(self) -> bool:
        deg = [0] * len(self.blocks)
        for i, j, _ in self.links:
            deg[i] += 1
            deg[j] += 1
        return len(self.blocks) == 1 or (max(deg) <= 2 and sorted(deg)[:2] == [1, 1])

    def rejoin(self, n: int) -> Graph:
        """Union of the blocks glued along the link triangles."""
        edges = {e for be in self.block_edges for e in be}
        return Graph.from_edges(n, edges)


def _separating_triangle(t: Graph, piece: int):
    for tri in triangles(t, piece):
        rest = piece & ~mask_of(tri)
        if not rest:
            continue
        start = (rest & -rest).bit_length() - 1
        if t.component_mask(start, rest) != rest:
            return tri
    return None


def structure_tree(t: Graph) -> StructureTree:
    """Split a triangulation along separating triangles until none are left.

    Each resulting block is K4 or a 4-connected triangulation; the links
    record which triangle two blocks share.
    """
    if not is_triangulation(t):
        raise PreconditionError("structure trees are defined for triangulations only")
    pieces = [t.full_mask]
    links: list[list] = []
    i = 0
    while i < len(pieces):
        tri = _separating_triangle(t, pieces[i])
        if tri is None:
            i += 1
            continue
        tmask = mask_of(tri)
        comps = t.components(pieces[i] & ~tmask)
        if len(comps) != 2:
            raise PreconditionError("separating triangle does not split into two sides")
        first, second = comps[0] | tmask, comps[1] | tmask
        new_index = len(pieces)
        pieces[i] = first
        pieces.append(second)
        for link in links:
            for side in (0, 1):
                if link[side] == i:
                    link_tri = mask_of(link[2])
                    link[side] = i if link_tri & first == link_tri else new_index
        links.append([i, new_index, tri])
    order = sorted(range(len(pieces)), key=lambda k: tuple(bits(pieces[k])))
    rank = {k: r for r, k in enumerate(order)}
    blocks = tuple(tuple(bits(pieces[k])) for k in order)
    out_links = tuple(
        sorted((min(rank[a], rank[b]), max(rank[a], rank[b]), tuple(tri)) for a, b, tri in links)
    )
    block_edges = tuple(
        tuple((u, v) for u in b for v in bits(t.adj[u] & mask_of(b)) if u < v) for b in blocks
    )
    return StructureTree(blocks, out_links, block_edges)
