"""Immutable simple graphs on at most 64 vertices.

Adjacency is stored as one integer bitset per vertex.  The module also
provides graph6 serialization, canonical labelling for small graphs, an
isomorph-free enumerator of connected graphs and a few elementary queries
that every other module relies on.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64
CANONICAL_LIMIT = 10
ENUMERATION_LIMIT = 8

Edge = tuple[int, int]


class GraphError(ValueError):
    """Base class for malformed graph input."""


class Graph6Error(GraphError):
    """Raised when a graph6 record cannot be decoded."""


class BadCharacterError(Graph6Error):
    pass


class TruncatedError(Graph6Error):
    pass


class TooManyVerticesError(Graph6Error):
    pass


class UnsupportedSizeError(GraphError):
    """Raised when an operation is asked to work beyond its size limit."""


class NotSuppressibleError(GraphError):
    """Suppressing ``vertex`` would create a loop or a parallel edge."""

    def __init__(self, vertex: int):
        super().__init__(f"suppressing vertex {vertex} creates a parallel edge or loop")
        self.vertex = vertex


def popcount(x: int) -> int:
    return x.bit_count()


def bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# ---------------------------------------------------------------------------
# Graph value type
# ---------------------------------------------------------------------------


class Graph:
    """Simple undirected graph with bitset adjacency rows.

    Instances are immutable and hashable; every modifying method returns a
    new graph.
    """

    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, adj: Sequence[int] | None = None, *, check: bool = True):
        if not 0 <= n <= MAX_VERTICES:
            raise UnsupportedSizeError(f"graphs must have at most {MAX_VERTICES} vertices, got {n}")
        rows = tuple(adj) if adj is not None else (0,) * n
        if len(rows) != n:
            raise GraphError("adjacency must have one row per vertex")
        if check:
            full = (1 << n) - 1
            for i, row in enumerate(rows):
                if row & ~full:
                    raise GraphError(f"row {i} mentions a vertex outside 0..{n - 1}")
                if row >> i & 1:
                    raise GraphError(f"loop at vertex {i}")
                for j in bits(row):
                    if not rows[j] >> i & 1:
                        raise GraphError(f"adjacency is not symmetric at ({i}, {j})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", rows)
        object.__setattr__(self, "_m", sum(popcount(r) for r in rows) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    # -- basic queries ----------------------------------------------------

    @property
    def m(self) -> int:
        return self._m

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def induced_edge_count(self, mask: int) -> int:
        return sum(popcount(self.adj[v] & mask) for v in bits(mask)) // 2

    # -- derived graphs -----------------------------------------------------

    def add_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = list(self.adj)
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows, check=False)

    def remove_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = list(self.adj)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, rows, check=False)

    def add_vertex(self, neighbors: Iterable[int] = ()) -> "Graph":
        n = self.n
        rows = list(self.adj) + [0]
        for u in neighbors:
            rows[u] |= 1 << n
            rows[n] |= 1 << u
        return Graph(n + 1, rows, check=False)

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled in increasing order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            r = 0
            for w in bits(self.adj[v]):
                if w in index:
                    r |= 1 << index[w]
            rows.append(r)
        return Graph(len(keep), rows, check=False)

    def delete_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.induced_subgraph(v for v in range(self.n) if v not in drop)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            r = 0
            for w in bits(self.adj[v]):
                r |= 1 << perm[w]
            rows[perm[v]] = r
        return Graph(self.n, rows, check=False)

    # -- connectivity helpers -----------------------------------------------

    def component_mask(self, start: int, within: int | None = None) -> int:
        allowed = self.full_mask if within is None else within
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def components(self, within: int | None = None) -> list[int]:
        rest = self.full_mask if within is None else within
        comps = []
        while rest:
            v = (rest & -rest).bit_length() - 1
            c = self.component_mask(v, rest)
            comps.append(c)
            rest &= ~c
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or self.component_mask(0) == self.full_mask

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, graph6={write_graph6(self)!r})"


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

_HEADER = ">>graph6<<"


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 record (an optional ``>>graph6<<`` header is allowed)."""
    s = line.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise TruncatedError("empty graph6 record")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise BadCharacterError(f"invalid graph6 character {ch!r} at position {pos}")
    data = [ord(ch) - 63 for ch in s]
    if data[0] == 63:
        if len(data) < 4:
            raise TruncatedError("truncated vertex count")
        if data[1] == 63:
            raise TooManyVerticesError("graph6 record declares more than 258047 vertices")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    if n > MAX_VERTICES:
        raise TooManyVerticesError(f"graph has {n} vertices; the limit is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise TruncatedError(f"expected {need} data characters, found {len(body)}")
    if len(body) > need:
        raise BadCharacterError(f"{len(body) - need} trailing characters after the bit vector")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, rows, check=False)


def write_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    else:
        out = ["~", chr((n >> 12 & 63) + 63), chr((n >> 6 & 63) + 63), chr((n & 63) + 63)]
    acc = 0
    count = 0
    adj = g.adj
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | (adj[i] >> j & 1)
            count += 1
            if count == 6:
                out.append(chr(acc + 63))
                acc = count = 0
    if count:
        out.append(chr((acc << (6 - count)) + 63))
    return "".join(out)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for every non-blank record of a stream."""
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            yield lineno, parse_graph6(line)
        except Graph6Error as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None


# ---------------------------------------------------------------------------
# Canonical labelling (individualization-refinement with automorphism pruning)
# ---------------------------------------------------------------------------


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Refine an ordered partition until it is equitable.

    Cells split by neighbour counts into each splitter cell, new pieces sorted
    by that count.  Every step depends only on the partition structure, so
    the procedure commutes with relabelling.
    """
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for s in range(len(cells)):
            smask = mask_of(cells[s])
            out: list[list[int]] = []
            split_here = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault(popcount(adj[v] & smask), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                else:
                    split_here = True
                    out.extend(groups[k] for k in sorted(groups))
            if split_here:
                cells = out
                changed = True
                break
    return cells


def _leaf_code(adj: Sequence[int], order: Sequence[int]) -> int:
    code = 0
    n = len(order)
    for j in range(1, n):
        row = adj[order[j]]
        for i in range(j):
            code = (code << 1) | (row >> order[i] & 1)
    return code


def canonical_labelling(g: Graph) -> list[int]:
    """Return ``order`` such that ``order[i]`` is the vertex placed at position i.

    Relabelling ``g`` by this order gives a representative that depends only
    on the isomorphism class of ``g``.
    """
    n = g.n
    if n > CANONICAL_LIMIT:
        raise UnsupportedSizeError(f"canonical labelling supports n <= {CANONICAL_LIMIT}, got {n}")
    if n == 0:
        return []
    adj = g.adj
    best_code = -1
    best_order: list[int] = []
    autos: list[list[int]] = []

    def search(cells: list[list[int]], prefix: list[int]) -> None:
        nonlocal best_code, best_order
        if all(len(c) == 1 for c in cells):
            order = [c[0] for c in cells]
            code = _leaf_code(adj, order)
            if code > best_code:
                best_code, best_order = code, order
            elif code == best_code:
                # order and best_order induce the same labelled graph
                gamma = [0] * n
                for a, b in zip(order, best_order):
                    gamma[a] = b
                autos.append(gamma)
            return
        target = next(i for i, c in enumerate(cells) if len(c) > 1)
        tried: list[int] = []
        for v in cells[target]:
            if tried and _same_orbit(v, tried, prefix, autos):
                continue
            tried.append(v)
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(adj, child), prefix + [v])

    degree_cells: dict[int, list[int]] = {}
    for v in range(n):
        degree_cells.setdefault(popcount(adj[v]), []).append(v)
    start = [degree_cells[k] for k in sorted(degree_cells)]
    search(_refine(adj, start), [])
    return best_order


def _same_orbit(v: int, tried: list[int], prefix: list[int], autos: list[list[int]]) -> bool:
    """True if ``v`` is mapped onto an already tried vertex by automorphisms fixing ``prefix``."""
    usable = [a for a in autos if all(a[p] == p for p in prefix)]
    if not usable:
        return False
    orbit = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for a in usable:
            y = a[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return any(t in orbit for t in tried)


def canonical_form(g: Graph) -> Graph:
    order = canonical_labelling(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def canonical_code(g: Graph) -> bytes:
    """Byte string that is equal for two graphs iff they are isomorphic."""
    return write_graph6(canonical_form(g)).encode("ascii")


# ---------------------------------------------------------------------------
# Enumeration of connected graphs
# ---------------------------------------------------------------------------


def _non_cut_vertices(g: Graph) -> list[int]:
    full = g.full_mask
    out = []
    for v in range(g.n):
        rest = full & ~(1 << v)
        if rest == 0:
            out.append(v)
            continue
        start = (rest & -rest).bit_length() - 1
        if g.component_mask(start, rest) == rest:
            out.append(v)
    return out


def _enumerate_level(parents: list[Graph], n: int) -> list[Graph]:
    seen: dict[bytes, Graph] = {}
    new = n - 1
    for parent in parents:
        for subset in range(1, 1 << new):
            child = parent.add_vertex(bits(subset))
            # Keep only children whose new vertex has maximum degree among the
            # non-cut vertices; every class still has such a representative.
            d_new = popcount(subset)
            degs = child.degrees()
            if any(degs[w] > d_new for w in range(new)):
                if any(degs[w] > d_new for w in _non_cut_vertices(child)):
                    continue
            code = canonical_code(child)
            if code not in seen:
                seen[code] = child
    return [canonical_form(seen[c]) for c in sorted(seen)]


_ENUM_CACHE: dict[int, list[Graph]] = {}


def enumerate_connected(n: int) -> Iterator[Graph]:
    """Yield one canonical representative per class of connected graphs on n vertices.

    The order is deterministic: representatives are sorted by canonical code.
    """
    if not 1 <= n <= ENUMERATION_LIMIT:
        raise UnsupportedSizeError(
            f"the built-in enumerator supports 1 <= n <= {ENUMERATION_LIMIT}; "
            "larger censuses must be supplied as graph6 files"
        )
    if 1 not in _ENUM_CACHE:
        _ENUM_CACHE[1] = [Graph(1)]
    for k in range(2, n + 1):
        if k not in _ENUM_CACHE:
            _ENUM_CACHE[k] = _enumerate_level(_ENUM_CACHE[k - 1], k)
    yield from _ENUM_CACHE[n]


# Counts of connected graphs by vertex number (OEIS A001349), used to check
# that an ingested census is complete.
CONNECTED_GRAPH_COUNTS = {
    1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117,
    9: 261080, 10: 11716571, 11: 1006700565,
}


# ---------------------------------------------------------------------------
# Elementary queries
# ---------------------------------------------------------------------------


def _local_connectivity(g: Graph, s: int, t: int) -> int:
    """Maximum number of internally vertex-disjoint s-t paths (s, t non-adjacent)."""
    # Node 2v is the entry copy of v, 2v+1 its exit copy.
    cap: dict[tuple[int, int], int] = {}
    nbrs: dict[int, set[int]] = {}
    big = g.n

    def arc(a: int, b: int, c: int) -> None:
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), 0)
        nbrs.setdefault(a, set()).add(b)
        nbrs.setdefault(b, set()).add(a)

    for v in range(g.n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent = {source: source}
        queue = [source]
        for a in queue:
            if a == sink:
                break
            for b in nbrs.get(a, ()):
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return flow
        b = sink
        while b != source:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1


def connectivity(g: Graph) -> int:
    """Vertex connectivity; n-1 for complete graphs and 0 when disconnected."""
    n = g.n
    if n <= 1:
        return 0
    if not g.is_connected():
        return 0
    if g.is_complete():
        return n - 1
    best = n - 1
    # Even's scheme: some vertex among the first best+1 avoids a minimum cut.
    for i in range(n):
        if i > best:
            break
        for j in range(i + 1, n):
            if not g.has_edge(i, j):
                best = min(best, _local_connectivity(g, i, j))
    return best


def has_clique(g: Graph, k: int) -> bool:
    if k <= 0:
        return True
    adj = g.adj

    def grow(cand: int, need: int) -> bool:
        if need == 0:
            return True
        if popcount(cand) < need:
            return False
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if grow(cand & adj[v], need - 1):
                return True
            if popcount(cand) < need:
                return False
        return False

    return grow(g.full_mask, k)


def clique_number(g: Graph) -> int:
    k = 1 if g.n else 0
    while k < g.n and has_clique(g, k + 1):
        k += 1
    return k


def suppress_degree_two(g: Graph) -> Graph:
    """Replace degree-2 vertices by edges until none remain.

    Raises NotSuppressibleError carrying the vertex whose suppression would
    create a parallel edge.
    """
    nbr = {v: set(bits(g.adj[v])) for v in range(g.n)}
    while True:
        v = next((x for x in sorted(nbr) if len(nbr[x]) == 2), None)
        if v is None:
            break
        a, b = sorted(nbr[v])
        if b in nbr[a]:
            raise NotSuppressibleError(v)
        nbr[a].discard(v)
        nbr[b].discard(v)
        nbr[a].add(b)
        nbr[b].add(a)
        del nbr[v]
    keep = sorted(nbr)
    index = {v: i for i, v in enumerate(keep)}
    return Graph.from_edges(len(keep), [(index[u], index[w]) for u in keep for w in nbr[u] if u < w])


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_code(g) == canonical_code(h)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))
