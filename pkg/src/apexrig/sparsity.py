"""(k, l)-sparsity counts.

For l < 2k the classical pebble game decides sparsity.  The boundary case
l = 2k (which contains the (3,6) count used for 3-dimensional rigidity) is
outside the matroidal range, so there each edge uv is tested separately: a
maximum flow computes min over X containing u and v of k|X| - i(X), and the
maximal minimiser tells whether the minimum is attained by a set larger
than {u, v}.  The flow is realised as an assignment of edges to endpoints
with vertex capacity k, which keeps everything in plain Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, UnsupportedSizeError, bits, mask_of, popcount
from .planarity import PreconditionError

BRUTE_FORCE_LIMIT = 20
CRITICAL_SET_LIMIT = 12


class UnsupportedParametersError(ValueError):
    pass


@dataclass(frozen=True)
class SparsityParams:
    k: int
    l: int
    min_set_size: int | None = None

    def __post_init__(self):
        if self.k < 1 or self.l < 0:
            raise UnsupportedParametersError("need k >= 1 and l >= 0")
        if self.l > 2 * self.k:
            raise UnsupportedParametersError(f"l = {self.l} exceeds 2k = {2 * self.k}")
        if self.min_set_size is None:
            object.__setattr__(self, "min_set_size", self.k)

    def bound(self, size: int) -> int:
        return self.k * size - self.l


RIGIDITY_3D = SparsityParams(3, 6)
LAMAN = SparsityParams(2, 3)


@dataclass(frozen=True)
class SparsityVerdict:
    sparse: bool
    tight: bool
    violating_set: tuple[int, ...] | None = None


def _verdict(g: Graph, p: SparsityParams, violating: int | None) -> SparsityVerdict:
    if violating is not None:
        return SparsityVerdict(False, False, tuple(bits(violating)))
    tight = g.n >= p.min_set_size and g.m == p.bound(g.n)
    return SparsityVerdict(True, tight, None)


def _edgeless_violation(g: Graph, p: SparsityParams) -> int | None:
    """Smallest counted set whose bound is negative, if one exists."""
    s = p.min_set_size
    if s <= g.n and p.bound(s) < 0:
        return (1 << max(s, 1)) - 1 if s > 0 else 1
    return None


def check_sparsity(g: Graph, p: SparsityParams = RIGIDITY_3D) -> SparsityVerdict:
    """Decide (k, l)-sparsity and tightness, returning a violating set when not sparse."""
    bad = _edgeless_violation(g, p)
    if bad is not None:
        return _verdict(g, p, bad)
    if p.l < 2 * p.k:
        if p.min_set_size > p.k:
            return check_sparsity_bruteforce(g, p)
        return _verdict(g, p, _pebble_game(g, p.k, p.l))
    if p.min_set_size <= 2:
        if g.m:
            u, v = g.edges()[0]
            return _verdict(g, p, (1 << u) | (1 << v))
        return _verdict(g, p, None)
    if p.min_set_size > max(3, p.k):
        return check_sparsity_bruteforce(g, p)
    return _verdict(g, p, _boundary_violation(g, p.k))


def is_sparse(g: Graph, p: SparsityParams = RIGIDITY_3D) -> bool:
    return check_sparsity(g, p).sparse


# ---------------------------------------------------------------------------
# Pebble game (l < 2k)
# ---------------------------------------------------------------------------


def _pebble_game(g: Graph, k: int, l: int) -> int | None:
    n = g.n
    pebbles = [k] * n
    out: list[set[int]] = [set() for _ in range(n)]

    def fetch(root: int, protected: tuple[int, ...]) -> bool:
        # Find a free pebble reachable from root and move it back along the path.
        parent = {root: None}
        queue = [root]
        for x in queue:
            for y in out[x]:
                if y in parent:
                    continue
                parent[y] = x
                if pebbles[y] > 0 and y not in protected:
                    pebbles[y] -= 1
                    while parent[y] is not None:
                        x2 = parent[y]
                        out[x2].discard(y)
                        out[y].add(x2)
                        y = x2
                    pebbles[root] += 1
                    return True
                queue.append(y)
        return False

    def reach(starts: tuple[int, ...]) -> int:
        seen = mask_of(starts)
        queue = list(starts)
        for x in queue:
            for y in out[x]:
                if not seen >> y & 1:
                    seen |= 1 << y
                    queue.append(y)
        return seen

    for u, v in g.edges():
        while pebbles[u] + pebbles[v] < l + 1:
            if pebbles[u] < k and fetch(u, (u, v)):
                continue
            if pebbles[v] < k and fetch(v, (u, v)):
                continue
            return reach((u, v))
        if pebbles[u] > 0:
            pebbles[u] -= 1
            out[u].add(v)
        else:
            pebbles[v] -= 1
            out[v].add(u)
    return None


# ---------------------------------------------------------------------------
# Boundary case l = 2k
# ---------------------------------------------------------------------------


def _core(g: Graph, min_degree: int) -> int:
    alive = g.full_mask
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if popcount(g.adj[v] & alive) < min_degree:
                alive &= ~(1 << v)
                changed = True
    return alive


class _Assignment:
    """Edges assigned to one endpoint each, at most ``cap[v]`` per vertex."""

    def __init__(self, edges: list[tuple[int, int]], cap: list[int]):
        self.edges = edges
        self.cap = cap
        self.head: list[int | None] = [None] * len(edges)
        self.load = [0] * len(cap)
        self.owned: list[set[int]] = [set() for _ in cap]

    def copy(self) -> "_Assignment":
        other = _Assignment.__new__(_Assignment)
        other.edges = self.edges
        other.cap = list(self.cap)
        other.head = list(self.head)
        other.load = list(self.load)
        other.owned = [set(s) for s in self.owned]
        return other

    def _move(self, e: int, v: int) -> None:
        old = self.head[e]
        if old is not None:
            self.owned[old].discard(e)
            self.load[old] -= 1
        self.head[e] = v
        if v is not None:
            self.owned[v].add(e)
            self.load[v] += 1

    def place(self, e: int) -> bool:
        """Assign edge e, re-routing earlier assignments along an augmenting path."""
        x, y = self.edges[e]
        parent: dict[int, tuple[int | None, int]] = {}
        queue = []
        for s in (x, y):
            if self.cap[s] > 0 and s not in parent:
                parent[s] = (None, e)
                queue.append(s)
        for w in queue:
            if self.load[w] < self.cap[w]:
                # unwind: edge via-edge moves to w, the vertex it left takes its predecessor
                node = w
                while True:
                    prev, via = parent[node]
                    self._move(via, node)
                    if prev is None:
                        return True
                    node = prev
            for f in self.owned[w]:
                a, b = self.edges[f]
                z = b if a == w else a
                if z not in parent and self.cap[z] > 0:
                    parent[z] = (w, f)
                    queue.append(z)
        return False

    def blocked_from(self, sources: set[int]) -> int:
        """Vertices that cannot reach spare capacity by re-assigning edges."""
        n = len(self.cap)
        can = set(v for v in range(n) if v not in sources and self.load[v] < self.cap[v])
        changed = True
        while changed:
            changed = False
            for v in range(n):
                if v in can or v in sources:
                    continue
                for f in self.owned[v]:
                    a, b = self.edges[f]
                    z = b if a == v else a
                    if z in can:
                        can.add(v)
                        changed = True
                        break
        return mask_of(v for v in range(n) if v not in can)


def _boundary_violation(g: Graph, k: int) -> int | None:
    core = _core(g, k + 1) if k >= 3 else g.full_mask
    if popcount(core) < 3:
        return None
    verts = list(bits(core))
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[v]) for u, v in g.edges() if core >> u & 1 and core >> v & 1]
    nloc = len(verts)
    base = _Assignment(edges, [k] * nloc)
    for e in range(len(edges)):
        base.place(e)
    for e, (u, v) in enumerate(edges):
        trial = base.copy()
        trial.cap[u] = trial.cap[v] = 0
        evicted = list(trial.owned[u] | trial.owned[v])
        for f in evicted:
            trial._move(f, None)
        unplaced = 0
        for f in range(len(edges)):
            if trial.head[f] is None and not trial.place(f):
                unplaced += 1
        if unplaced >= 2 or unplaced == 1:
            blocked = trial.blocked_from({u, v})
            if unplaced >= 2 or popcount(blocked) > 2:
                return mask_of(verts[i] for i in bits(blocked))
    return None


# ---------------------------------------------------------------------------
# Brute force (oracle and small-graph helpers)
# ---------------------------------------------------------------------------


def induced_counts(g: Graph) -> list[int]:
    """i(X) for every vertex subset X, indexed by bitmask."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise UnsupportedSizeError(f"subset enumeration supports n <= {BRUTE_FORCE_LIMIT}")
    counts = [0] * (1 << g.n)
    for x in range(1, 1 << g.n):
        low = x & -x
        v = low.bit_length() - 1
        rest = x ^ low
        counts[x] = counts[rest] + popcount(g.adj[v] & rest)
    return counts


def check_sparsity_bruteforce(g: Graph, p: SparsityParams = RIGIDITY_3D) -> SparsityVerdict:
    counts = induced_counts(g)
    for x in range(1, 1 << g.n):
        size = popcount(x)
        if size >= p.min_set_size and counts[x] > p.bound(size):
            return _verdict(g, p, x)
    return _verdict(g, p, None)


def maximal_critical_set(g: Graph, x: int, y: int, excluded: int) -> tuple[int, ...] | None:
    """Largest X avoiding ``excluded`` with x, y in X, |X| >= 3 and i(X) = 3|X| - 6.

    In a (3,6)-sparse graph two such sets meeting in at least three vertices
    have a critical union; the union of all critical sets through x and y is
    returned when it is itself critical, otherwise the largest one (ties by
    lexicographic order).
    """
    if g.n > CRITICAL_SET_LIMIT:
        raise UnsupportedSizeError(f"critical sets are computed for n <= {CRITICAL_SET_LIMIT}")
    if x == y:
        raise PreconditionError("x and y must differ")
    if excluded in (x, y):
        raise PreconditionError("the excluded vertex must differ from x and y")
    if not is_sparse(g):
        raise PreconditionError("graph must be (3,6)-sparse")
    counts = induced_counts(g)
    need = (1 << x) | (1 << y)
    found = []
    for s in range(1 << g.n):
        if s & need == need and not s >> excluded & 1:
            size = popcount(s)
            if size >= 3 and counts[s] == 3 * size - 6:
                found.append(s)
    if not found:
        return None
    union = 0
    for s in found:
        union |= s
    if counts[union] == 3 * popcount(union) - 6:
        return tuple(bits(union))
    best = max(found, key=lambda s: (popcount(s), [-v for v in bits(s)]))
    return tuple(bits(best))


def admissible_one_reduction(g: Graph, v: int) -> tuple[int, int] | None:
    """First non-adjacent pair x < y in N(v) with G - v + xy still (3,6)-sparse."""
    if g.degree(v) != 4:
        raise PreconditionError(f"vertex {v} has degree {g.degree(v)}, not 4")
    if not is_sparse(g):
        raise PreconditionError("graph must be (3,6)-sparse")
    others = [w for w in range(g.n) if w != v]
    index = {w: i for i, w in enumerate(others)}
    base = g.delete_vertices([v])
    for a, b in combinations(g.neighbors(v), 2):
        if g.has_edge(a, b):
            continue
        if is_sparse(base.add_edges([(index[a], index[b])])):
            return a, b
    return None
