"""Generic rigidity computed at random frameworks over large prime fields.

Ranks are exact over F_p; the only randomness is the choice of framework.
A rank computed this way never exceeds the generic rank, and falls short
of it with probability at most |E|/p per trial (Schwartz-Zippel), so
"independent" and "rigid" verdicts are certain while "dependent" and
"flexible" verdicts carry a failure bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .config import RunConfig, derive_seed
from .graph import Edge, Graph, connectivity, write_graph6
from .linalg import nullspace_mod, rank_exact, rank_mod, transpose
from .planarity import PreconditionError, planar


@dataclass(frozen=True)
class Framework:
    graph: Graph
    d: int
    coords: tuple[tuple[int, ...], ...]
    prime: int
    seed: int


@dataclass(frozen=True)
class Stress:
    values: tuple[int, ...]
    framework: Framework = field(repr=False)

    @property
    def support(self) -> tuple[Edge, ...]:
        edges = self.framework.graph.edges()
        return tuple(e for e, w in zip(edges, self.values) if w)


@dataclass(frozen=True)
class RankResult:
    rank: int
    dim: int
    trials: int
    primes: tuple[int, ...]
    seed: int
    per_prime: tuple[int, ...]
    maxwell_cap: int
    failure_bound: float

    @property
    def stable(self) -> bool:
        return len(set(self.per_prime)) == 1


def rigid_target(n: int, d: int) -> int:
    """Rank of a generic rigid framework on n vertices in dimension d."""
    if n >= d + 2:
        return d * n - comb(d + 1, 2)
    return comb(n, 2)


def maxwell_cap(g: Graph, d: int) -> int:
    return min(g.m, rigid_target(g.n, d))


# ---------------------------------------------------------------------------
# Frameworks and matrices
# ---------------------------------------------------------------------------


def random_generic_framework(g: Graph, d: int, prime: int, seed: int) -> Framework:
    """Coordinates uniform in F_p from a generator seeded by (seed, prime, d)."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    rng = random.Random(derive_seed("framework", seed, prime, d))
    while True:
        coords = tuple(tuple(rng.randrange(prime) for _ in range(d)) for _ in range(g.n))
        if len(set(coords)) == g.n:
            return Framework(g, d, coords, prime, seed)


def rigidity_matrix(f: Framework) -> list[list[int]]:
    d, p = f.d, f.prime
    rows = []
    for u, v in f.graph.edges():
        row = [0] * (d * f.graph.n)
        for k in range(d):
            x = (f.coords[u][k] - f.coords[v][k]) % p
            row[d * u + k] = x
            row[d * v + k] = (-x) % p
        rows.append(row)
    return rows


def framework_rank(f: Framework) -> int:
    return rank_mod(rigidity_matrix(f), f.prime)


def _trial_seed(cfg: RunConfig, purpose: str, trial: int) -> int:
    return derive_seed(cfg.seed, purpose, trial)


def _frameworks(g: Graph, d: int, cfg: RunConfig, purpose: str):
    for p in cfg.primes:
        for t in range(cfg.trials):
            yield p, t, random_generic_framework(g, d, p, _trial_seed(cfg, purpose, t))


# ---------------------------------------------------------------------------
# Rank and the matroid predicates
# ---------------------------------------------------------------------------


def generic_rank(g: Graph, d: int, cfg: RunConfig | None = None) -> RankResult:
    """Maximum rigidity-matrix rank over cfg.trials frameworks at every prime."""
    cfg = cfg or RunConfig()
    cap = maxwell_cap(g, d)
    per_prime = []
    for p in cfg.primes:
        best = 0
        for t in range(cfg.trials):
            f = random_generic_framework(g, d, p, _trial_seed(cfg, "rank", t))
            best = max(best, framework_rank(f))
            if best == cap:
                break
        per_prime.append(best)
    rank = max(per_prime)
    bound = 0.0
    if rank < g.m:
        bound = 1.0
        for p in cfg.primes:
            bound *= (g.m / p) ** cfg.trials
    return RankResult(rank, d, cfg.trials, tuple(cfg.primes), cfg.seed, tuple(per_prime), cap, bound)


def is_independent(g: Graph, d: int, cfg: RunConfig | None = None) -> bool:
    if g.m == 0:
        return True
    if d == 3 and planar(g):
        return True
    if g.m > maxwell_cap(g, d):
        return False
    return generic_rank(g, d, cfg).rank == g.m


def is_rigid(g: Graph, d: int, cfg: RunConfig | None = None) -> bool:
    target = rigid_target(g.n, d)
    if g.m < target:
        return False
    return generic_rank(g, d, cfg).rank == target


def is_minimally_rigid(g: Graph, d: int, cfg: RunConfig | None = None) -> bool:
    return g.m == rigid_target(g.n, d) and is_independent(g, d, cfg)


def _best_framework(g: Graph, d: int, cfg: RunConfig) -> tuple[Framework, int]:
    best = None
    for _, _, f in _frameworks(g, d, cfg, "rank"):
        r = framework_rank(f)
        if best is None or r > best[1]:
            best = (f, r)
            if r == maxwell_cap(g, d):
                break
    return best


def stress_basis(f: Framework) -> list[Stress]:
    """Basis of the left null space of the rigidity matrix."""
    rows = rigidity_matrix(f)
    if not rows:
        return []
    ncols = len(rows)
    basis = nullspace_mod(transpose(rows, len(rows[0])), ncols, f.prime)
    return [Stress(tuple(v), f) for v in basis]


def is_circuit(g: Graph, d: int, cfg: RunConfig | None = None) -> bool:
    """True if the whole edge set is a circuit of the rigidity matroid."""
    cfg = cfg or RunConfig()
    if g.m == 0:
        return False
    f, r = _best_framework(g, d, cfg)
    if r != g.m - 1:
        return False
    (omega,) = stress_basis(f)
    return all(omega.values)


def unique_circuit(g: Graph, d: int, cfg: RunConfig | None = None) -> list[Edge]:
    """Support of the one-dimensional stress space of a graph with rank |E| - 1."""
    cfg = cfg or RunConfig()
    f, r = _best_framework(g, d, cfg)
    if r != g.m - 1:
        raise PreconditionError(f"rank deficit is {g.m - r}, not 1")
    (omega,) = stress_basis(f)
    return list(omega.support)


def stress_matrix(f: Framework, omega: Stress) -> list[list[int]]:
    if omega.framework is not f and omega.framework != f:
        raise ValueError("stress belongs to a different framework")
    n, p = f.graph.n, f.prime
    mat = [[0] * n for _ in range(n)]
    for (u, v), w in zip(f.graph.edges(), omega.values):
        if w:
            mat[u][v] = (mat[u][v] - w) % p
            mat[v][u] = (mat[v][u] - w) % p
            mat[u][u] = (mat[u][u] + w) % p
            mat[v][v] = (mat[v][v] + w) % p
    return mat


def stress_matrix_rank(f: Framework, omega: Stress) -> int:
    return rank_mod(stress_matrix(f, omega), f.prime)


def random_stress(basis: list[Stress], rng: random.Random) -> Stress:
    f = basis[0].framework
    p = f.prime
    vals = [0] * len(basis[0].values)
    for s in basis:
        c = rng.randrange(1, p)
        vals = [(a + c * b) % p for a, b in zip(vals, s.values)]
    return Stress(tuple(vals), f)


# ---------------------------------------------------------------------------
# Global rigidity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GlobalRigidityVerdict:
    verdict: str          # "yes", "no" or "undecided"
    rule: str
    anomaly: bool = False

    @property
    def globally_rigid(self) -> bool | None:
        return {"yes": True, "no": False}.get(self.verdict)


def _redundantly_rigid(g: Graph, d: int, cfg: RunConfig) -> bool:
    target = rigid_target(g.n, d)
    if g.m - 1 < target:
        return False
    covered = [False] * g.m
    rigid = False
    for _, _, f in _frameworks(g, d, cfg, "rank"):
        if framework_rank(f) != target:
            continue
        rigid = True
        for s in stress_basis(f):
            for i, w in enumerate(s.values):
                if w:
                    covered[i] = True
        if all(covered):
            return True
    return rigid and all(covered)


def hendrickson_check(g: Graph, d: int, cfg: RunConfig | None = None) -> tuple[bool, bool]:
    """((d+1)-connected, redundantly rigid).

    An edge e leaves G - e rigid exactly when some equilibrium stress is
    non-zero on e, so redundant rigidity is read off the union of stress
    supports at a rigid generic framework.
    """
    cfg = cfg or RunConfig()
    return connectivity(g) >= d + 1, _redundantly_rigid(g, d, cfg)


def is_globally_rigid_randomized(g: Graph, d: int, cfg: RunConfig | None = None) -> GlobalRigidityVerdict:
    cfg = cfg or RunConfig()
    n = g.n
    if n <= d + 1:
        return GlobalRigidityVerdict("yes" if g.is_complete() else "no", "small-complete")
    if connectivity(g) < d + 1:
        return GlobalRigidityVerdict("no", "hendrickson-connectivity")
    if not _redundantly_rigid(g, d, cfg):
        return GlobalRigidityVerdict("no", "hendrickson-redundancy")
    target = n - d - 1
    for p, t, f in _frameworks(g, d, cfg, "stress"):
        basis = stress_basis(f)
        if not basis:
            continue
        rng = random.Random(derive_seed(cfg.seed, "stress-combination", p, t))
        r = stress_matrix_rank(f, random_stress(basis, rng))
        if r >= target:
            return GlobalRigidityVerdict("yes", "full-rank-stress", anomaly=r > target)
    return GlobalRigidityVerdict("no", "stress-rank-whp")


def is_globally_rigid(g: Graph, d: int, cfg: RunConfig | None = None) -> bool:
    return is_globally_rigid_randomized(g, d, cfg).verdict == "yes"


# ---------------------------------------------------------------------------
# Generic completion rank
# ---------------------------------------------------------------------------


def gcr(g: Graph, cfg: RunConfig | None = None) -> int:
    """1 + the smallest dimension in which g is independent.

    Dimension 0 is admitted for edgeless graphs, so gcr(K1) = 1 like every
    other complete graph.
    """
    if g.m == 0:
        return 1
    d = 1
    while not is_independent(g, d, cfg):
        d += 1
    return d + 1


# ---------------------------------------------------------------------------
# Exact rational oracle
# ---------------------------------------------------------------------------


def exact_rank(g: Graph, d: int, seed: int = 0, spread: int = 10**6) -> int:
    """Rank over Q at random integer coordinates in [-spread, spread] (test oracle)."""
    if g.n > 10:
        raise ValueError("the rational oracle is meant for n <= 10")
    rng = random.Random(derive_seed("exact", seed, d, write_graph6(g)))
    coords = [[rng.randint(-spread, spread) for _ in range(d)] for _ in range(g.n)]
    rows = []
    for u, v in g.edges():
        row = [0] * (d * g.n)
        for k in range(d):
            x = coords[u][k] - coords[v][k]
            row[d * u + k] = x
            row[d * v + k] = -x
        rows.append(row)
    return rank_exact(rows)
