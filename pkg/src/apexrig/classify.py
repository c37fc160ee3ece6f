"""Theorem-rule engine: per-graph reports, verification runs and census tables.

Each rule has a class predicate and a prediction.  Where the class holds,
the prediction is compared with what the rigidity computation says; any
disagreement is a counterexample and is reported, never dropped.  Rules of
kind ``control`` are deliberately false statements used to show that the
harness can fail.
"""

from __future__ import annotations

import json
import multiprocessing
import time
from dataclasses import asdict, dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .apicity import (
    KURATOWSKI_SEARCH_LIMIT,
    _planarizing_edge_set,
    apex_edges,
    apex_vertices,
    critical_edge_apicity,
    critical_vertex_apicity,
    edge_apicity,
    is_critically_k_apex,
    vertex_apicity,
)
from .config import RunConfig
from .graph import (
    CONNECTED_GRAPH_COUNTS,
    Graph,
    canonical_code,
    clique_number,
    connectivity,
    has_clique,
    parse_graph6,
    write_graph6,
)
from .planarity import is_triangulation, planar
from .rigidity import (
    GlobalRigidityVerdict,
    RankResult,
    generic_rank,
    is_circuit,
    is_globally_rigid_randomized,
    maxwell_cap,
    rigid_target,
)
from .sparsity import SparsityVerdict, check_sparsity


SMALL_EDGE_APICITY = 3
VERTEX_APICITY_LIMIT = 12
DUPLICATE_CHECK_LIMIT = 8


class UnknownRuleError(KeyError):
    pass


class RuleNotApplicableError(ValueError):
    pass


class IncompleteCensusError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Lazily computed per-graph facts
# ---------------------------------------------------------------------------


class GraphFacts:
    """Every quantity a rule may ask about, computed on first use and cached."""

    def __init__(self, g: Graph, cfg: RunConfig | None = None):
        self.g = g
        self.cfg = cfg or RunConfig()
        self._independent: dict[int, bool] = {}

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def m(self) -> int:
        return self.g.m

    @cached_property
    def planar(self) -> bool:
        return planar(self.g)

    # -- apex classes --------------------------------------------------------

    @cached_property
    def apex_vertices(self) -> list[int]:
        return list(range(self.n)) if self.planar else apex_vertices(self.g)

    @cached_property
    def apex(self) -> bool:
        return self.planar or bool(self.apex_vertices)

    @cached_property
    def critically_apex(self) -> bool:
        return len(self.apex_vertices) == self.n

    @cached_property
    def critically_2_apex(self) -> bool:
        return self.planar or is_critically_k_apex(self.g, 2)

    @cached_property
    def apex_edges(self) -> list[tuple[int, int]]:
        return self.g.edges() if self.planar else apex_edges(self.g)

    @cached_property
    def edge_apex(self) -> bool:
        return self.planar or bool(self.apex_edges)

    @cached_property
    def critically_edge_apex(self) -> bool:
        return len(self.apex_edges) == self.m

    def edge_apicity_at_most(self, cap: int) -> int | None:
        """Exact edge apicity when it is at most ``cap``, otherwise None."""
        if cap > SMALL_EDGE_APICITY or "edge_apicity" in self.__dict__:
            return self.edge_apicity if self.edge_apicity <= cap else None
        k = self._small_edge_apicity
        return k if k is not None and k <= cap else None

    @cached_property
    def _small_edge_apicity(self) -> int | None:
        if self.planar:
            return 0
        if self.edge_apex:
            return 1
        for k in range(max(2, self.m - (3 * self.n - 6)), SMALL_EDGE_APICITY + 1):
            if _planarizing_edge_set(self.g, k) is not None:
                return k
        return None

    @cached_property
    def _edge_apicity_pair(self) -> tuple[int, tuple]:
        return edge_apicity(self.g)

    @cached_property
    def edge_apicity(self) -> int:
        return self._edge_apicity_pair[0]

    @cached_property
    def edge_apicity_witness(self) -> tuple:
        return self._edge_apicity_pair[1]

    @cached_property
    def vertex_apicity(self) -> tuple[int, tuple[int, ...]]:
        return vertex_apicity(self.g)

    @cached_property
    def critical_vertex_apicity(self) -> int:
        return critical_vertex_apicity(self.g)

    @cached_property
    def critical_edge_apicity(self) -> int | None:
        if self.planar:
            return 0
        if self.n > KURATOWSKI_SEARCH_LIMIT:
            return None
        return critical_edge_apicity(self.g)

    # -- counts and structure --------------------------------------------

    @cached_property
    def sparsity(self) -> SparsityVerdict:
        return check_sparsity(self.g)

    @property
    def sparse(self) -> bool:
        return self.sparsity.sparse

    @property
    def tight(self) -> bool:
        return self.sparsity.tight

    @cached_property
    def connectivity(self) -> int:
        return connectivity(self.g)

    @cached_property
    def clique_number(self) -> int:
        return clique_number(self.g)

    @cached_property
    def has_k6(self) -> bool:
        return has_clique(self.g, 6)

    @cached_property
    def is_k5(self) -> bool:
        return self.n == 5 and self.g.is_complete()

    @cached_property
    def is_cone_of_wheel(self) -> bool:
        return is_cone_of_wheel(self.g)

    # -- rigidity ------------------------------------------------------------

    @cached_property
    def rank3(self) -> RankResult:
        return generic_rank(self.g, 3, self.cfg)

    def independent(self, d: int) -> bool:
        if d not in self._independent:
            if self.m == 0:
                val = True
            elif d == 3 and self.planar:
                val = True
            elif self.m > maxwell_cap(self.g, d):
                val = False
            elif d == 3:
                val = self.rank3.rank == self.m
            else:
                val = generic_rank(self.g, d, self.cfg).rank == self.m
            self._independent[d] = val
        return self._independent[d]

    @property
    def independent3(self) -> bool:
        return self.independent(3)

    @cached_property
    def rigid3(self) -> bool:
        target = rigid_target(self.n, 3)
        if self.m < target:
            return False
        if self.planar and self.m == target:
            return True
        return self.rank3.rank == target

    @cached_property
    def minimally_rigid3(self) -> bool:
        return self.m == rigid_target(self.n, 3) and self.rigid3

    @cached_property
    def circuit3(self) -> bool:
        if self.planar or self.m == 0:
            return False
        return is_circuit(self.g, 3, self.cfg)

    @cached_property
    def global_rigidity(self) -> GlobalRigidityVerdict:
        return is_globally_rigid_randomized(self.g, 3, self.cfg)

    @property
    def globally_rigid3(self) -> bool:
        return self.global_rigidity.verdict == "yes"

    @cached_property
    def gcr(self) -> int:
        if self.m == 0:
            return 1
        d = 1
        while not self.independent(d):
            d += 1
        return d + 1


def is_cone_of_wheel(g: Graph) -> bool:
    """True if g = cone(wheel) for a wheel with a rim of at least 3 vertices."""
    n = g.n
    if n < 5 or g.m != 3 * (n - 2) + 1:
        return False
    for apex in range(n):
        if g.degree(apex) != n - 1:
            continue
        rest = g.delete_vertices([apex])
        for hub in range(rest.n):
            if rest.degree(hub) != rest.n - 1:
                continue
            rim = rest.delete_vertices([hub])
            if rim.n >= 3 and set(rim.degrees()) == {2} and rim.is_connected():
                return True
    return False


# ---------------------------------------------------------------------------
# Rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Prediction:
    rule: str
    kind: str
    status: str  # "agree", "disagree" or "conjectured"
    predicted: object
    computed: object
    note: str = ""

    @property
    def agrees(self) -> bool:
        return self.predicted == self.computed

    @property
    def counterexample(self) -> bool:
        return self.status == "disagree"

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "kind": self.kind,
            "status": self.status,
            "predicted": _jsonable(self.predicted),
            "computed": _jsonable(self.computed),
            "agrees": self.agrees,
            "note": self.note,
        }


@dataclass(frozen=True)
class Rule:
    id: str
    kind: str  # "theorem" or "control"
    summary: str
    evaluate: Callable[[GraphFacts], Prediction | None]


def _compare(rule_id: str, kind: str, predicted, computed, note: str = "", conjectured: bool = False) -> Prediction:
    if conjectured:
        status = "conjectured"
    else:
        status = "agree" if predicted == computed else "disagree"
    return Prediction(rule_id, kind, status, predicted, computed, note)


def _edge_apex_independence(f: GraphFacts):
    if not f.edge_apex:
        return None
    return _compare("edge-apex-independence", "theorem", f.sparse, f.independent3)


def _edge_apex_global_rigidity(f: GraphFacts):
    if f.n < 5 or not f.edge_apex:
        return None
    predicted = f.m == 3 * f.n - 5 and f.connectivity >= 4
    return _compare(
        "edge-apex-global-rigidity", "theorem", predicted, f.globally_rigid3, f.global_rigidity.rule
    )


def _critically_apex_independence(f: GraphFacts):
    if not f.critically_apex:
        return None
    return _compare("critically-apex-independence", "theorem", f.sparse, f.independent3)


def _critically_2_apex_independence(f: GraphFacts):
    if not f.critically_2_apex:
        return None
    return _compare("critically-2-apex-independence", "theorem", f.sparse, f.independent3)


def _critically_k_edge_apex_independence(f: GraphFacts):
    k = f.critical_edge_apicity
    if k is None or not (k <= 7 or f.n >= k + 5):
        return None
    return _compare("critically-k-edge-apex-independence", "theorem", f.sparse, f.independent3, f"k={k}")


def _critically_edge_apex_independence(f: GraphFacts):
    if not f.critically_edge_apex:
        return None
    # K5 is the one dependent member; no non-planar member is minimally rigid.
    predicted = (not f.is_k5, False)
    computed = (f.independent3, (not f.planar) and f.minimally_rigid3)
    return _compare("critically-edge-apex-independence", "theorem", predicted, computed)


def _critically_edge_apex_global_rigidity(f: GraphFacts):
    if f.n < 5 or not f.critically_edge_apex:
        return None
    return _compare("critically-edge-apex-global-rigidity", "theorem", f.is_k5, f.globally_rigid3)


def _critically_apex_global_rigidity(f: GraphFacts):
    if f.n < 5 or not f.critically_apex:
        return None
    return _compare("critically-apex-global-rigidity", "theorem", f.is_cone_of_wheel, f.globally_rigid3)


LOW_APEX_DEGREES = (2, 3, 4)


def _apex_low_degree_independence(f: GraphFacts):
    if not f.apex:
        return None
    degrees = {f.g.degree(v) for v in f.apex_vertices}
    covered = any(d in LOW_APEX_DEGREES or d == f.n - 1 for d in degrees)
    if covered:
        return _compare("apex-low-degree-independence", "theorem", f.sparse, f.independent3)
    if 5 in degrees:
        return _compare(
            "apex-low-degree-independence", "theorem", f.sparse, f.independent3,
            "only degree-5 apex vertices", conjectured=True,
        )
    return None


def _apex_triangulation_global_rigidity(f: GraphFacts):
    if f.n < 6:
        return None
    hubs = [v for v in range(f.n) if is_triangulation(f.g.delete_vertices([v]))]
    if not hubs:
        return None
    # The statement must hold for every vertex whose removal leaves a triangulation.
    for v in hubs:
        nb = f.g.neighbors(v)
        k4 = len(nb) == 4 and all(f.g.has_edge(x, y) for x, y in combinations(nb, 2))
        predicted = f.connectivity >= 4 and not k4
        if predicted != f.globally_rigid3:
            break
    return _compare("apex-triangulation-global-rigidity", "theorem", predicted, f.globally_rigid3, f"hub={v}")


def _two_edge_apex_r4(f: GraphFacts):
    if f.edge_apicity_at_most(2) is None:
        return None
    return _compare("two-edge-apex-r4-independence", "theorem", True, f.independent(4))


def _three_edge_apex_r5(f: GraphFacts):
    if f.edge_apicity_at_most(3) is None:
        return None
    predicted = (True, not f.has_k6)
    computed = (f.independent(5), f.independent(4))
    return _compare("three-edge-apex-r5-independence", "theorem", predicted, computed)


def _tight_edge_apex_rank_bound(f: GraphFacts):
    if not f.tight:
        return None
    k = max(1, f.edge_apicity)
    bound = 3 * f.n - 5 - k
    return _compare("tight-edge-apex-rank-bound", "theorem", True, f.rank3.rank >= bound, f"k={k} bound={bound} rank={f.rank3.rank}")


def _apex_sparsity_independence(f: GraphFacts):
    if f.planar or not f.apex:
        return None
    return _compare("apex-sparsity-independence", "control", f.sparse, f.independent3)


RULES: dict[str, Rule] = {
    r.id: r
    for r in [
        Rule("edge-apex-independence", "theorem", "edge-apex: independent iff (3,6)-sparse", _edge_apex_independence),
        Rule("edge-apex-global-rigidity", "theorem", "edge-apex: globally rigid iff |E| = 3n-5 and 4-connected", _edge_apex_global_rigidity),
        Rule("critically-apex-independence", "theorem", "critically apex: independent iff (3,6)-sparse", _critically_apex_independence),
        Rule("critically-2-apex-independence", "theorem", "critically 2-apex: independent iff (3,6)-sparse", _critically_2_apex_independence),
        Rule("critically-k-edge-apex-independence", "theorem", "critically k-edge-apex with k <= 7 or n >= k+5: independent iff (3,6)-sparse", _critically_k_edge_apex_independence),
        Rule("critically-edge-apex-independence", "theorem", "critically edge-apex: independent unless K5; none non-planar and minimally rigid", _critically_edge_apex_independence),
        Rule("critically-edge-apex-global-rigidity", "theorem", "critically edge-apex: globally rigid iff K5", _critically_edge_apex_global_rigidity),
        Rule("critically-apex-global-rigidity", "theorem", "critically apex: globally rigid iff cone of a wheel", _critically_apex_global_rigidity),
        Rule("apex-low-degree-independence", "theorem", "apex vertex of degree 2, 3, 4 or n-1: independent iff (3,6)-sparse", _apex_low_degree_independence),
        Rule("apex-triangulation-global-rigidity", "theorem", "triangulation plus a vertex, n >= 6: globally rigid iff 4-connected and N(v) is not K4", _apex_triangulation_global_rigidity),
        Rule("two-edge-apex-r4-independence", "theorem", "2-edge-apex graphs are independent in dimension 4", _two_edge_apex_r4),
        Rule("three-edge-apex-r5-independence", "theorem", "3-edge-apex graphs are independent in dimension 5, and in dimension 4 iff K6-free", _three_edge_apex_r5),
        Rule("tight-edge-apex-rank-bound", "theorem", "(3,6)-tight k-edge-apex: rank >= 3n-5-k", _tight_edge_apex_rank_bound),
        Rule("apex-sparsity-independence", "control", "deliberately false: apex graphs are independent iff (3,6)-sparse", _apex_sparsity_independence),
    ]
}

THEOREM_RULES = [r for r in RULES.values() if r.kind == "theorem"]


def get_rule(rule_id: str) -> Rule:
    try:
        return RULES[rule_id]
    except KeyError:
        raise UnknownRuleError(f"unknown rule {rule_id!r}; known: {', '.join(sorted(RULES))}") from None


def edge_apex_independence_rule(g: Graph) -> bool:
    """Predicted independence of an edge-apex graph (its (3,6)-sparsity)."""
    f = GraphFacts(g)
    if not f.edge_apex:
        raise RuleNotApplicableError("graph is not edge-apex")
    return f.sparse


def global_rigidity_edge_apex_rule(g: Graph) -> bool:
    f = GraphFacts(g)
    if not f.edge_apex:
        raise RuleNotApplicableError("graph is not edge-apex")
    return f.m == 3 * f.n - 5 and f.connectivity >= 4


def critical_class_rules(g: Graph, cfg: RunConfig | None = None) -> list[Prediction]:
    f = GraphFacts(g, cfg)
    ids = [
        "critically-apex-independence",
        "critically-2-apex-independence",
        "critically-k-edge-apex-independence",
        "critically-edge-apex-independence",
        "critically-apex-global-rigidity",
        "critically-edge-apex-global-rigidity",
    ]
    return [p for p in (RULES[i].evaluate(f) for i in ids) if p is not None]


# ---------------------------------------------------------------------------
# Completion rank and likelihood-threshold bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MltBounds:
    gcr: int
    mlt_lower: int
    mlt_upper: int
    equals_gcr: bool
    rule: str
    lower_rule: str
    gcr_checks: tuple[Prediction, ...] = ()


def mlt_gcr_bounds(f: GraphFacts) -> MltBounds:
    gcr = f.gcr
    equality = []
    if gcr <= 4:
        equality.append("gcr-at-most-four")
    if f.edge_apex:
        equality.append("edge-apex-equality")
    if f.critically_apex:
        equality.append("critically-apex-equality")
    if f.critically_edge_apex:
        equality.append("critically-edge-apex-equality")
    three = f.edge_apicity_at_most(3) is not None
    if three and f.has_k6:
        equality.append("three-edge-apex-with-k6")

    lowers = [(f.clique_number, "clique-number-bound")]
    if f.n >= 5 and f.globally_rigid3:
        lowers.append((5, "globally-rigid-bound"))
    best = max(v for v, _ in lowers)
    lower_rule = min(r for v, r in lowers if v == best)
    lower = best

    checks = []
    if f.edge_apex:
        checks.append(_compare("edge-apex-gcr", "theorem", True, gcr <= 5, f"gcr={gcr}"))
    if f.edge_apicity_at_most(2) is not None:
        checks.append(_compare("two-edge-apex-gcr", "theorem", True, gcr <= 5, f"gcr={gcr}"))
    if three:
        if f.has_k6:
            checks.append(_compare("three-edge-apex-gcr", "theorem", 6, gcr))
        else:
            checks.append(_compare("three-edge-apex-gcr", "theorem", True, gcr <= 5, f"gcr={gcr}"))
    if not f.planar and (f.apex or f.n <= VERTEX_APICITY_LIMIT):
        k = 1 if f.apex else f.vertex_apicity[0]
        checks.append(_compare("k-apex-gcr", "theorem", True, gcr <= 4 + k, f"k={k} gcr={gcr}"))
    if f.critically_apex:
        checks.append(_compare("critically-apex-gcr", "theorem", (True, f.is_cone_of_wheel), (gcr <= 5, gcr == 5)))

    if equality or lower >= gcr:
        rule = min(equality) if equality else "bounds-meet"
        lo = gcr if equality else lower
        return MltBounds(gcr, lo, gcr, True, rule, lower_rule if not equality else rule, tuple(checks))
    return MltBounds(gcr, lower, gcr, False, "completion-rank-upper-bound", lower_rule, tuple(checks))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _rank_provenance(r: RankResult) -> dict:
    return {
        "rank": r.rank,
        "dim": r.dim,
        "maxwell_cap": r.maxwell_cap,
        "trials": r.trials,
        "primes": list(r.primes),
        "per_prime": list(r.per_prime),
        "seed": r.seed,
        "failure_bound": r.failure_bound,
    }


@dataclass
class ClassificationReport:
    record: dict
    counterexample: bool
    anomalies: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(self.record, separators=(",", ":"))


def classify(g: Graph, cfg: RunConfig | None = None, index: int | None = None) -> ClassificationReport:
    """Full report: classes, counts, rigidity, global rigidity, gcr, bounds and rule checks."""
    cfg = cfg or RunConfig()
    f = GraphFacts(g, cfg)
    d = cfg.dim
    rank_d = f.rank3 if d == 3 else generic_rank(g, d, cfg)
    indep_d = f.independent(d)
    target = rigid_target(g.n, d)
    rigid_d = rank_d.rank == target or (d == 3 and f.rigid3)
    gr = f.global_rigidity if d == 3 else is_globally_rigid_randomized(g, d, cfg)
    circuit_d = f.circuit3 if d == 3 else (g.m > 0 and rank_d.rank == g.m - 1 and is_circuit(g, d, cfg))

    predictions = [p for p in (rule.evaluate(f) for rule in RULES.values()) if p is not None]
    bounds = mlt_gcr_bounds(f)
    predictions.extend(bounds.gcr_checks)

    anomalies = []
    if circuit_d and indep_d:
        anomalies.append("circuit-and-independent")
    if gr.verdict == "yes" and not rigid_d:
        anomalies.append("globally-rigid-but-flexible")
    if gr.anomaly:
        anomalies.append("stress-rank-above-generic")
    if not bounds.mlt_lower <= bounds.mlt_upper <= bounds.gcr:
        anomalies.append("mlt-bounds-inconsistent")

    vk, vw = f.vertex_apicity
    crit_e = f.critical_edge_apicity
    record = {
        "index": index,
        "graph6": write_graph6(g),
        "canonical": canonical_code(g).decode("ascii") if g.n <= 10 else None,
        "n": g.n,
        "m": g.m,
        "planar": f.planar,
        "apicity": {
            "vertex": vk,
            "edge": f.edge_apicity,
            "critical_vertex": f.critical_vertex_apicity,
            "critical_edge": crit_e,
            "vertex_witness": list(vw),
            "edge_witness": [list(e) for e in f.edge_apicity_witness],
        },
        "sparsity": {"sparse": f.sparse, "tight": f.tight, "violating_set": list(f.sparsity.violating_set or [])},
        "rigidity": {
            **_rank_provenance(rank_d),
            "independent": indep_d,
            "rigid": rigid_d,
            "minimally_rigid": rigid_d and indep_d,
            "circuit": bool(circuit_d),
        },
        "global_rigidity": {"verdict": gr.verdict, "rule": gr.rule, "globally_rigid": gr.verdict == "yes"},
        "gcr": bounds.gcr,
        "mlt": {
            "lower": bounds.mlt_lower,
            "upper": bounds.mlt_upper,
            "equals_gcr": bounds.equals_gcr,
            "rule": bounds.rule,
            "lower_rule": bounds.lower_rule,
        },
        "predictions": [p.to_dict() for p in predictions],
        "anomalies": anomalies,
        "counterexample": False,
    }
    bad = any(p.counterexample and p.kind == "theorem" for p in predictions) or "mlt-bounds-inconsistent" in anomalies
    record["counterexample"] = bad
    return ClassificationReport(record, bad, anomalies)


# ---------------------------------------------------------------------------
# Batch drivers
# ---------------------------------------------------------------------------


def _pool_map(func, items: Iterable, jobs: int, chunksize: int = 16) -> Iterator:
    """Ordered map; a process pool when jobs > 1."""
    if jobs <= 1:
        for it in items:
            yield func(it)
        return
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(jobs) as pool:
        yield from pool.imap(func, items, chunksize=chunksize)


def _classify_task(args) -> str:
    cfg, index, g6 = args
    return classify(parse_graph6(g6), cfg.for_graph(index), index).to_json()


def classify_stream(graphs: Iterable[tuple[int, Graph]], cfg: RunConfig) -> Iterator[str]:
    """JSONL lines in input order; identical for any worker count."""
    items = [(cfg, i, write_graph6(g)) for i, g in graphs]
    yield from _pool_map(_classify_task, items, cfg.jobs, chunksize=4)


@dataclass
class VerificationReport:
    theorem: str
    kind: str
    census: str
    graphs_read: int
    graphs_checked: int
    conjectured_cases: int
    counterexamples: list[dict]
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self, timing: bool = False) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        if not timing:
            out.pop("elapsed")
        return out


def _verify_task(args):
    rule_id, cfg, index, g6 = args
    sub = cfg.for_graph(index)
    f = GraphFacts(parse_graph6(g6), sub)
    p = RULES[rule_id].evaluate(f)
    if p is None:
        return None
    return (p.status, p.predicted, p.computed, p.note, sub.seed)


def verify_theorem(rule_id: str, census: Iterable[tuple[int, Graph]], cfg: RunConfig | None = None, description: str = "") -> VerificationReport:
    cfg = cfg or RunConfig()
    rule = get_rule(rule_id)
    start = time.perf_counter()
    items = [(rule_id, cfg, i, write_graph6(g)) for i, g in census]
    checked = conjectured = 0
    bad = []
    for (_, _, index, g6), res in zip(items, _pool_map(_verify_task, items, cfg.jobs)):
        if res is None:
            continue
        status, predicted, computed, note, seed = res
        checked += 1
        if status == "conjectured":
            conjectured += 1
        elif status == "disagree":
            bad.append(
                {
                    "index": index,
                    "graph6": g6,
                    "predicted": _jsonable(predicted),
                    "computed": _jsonable(computed),
                    "note": note,
                    "seed": seed,
                    "primes": list(cfg.primes),
                }
            )
    return VerificationReport(rule.id, rule.kind, description, len(items), checked, conjectured, bad, time.perf_counter() - start)


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


# ---------------------------------------------------------------------------
# Census tables
# ---------------------------------------------------------------------------

TABLE_COLUMNS = {
    1: ("|V|", "non-planar", "apex", "critically apex", "edge-apex", "critically edge-apex"),
    2: ("|V|", "non-planar", "apex", "critically apex", "edge-apex", "critically edge-apex"),
    3: (
        "|V|",
        "apex",
        "independent",
        "dependent",
        "sparse apex",
        "sparse independent",
        "sparse dependent",
    ),
}


@dataclass
class TableResult:
    table: int
    n: int
    row: tuple[int, ...]
    graphs_read: int
    unstable: int = 0

    @property
    def header(self) -> str:
        return ",".join(TABLE_COLUMNS[self.table])

    def csv_row(self) -> str:
        return ",".join(str(x) for x in (self.n, *self.row))


def _table_task(args):
    table, cfg, index, g6 = args
    f = GraphFacts(parse_graph6(g6), cfg.for_graph(index))
    if f.planar:
        return None
    if table in (1, 2):
        if table == 2 and not f.sparse:
            return None
        return (1, int(f.apex), int(f.critically_apex), int(f.edge_apex), int(f.critically_edge_apex), 0)
    if not f.apex:
        return None
    r = f.rank3
    indep = r.rank == f.m
    unstable = int(len(set(r.per_prime)) > 1)
    s = int(f.sparse)
    return (1, int(indep), int(not indep), s, s * int(indep), s * int(not indep), unstable)


def _census_items(graphs: Iterable[tuple[int, Graph]], n: int, seen: list[int], codes: set | None, payload):
    for i, g in graphs:
        if g.n != n:
            raise IncompleteCensusError(f"record {i} has {g.n} vertices, expected {n}")
        if not g.is_connected():
            raise IncompleteCensusError(f"record {i} is disconnected")
        if codes is not None:
            code = canonical_code(g)
            if code in codes:
                raise IncompleteCensusError(f"record {i} is isomorphic to an earlier record")
            codes.add(code)
        seen[0] += 1
        yield (*payload, i, write_graph6(g))


def tabulate(graphs: Iterable[tuple[int, Graph]], table: int, n: int, cfg: RunConfig | None = None) -> TableResult:
    """Count one row of a census table.

    The census is streamed; it must be exactly the connected graphs on n
    vertices (count checked against the reference numbers, and for n <= 8
    also free of isomorphic duplicates), otherwise IncompleteCensusError.
    """
    cfg = cfg or RunConfig()
    if table not in TABLE_COLUMNS:
        raise ValueError("table must be 1, 2 or 3")
    if n not in CONNECTED_GRAPH_COUNTS:
        raise IncompleteCensusError(f"no reference count for n = {n}")
    expected = CONNECTED_GRAPH_COUNTS[n]
    seen = [0]
    codes = set() if n <= DUPLICATE_CHECK_LIMIT else None
    items = _census_items(graphs, n, seen, codes, (table, cfg))
    width = len(TABLE_COLUMNS[table]) - 1
    totals = [0] * (width + 1)
    for res in _pool_map(_table_task, items, cfg.jobs, chunksize=64):
        if res is None:
            continue
        for k, x in enumerate(res):
            totals[k] += x
    if seen[0] != expected:
        raise IncompleteCensusError(
            f"census for n = {n} has {seen[0]} graphs; the complete census has {expected}"
        )
    return TableResult(table, n, tuple(totals[:width]), seen[0], totals[width])


# ---------------------------------------------------------------------------
# Conjecture search
# ---------------------------------------------------------------------------

CONJECTURES = {
    "two-edge-apex-circuit": "planar G with G+{e,f} a flexible circuit: G+{e,f} is (3,6)-tight",
    "two-edge-apex-global-rigidity": "2-edge-apex: globally rigid iff 4-connected and redundantly rigid",
}


def _hunt_task(args):
    conj, cfg, index, g6 = args
    g = parse_graph6(g6)
    f = GraphFacts(g, cfg.for_graph(index))
    if f.edge_apicity_at_most(2) is None or f.planar:
        return None
    if conj == "two-edge-apex-circuit":
        if f.edge_apicity_at_most(2) != 2 or not f.circuit3 or f.rigid3:
            return None
        return None if f.tight else g6
    from .rigidity import hendrickson_check

    if f.n < 5:
        return None
    conn, redundant = hendrickson_check(g, 3, f.cfg)
    predicted = conn and redundant
    return None if predicted == f.globally_rigid3 else g6


def hunt(conjecture: str, census: Iterable[tuple[int, Graph]], cfg: RunConfig | None = None) -> list[str]:
    """Graphs from the census that contradict a conjecture (no pass/fail meaning)."""
    cfg = cfg or RunConfig()
    if conjecture not in CONJECTURES:
        raise UnknownRuleError(f"unknown conjecture {conjecture!r}; known: {', '.join(sorted(CONJECTURES))}")
    items = [(conjecture, cfg, i, write_graph6(g)) for i, g in census]
    return [r for r in _pool_map(_hunt_task, items, cfg.jobs) if r is not None]
