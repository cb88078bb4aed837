"""Exact reliability by recursive link factoring.

Each call first tries to terminate: a path of perfect links within the hop
bound means the terminals are surely joined (value 1); a source-target
distance beyond the bound (or no path at all) means they surely are not
(value 0).  Otherwise the instance is cheapened: zero-reliability links are
deleted, irrelevant links pruned at the configured level, and the five
reductions applied, accumulating a multiplier.  If termination still does
not fire, a pivot link e is chosen and the total-probability split

    R(G) = (1 - p_e) * R(G - e)  +  p_e * R(G with p_e := 1)

recurses on both branches.  The conditioning branch sets the link perfect
rather than contracting it: contraction would shorten hop counts and change
the quantity being computed.

Pivot selection policies: ``random`` (seeded, uniform over eligible links),
``first`` (smallest link id), ``maxdeg`` (link with the highest-degree
endpoint).  Eligible links are those with reliability strictly between 0
and 1; the policy never affects the value, only the shape of the recursion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import ResourceLimitError
from .graph import Graph, Instance, LinkId
from .irrelevance import LEVELS_WITH_OFF, prune_irrelevant
from .reductions import (KIND_PIVOT, KIND_PRUNE, KIND_ZERO, ReductionStep,
                         apply_5p)
from .values import Value, is_one, is_zero, one, zero

PIVOT_POLICIES = ("random", "first", "maxdeg")


@dataclass(frozen=True)
class FactorConfig:
    pivot: str = "random"
    seed: int = 0
    irrelevance: str = "c3"
    max_depth: int = 256
    max_calls: int = 1_000_000
    memoize: bool = False
    record_trace: bool = False

    def __post_init__(self):
        if self.pivot not in PIVOT_POLICIES:
            raise ValueError(f"unknown pivot policy {self.pivot!r}; expected one of {PIVOT_POLICIES}")
        if self.irrelevance not in LEVELS_WITH_OFF:
            raise ValueError(f"unknown irrelevance level {self.irrelevance!r}")
        if self.max_depth < 1 or self.max_calls < 1:
            raise ValueError("caps must be positive")


@dataclass
class FactorStats:
    calls: int = 0
    max_depth: int = 0
    perfect_path_leaves: int = 0
    too_far_leaves: int = 0
    pivots: int = 0
    pruned_links: int = 0
    zero_links_deleted: int = 0
    reductions: dict = field(default_factory=dict)
    cache_hits: int = 0

    def count_reduction(self, kind: str, n: int = 1) -> None:
        self.reductions[kind] = self.reductions.get(kind, 0) + n

    def to_json(self) -> dict:
        return {
            "calls": self.calls,
            "max_depth": self.max_depth,
            "perfect_path_leaves": self.perfect_path_leaves,
            "too_far_leaves": self.too_far_leaves,
            "pivots": self.pivots,
            "pruned_links": self.pruned_links,
            "zero_links_deleted": self.zero_links_deleted,
            "reductions": dict(sorted(self.reductions.items())),
            "cache_hits": self.cache_hits,
        }


@dataclass(frozen=True)
class FactorResult:
    value: Value
    stats: FactorStats
    trace: tuple[ReductionStep, ...] | None = None


def has_perfect_path(inst: Instance) -> bool:
    """True when perfect links alone join the terminals within the bound."""
    sub = Graph(inst.graph.nodes,
                (l for l in inst.graph.links.values() if is_one(l.reliability)))
    return sub.distance(inst.source, inst.target) <= inst.diameter


def too_far(inst: Instance) -> bool:
    """True when even the full graph keeps the terminals beyond the bound."""
    return inst.graph.distance(inst.source, inst.target) > inst.diameter


def eligible_pivots(inst: Instance) -> list[LinkId]:
    return [lid for lid in sorted(inst.graph.links)
            if not is_one(inst.graph.links[lid].reliability)
            and not is_zero(inst.graph.links[lid].reliability)]


def select_pivot(inst: Instance, policy: str, rng: random.Random | None = None) -> LinkId:
    choices = eligible_pivots(inst)
    if not choices:
        raise RuntimeError("no eligible pivot link; termination tests should have fired")
    if policy == "first":
        return choices[0]
    if policy == "maxdeg":
        g = inst.graph
        return max(choices, key=lambda lid: (max(g.degree(g.links[lid].u), g.degree(g.links[lid].v)), -lid))
    if policy == "random":
        if rng is None:
            raise ValueError("random pivot policy needs a seeded rng")
        return rng.choice(choices)
    raise ValueError(f"unknown pivot policy {policy!r}")


def make_perfect(graph: Graph, link_id: LinkId, mode) -> Graph:
    return graph.with_link_reliability(link_id, one(mode))


def _delete_zero_links(inst: Instance):
    zero_ids = [lid for lid in sorted(inst.graph.links)
                if is_zero(inst.graph.links[lid].reliability)]
    graph = inst.graph
    for lid in zero_ids:
        graph = graph.delete_link(lid)
    return (inst.with_graph(graph) if zero_ids else inst), zero_ids


class _Engine:
    def __init__(self, config: FactorConfig, mode):
        self.config = config
        self.mode = mode
        self.stats = FactorStats()
        self.trace: list[ReductionStep] | None = [] if config.record_trace else None
        self.rng = random.Random(config.seed) if config.pivot == "random" else None
        self.cache: dict | None = {} if config.memoize else None

    def _emit(self, step: ReductionStep, depth: int) -> None:
        if self.trace is not None:
            detail = dict(step.detail)
            detail["depth"] = depth
            self.trace.append(ReductionStep(step.kind, detail, step.multiplier, step.diameter_delta))

    def run(self, inst: Instance, depth: int = 0) -> Value:
        st = self.stats
        st.calls += 1
        st.max_depth = max(st.max_depth, depth)
        if depth > self.config.max_depth:
            raise ResourceLimitError("factoring recursion too deep", "max_depth",
                                     self.config.max_depth, st)
        if st.calls > self.config.max_calls:
            raise ResourceLimitError("factoring call budget exhausted", "max_calls",
                                     self.config.max_calls, st)

        if has_perfect_path(inst):
            st.perfect_path_leaves += 1
            return one(self.mode)
        if too_far(inst):
            st.too_far_leaves += 1
            return zero(self.mode)

        cache_key = None
        if self.cache is not None:
            cache_key = (inst.graph.structure_key(), inst.source, inst.target, inst.diameter)
            hit = self.cache.get(cache_key)
            if hit is not None:
                st.cache_hits += 1
                return hit

        inst, zero_ids = _delete_zero_links(inst)
        st.zero_links_deleted += len(zero_ids)
        for lid in zero_ids:
            self._emit(ReductionStep(KIND_ZERO, {"link": lid}, one(self.mode)), depth)

        if self.config.irrelevance != "off":
            pruned = prune_irrelevant(inst, self.config.irrelevance)
            st.pruned_links += len(pruned.certificates)
            for cert in pruned.certificates:
                self._emit(ReductionStep(KIND_PRUNE, cert.to_json(), one(self.mode)), depth)
            inst = pruned.instance

        reduced = apply_5p(inst)
        for step in reduced.steps:
            st.count_reduction(step.kind)
            self._emit(step, depth)
        inst = reduced.instance
        multiplier = reduced.multiplier

        if has_perfect_path(inst):
            st.perfect_path_leaves += 1
            value = multiplier
        elif too_far(inst):
            st.too_far_leaves += 1
            value = zero(self.mode)
        else:
            lid = select_pivot(inst, self.config.pivot, self.rng)
            st.pivots += 1
            p_e = inst.graph.links[lid].reliability
            self._emit(ReductionStep(KIND_PIVOT, {"link": lid, "branch": "delete"}, one(self.mode)), depth)
            without = self.run(inst.with_graph(inst.graph.delete_link(lid)), depth + 1)
            self._emit(ReductionStep(KIND_PIVOT, {"link": lid, "branch": "perfect"}, one(self.mode)), depth)
            with_perfect = self.run(inst.with_graph(make_perfect(inst.graph, lid, self.mode)), depth + 1)
            value = multiplier * ((1 - p_e) * without + p_e * with_perfect)

        if self.cache is not None and cache_key is not None:
            self.cache[cache_key] = value
        return value


def ip5m(inst: Instance, config: FactorConfig | None = None) -> FactorResult:
    """Exact hop-bounded reliability by factoring with reductions."""
    config = config or FactorConfig()
    engine = _Engine(config, inst.mode)
    value = engine.run(inst)
    trace = tuple(engine.trace) if engine.trace is not None else None
    return FactorResult(value=value, stats=engine.stats, trace=trace)
