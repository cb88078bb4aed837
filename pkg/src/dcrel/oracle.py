"""Reference engines: brute force, minpath inclusion-exclusion, Monte Carlo.

These are deliberately plain.  The brute force folds over every one of the
``2^m`` link states; inclusion-exclusion folds over every nonempty subset of
the minpath set.  They exist to cross-check the clever engines, so they share
no reasoning with them.

The state count is capped (default ``2^24``); the ``DCR_MAX_STATES``
environment variable overrides the exponent cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ResourceLimitError
from .graph import Graph, INF, Instance, LinkId, NodeId
from .values import Mode, Value, is_one, is_zero, one, zero

DEFAULT_STATE_EXPONENT_CAP = 24
DEFAULT_MINPATH_CAP = 20
STATE_CAP_ENV = "DCR_MAX_STATES"

#: PRNG identification recorded alongside Monte Carlo results.
PRNG_NAME = "numpy-pcg64"
PRNG_VERSION = np.__version__


def state_exponent_cap() -> int:
    raw = os.environ.get(STATE_CAP_ENV)
    if raw is None:
        return DEFAULT_STATE_EXPONENT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{STATE_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{STATE_CAP_ENV} must be positive, got {cap}")
    return cap


def _check_state_cap(m: int, cap: int | None) -> None:
    limit = state_exponent_cap() if cap is None else cap
    if m > limit:
        raise ResourceLimitError(
            f"brute force over 2^{m} link states refused", "max_state_exponent", limit
        )


def _state_masses(graph: Graph, mode: Mode, classify) -> dict:
    """Fold over all link states, accumulating P(state) per classify() key.

    ``classify`` receives per-node adjacency bitmasks over a dense node
    index.  States are visited in a fixed order (link id order, up branch
    first); zero-probability branches are skipped since they contribute
    nothing to any bucket.
    """
    index = {v: i for i, v in enumerate(sorted(graph.nodes))}
    links = [(index[l.u], index[l.v], l.reliability) for l in graph.sorted_links()]
    n = len(index)
    adj = [0] * n
    pair_count: dict[tuple[int, int], int] = {}
    buckets: dict = {}
    zero_v = zero(mode)

    def put_up(a: int, b: int) -> None:
        key = (a, b) if a < b else (b, a)
        c = pair_count.get(key, 0)
        pair_count[key] = c + 1
        if c == 0:
            adj[a] |= 1 << b
            adj[b] |= 1 << a

    def take_down(a: int, b: int) -> None:
        key = (a, b) if a < b else (b, a)
        c = pair_count[key] - 1
        pair_count[key] = c
        if c == 0:
            adj[a] &= ~(1 << b)
            adj[b] &= ~(1 << a)

    def rec(i: int, prob: Value) -> None:
        if i == len(links):
            key = classify(adj)
            buckets[key] = buckets.get(key, zero_v) + prob
            return
        a, b, rel = links[i]
        if not is_zero(rel):
            put_up(a, b)
            rec(i + 1, prob if is_one(rel) else prob * rel)
            take_down(a, b)
        if not is_one(rel):
            down = 1 - rel
            rec(i + 1, prob if is_zero(rel) else prob * down)

    rec(0, one(mode))
    return buckets, index


def _mask_distance(adj: list[int], s: int, t: int) -> int | float:
    if s == t:
        return 0
    visited = frontier = 1 << s
    tbit = 1 << t
    dist = 0
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= ~visited
        dist += 1
        if nxt & tbit:
            return dist
        visited |= nxt
        frontier = nxt
    return INF


def state_distance_distribution(graph: Graph, source: NodeId, target: NodeId,
                                mode: Mode, cap: int | None = None) -> dict[int | float, Value]:
    """Exact distribution of the source-target hop distance over link states.

    Maps each attainable hop count (and :data:`INF`) to the total probability
    of the states realizing it.  The masses sum to one exactly in the exact
    modes.  This is the workhorse behind :func:`dcr_bruteforce`; summing the
    masses at or below a hop bound gives the bound's reliability, so one
    enumeration answers every diameter at once.
    """
    _check_state_cap(graph.link_count, cap)
    order = sorted(graph.nodes)
    s_i, t_i = order.index(source), order.index(target)
    buckets, _ = _state_masses(graph, mode, lambda adj: _mask_distance(adj, s_i, t_i))
    return buckets


def dcr_bruteforce(inst: Instance, cap: int | None = None) -> Value:
    """Reliability by full state enumeration (the primary oracle)."""
    dist = state_distance_distribution(inst.graph, inst.source, inst.target, inst.mode, cap)
    total = zero(inst.mode)
    for hops, mass in sorted(dist.items(), key=lambda kv: (kv[0] is INF, kv[0])):
        if hops <= inst.diameter:
            total = total + mass
    return total


def dcr_bruteforce_terminals(graph: Graph, terminals: Iterable[NodeId], d: int,
                             mode: Mode, cap: int | None = None) -> Value:
    """Brute force for a general terminal set: every pair within ``d`` hops."""
    _check_state_cap(graph.link_count, cap)
    index_map = {v: i for i, v in enumerate(sorted(graph.nodes))}
    term = sorted(index_map[v] for v in set(terminals))
    pairs = [(a, b) for i, a in enumerate(term) for b in term[i + 1:]]

    def connected(adj: list[int]) -> bool:
        return all(_mask_distance(adj, a, b) <= d for a, b in pairs)

    buckets, _ = _state_masses(graph, mode, connected)
    return buckets.get(True, zero(mode))


@dataclass(frozen=True)
class MinPath:
    """An elementary source-target path: node sequence plus the links used."""

    nodes: tuple[NodeId, ...]
    links: tuple[LinkId, ...]

    @property
    def length(self) -> int:
        return len(self.links)


def iter_minpaths(inst: Instance):
    """Yield elementary source-target paths within the hop bound.

    Depth-first with neighbors visited in (node id, link id) order, which
    makes the yield order lexicographic by node sequence (ties broken by
    link ids, which matters only for parallel links).
    """
    g, target, bound = inst.graph, inst.target, inst.diameter
    path_nodes = [inst.source]
    path_links: list[LinkId] = []
    on_path = {inst.source}

    def walk(node: NodeId):
        if node == target:
            yield MinPath(tuple(path_nodes), tuple(path_links))
            return
        if len(path_links) == bound:
            return
        for link in sorted(g.incident(node), key=lambda l: (l.other(node), l.id)):
            w = link.other(node)
            if w in on_path:
                continue
            path_nodes.append(w)
            path_links.append(link.id)
            on_path.add(w)
            yield from walk(w)
            on_path.discard(w)
            path_links.pop()
            path_nodes.pop()

    yield from walk(inst.source)


def enumerate_minpaths(inst: Instance) -> list[MinPath]:
    return list(iter_minpaths(inst))


def is_link_relevant_oracle(inst: Instance, link_id: LinkId) -> bool:
    """True when some elementary path within the bound uses the link."""
    inst.graph.link(link_id)
    return any(link_id in mp.links for mp in iter_minpaths(inst))


def dcr_inclusion_exclusion(inst: Instance, cap: int = DEFAULT_MINPATH_CAP) -> Value:
    """Reliability via inclusion-exclusion over the minpath set.

    The probability that a set of minpaths all operate is the product of the
    reliabilities over the union of their links; signs alternate with subset
    parity.  Exponential in the number of minpaths, hence the cap.
    """
    paths = enumerate_minpaths(inst)
    if len(paths) > cap:
        raise ResourceLimitError(
            f"inclusion-exclusion over {len(paths)} minpaths refused", "max_minpaths", cap
        )
    link_rel = {l.id: l.reliability for l in inst.graph.links.values()}
    total = zero(inst.mode)
    path_links = [frozenset(p.links) for p in paths]

    def union_probability(links: frozenset[LinkId]) -> Value:
        prob = one(inst.mode)
        for lid in sorted(links):
            prob = prob * link_rel[lid]
        return prob

    def rec(i: int, union: frozenset[LinkId], parity: int, nonempty: bool):
        nonlocal total
        if i == len(path_links):
            if nonempty:
                term = union_probability(union)
                total = total + term if parity else total - term
            return
        rec(i + 1, union, parity, nonempty)
        rec(i + 1, union | path_links[i], 1 - parity, True)

    rec(0, frozenset(), 0, False)
    return total


@dataclass(frozen=True)
class MonteCarloEstimate:
    value: float
    stderr: float
    samples: int
    seed: int
    prng: str = PRNG_NAME
    prng_version: str = PRNG_VERSION

    def metadata(self) -> dict:
        return {
            "algorithm": self.prng,
            "library_version": self.prng_version,
            "seed": self.seed,
            "samples": self.samples,
        }


def monte_carlo_estimate(inst: Instance, samples: int, seed: int) -> MonteCarloEstimate:
    """Crude Monte Carlo estimate of the reliability (float mode only).

    Vectorized over sample blocks: each block draws a Bernoulli state per
    link, then runs a batched breadth-first sweep for ``diameter`` rounds.
    The standard error reported is ``sqrt(r(1-r)/samples)``.
    """
    if inst.mode is not Mode.FLOAT:
        raise ValueError("Monte Carlo estimation requires float mode")
    if samples < 1:
        raise ValueError("sample count must be positive")
    g = inst.graph
    index = {v: i for i, v in enumerate(sorted(g.nodes))}
    n = len(index)
    links = g.sorted_links()
    rel = np.array([l.reliability for l in links])
    ends = [(index[l.u], index[l.v]) for l in links]
    s_i, t_i = index[inst.source], index[inst.target]

    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    block_size = 1 << 14
    while remaining:
        block = min(block_size, remaining)
        remaining -= block
        up = rng.random((block, len(links))) < rel
        adj = np.zeros((block, n, n), dtype=bool)
        for k, (a, b) in enumerate(ends):
            adj[:, a, b] |= up[:, k]
            adj[:, b, a] |= up[:, k]
        reach = np.zeros((block, n), dtype=bool)
        reach[:, s_i] = True
        for _ in range(min(inst.diameter, n - 1)):
            grown = (reach[:, :, None] & adj).any(axis=1) | reach
            if (grown == reach).all():
                break
            reach = grown
        hits += int(reach[:, t_i].sum())
    rate = hits / samples
    stderr = float(np.sqrt(rate * (1.0 - rate) / samples))
    return MonteCarloEstimate(value=rate, stderr=stderr, samples=samples, seed=seed)
