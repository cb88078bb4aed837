"""Composition tools: edge replacement, distance profiles, cut decomposition.

Replacing a link of an outer graph H by a fresh copy of an inner graph G
(identifying the link's endpoints with G's terminals) yields a composed
network.  Because copies are interior-disjoint, an elementary terminal path
of the composed network projects to a simple path of H whose links each
contribute their copy's realized terminal distance.  The composed
hop-bounded reliability therefore depends on G only through the distribution
of its realized terminal distance, captured by :class:`DistanceProfile`, and
can be computed by summing over per-link distance assignments.

The same projection argument gives the cut-vertex convolution: when v
separates the terminals, the realized distance splits into independent
halves, so the reliability is a convolution of the s-side profile with the
t-side cumulative.

:func:`hard_instance_family` builds, from any bipartite graph, an instance
whose reliability encodes the graph's vertex-cover structure; these are the
standard hard witnesses for hop-bounded reliability and useful stress tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ResourceLimitError
from .graph import Graph, INF, Instance, Link, LinkId, NodeId
from .oracle import state_distance_distribution, state_exponent_cap
from .values import Mode, Value, from_fraction, is_zero, one, zero

ASSIGNMENT_BIT_CAP = 24


@dataclass(frozen=True)
class DistanceProfile:
    """Distribution of the realized source-target hop distance up to a bound.

    ``masses[l-1]`` is the probability the distance is exactly ``l`` hops
    (l = 1..diameter); ``tail`` is the probability it exceeds the bound
    (including disconnection).  Masses and tail sum to one exactly in the
    exact modes.
    """

    diameter: int
    masses: tuple[Value, ...]
    tail: Value

    def mass(self, hops: int) -> Value:
        if not 1 <= hops <= self.diameter:
            raise ValueError(f"hop count {hops} outside 1..{self.diameter}")
        return self.masses[hops - 1]

    def cumulative(self, hops: int) -> Value:
        """Probability the realized distance is at most ``hops``."""
        if hops < 1:
            raise ValueError(f"hop count {hops} must be at least 1")
        total = None
        for l in range(1, min(hops, self.diameter) + 1):
            total = self.masses[l - 1] if total is None else total + self.masses[l - 1]
        return total

    def total(self) -> Value:
        return self.cumulative(self.diameter) + self.tail


def distance_profile(graph: Graph, source: NodeId, target: NodeId, diameter: int,
                     mode: Mode) -> DistanceProfile:
    """Exact distance profile via state enumeration.

    One enumeration buckets every link state by its realized distance, which
    yields all masses at once.  Falls back on the factoring engine per hop
    bound when the state space exceeds the enumeration cap.
    """
    if diameter < 1:
        raise ValueError("diameter must be at least 1")
    if graph.link_count <= state_exponent_cap():
        buckets = state_distance_distribution(graph, source, target, mode)
        masses = tuple(buckets.get(l, zero(mode)) for l in range(1, diameter + 1))
        tail = zero(mode)
        for hops, mass in sorted(buckets.items(), key=lambda kv: (kv[0] == INF, kv[0])):
            if hops > diameter:
                tail = tail + mass
        return DistanceProfile(diameter=diameter, masses=masses, tail=tail)
    from .factorization import FactorConfig, ip5m
    cumulative = []
    for l in range(1, diameter + 1):
        res = ip5m(Instance(graph, source, target, l, mode), FactorConfig(pivot="first"))
        cumulative.append(res.value)
    masses = [cumulative[0]]
    for l in range(1, diameter):
        masses.append(cumulative[l] - cumulative[l - 1])
    return DistanceProfile(diameter=diameter, masses=tuple(masses), tail=1 - cumulative[-1])


def replace_edge(outer: Graph, link_id: LinkId, inner: Graph,
                 inner_source: NodeId, inner_target: NodeId) -> Graph:
    """Replace one outer link by a fresh copy of the inner graph.

    The outer link's first endpoint takes the inner source's role, its second
    endpoint the inner target's.  Interior nodes and all copied links get
    fresh ids, so repeated replacement never collides.
    """
    edge = outer.link(link_id)
    interior = sorted(inner.nodes - {inner_source, inner_target})
    next_node = max(outer.nodes, default=-1) + 1
    node_map = {inner_source: edge.u, inner_target: edge.v}
    for v in interior:
        node_map[v] = next_node
        next_node += 1
    next_link = outer.fresh_link_id()
    links = [l for l in outer.links.values() if l.id != link_id]
    for l in inner.sorted_links():
        links.append(Link(next_link, node_map[l.u], node_map[l.v], l.reliability))
        next_link += 1
    return Graph(outer.nodes | set(node_map.values()), links, next_link)


def replace_all(outer: Graph, inner: Graph, inner_source: NodeId, inner_target: NodeId) -> Graph:
    """Replace every outer link, in link-id order, by a copy of the inner graph."""
    g = outer
    for lid in sorted(outer.links):
        g = replace_edge(g, lid, inner, inner_source, inner_target)
    return g


@dataclass(frozen=True)
class ReplacementSpec:
    """Every link of ``outer`` replaced by a copy of ``inner``."""

    outer: Graph
    outer_source: NodeId
    outer_target: NodeId
    inner: Graph
    inner_source: NodeId
    inner_target: NodeId
    diameter: int
    mode: Mode = Mode.RATIONAL

    def composed_graph(self) -> Graph:
        return replace_all(self.outer, self.inner, self.inner_source, self.inner_target)

    def composed_instance(self) -> Instance:
        return Instance(self.composed_graph(), self.outer_source, self.outer_target,
                        self.diameter, self.mode)


def _shortest_under(outer: Graph, source: NodeId, target: NodeId,
                    lengths: dict[LinkId, float]) -> float:
    """Shortest path with per-link lengths (INF links are absent)."""
    dist = {v: INF for v in outer.nodes}
    dist[source] = 0
    todo = set(outer.nodes)
    while todo:
        node = min(todo, key=lambda v: dist[v])
        todo.discard(node)
        if dist[node] == INF or node == target:
            break
        for l in outer.incident(node):
            w = l.other(node)
            length = lengths[l.id]
            if length != INF and dist[node] + length < dist[w]:
                dist[w] = dist[node] + length
    return dist[target]


def dcr_composed(spec: ReplacementSpec) -> Value:
    """Hop-bounded reliability of the fully replaced network.

    Sums over assignments of a realized distance class (1..d hops, or tail)
    to each outer link, weighting by the shared inner profile and testing
    whether the assigned lengths admit a terminal path within the bound.
    Zero-mass classes are skipped; the assignment count is capped at
    ``2**24``.
    """
    d = spec.diameter
    outer_links = sorted(spec.outer.links)
    bits = len(outer_links) * max(1, (d + 1).bit_length())
    if (d + 1) ** len(outer_links) > (1 << ASSIGNMENT_BIT_CAP):
        raise ResourceLimitError(
            f"distance-assignment enumeration over (d+1)^{len(outer_links)} "
            f"(~2^{bits}) refused; compute the replaced instance directly instead",
            "max_assignment_bits", ASSIGNMENT_BIT_CAP)
    profile = distance_profile(spec.inner, spec.inner_source, spec.inner_target, d, spec.mode)
    domain = [(l, profile.mass(l)) for l in range(1, d + 1) if not is_zero(profile.mass(l))]
    if not is_zero(profile.tail):
        domain.append((INF, profile.tail))
    total = zero(spec.mode)
    for combo in itertools.product(domain, repeat=len(outer_links)):
        lengths = {lid: c[0] for lid, c in zip(outer_links, combo)}
        if _shortest_under(spec.outer, spec.outer_source, spec.outer_target, lengths) <= d:
            weight = one(spec.mode)
            for _, w in combo:
                weight = weight * w
            total = total + weight
    return total


def cut_decompose(inst: Instance, cut_node: NodeId) -> Value:
    """Split the reliability at a cut vertex separating the terminals.

    Any elementary terminal path passes the cut vertex exactly once, so the
    realized distance is the independent sum of the two sides' distances:
    convolve the source-side profile with the target-side cumulative.
    """
    g, s, t, d = inst.graph, inst.source, inst.target, inst.diameter
    if cut_node in (s, t):
        raise ValueError("cut vertex must be distinct from the terminals")
    side_nodes = {comp.union({cut_node}) for comp in g.delete_node(cut_node).components()}
    source_side = next((ns for ns in side_nodes if s in ns), None)
    target_side = next((ns for ns in side_nodes if t in ns), None)
    if source_side is None or target_side is None or source_side == target_side:
        raise ValueError(f"node {cut_node} does not separate the terminals")
    if d < 2:
        return zero(inst.mode)
    left = distance_profile(g.induced(source_side), s, cut_node, d - 1, inst.mode)
    right = distance_profile(g.induced(target_side), cut_node, t, d - 1, inst.mode)
    total = zero(inst.mode)
    for l in range(1, d):
        mass = left.mass(l)
        if is_zero(mass):
            continue
        total = total + mass * right.cumulative(d - l)
    return total


def hard_instance_family(bipartite: Graph, part_a: Iterable[NodeId], part_b: Iterable[NodeId],
                         diameter: int, mode: Mode = Mode.RATIONAL) -> Instance:
    """Instance whose reliability encodes a bipartite graph's cover structure.

    Built from a bipartite graph with parts A and B: a source-side path of
    ``diameter - 3`` perfect links, perfect copies of the bipartite links,
    half-reliability links from the path end to every A node and from every
    B node to the target, hop bound ``diameter`` (at least 3).
    """
    part_a = sorted(set(part_a))
    part_b = sorted(set(part_b))
    if diameter < 3:
        raise ValueError("hard instances need a hop bound of at least 3")
    if mode is Mode.POLY:
        raise ValueError("half-reliability links are not expressible in polynomial mode")
    if set(part_a) | set(part_b) != bipartite.nodes or set(part_a) & set(part_b):
        raise ValueError("parts must partition the graph's nodes")
    for l in bipartite.links.values():
        if (l.u in part_a) == (l.v in part_a):
            raise ValueError(f"link {l.id} does not cross the bipartition")

    path_len = diameter - 3
    node_map: dict[NodeId, int] = {}
    nxt = path_len + 1
    for v in part_a + part_b:
        node_map[v] = nxt
        nxt += 1
    target = nxt
    perfect = one(mode)
    half = from_fraction(Fraction(1, 2), mode)
    triples: list[tuple[int, int, Value]] = []
    for i in range(path_len):
        triples.append((i, i + 1, perfect))
    for l in sorted(bipartite.links.values(), key=lambda l: l.id):
        triples.append((node_map[l.u], node_map[l.v], perfect))
    for a in part_a:
        triples.append((path_len, node_map[a], half))
    for b in part_b:
        triples.append((node_map[b], target, half))
    graph = Graph.from_links(target + 1, triples)
    return Instance(graph, 0, target, diameter, mode)
