"""Undirected multigraph with value semantics, plus the problem instance type.

Graphs are immutable: every structural operation returns a new graph and
leaves the receiver untouched, so reduction and factorization steps can hold
references to intermediate graphs without defensive copying.  Parallel links
are first-class (each has its own id and reliability); self-loops are never
created (contraction drops them).

Identifiers are stable: deleting a node or link never renumbers the others,
and fresh link ids (from parallel-link merges) never reuse old ones, so
traces can refer to elements unambiguously.

Distances are hop counts.  An unreachable pair has distance :data:`INF`,
which is ``math.inf``: a distinguished non-integer value that still compares
correctly against hop bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from collections import deque
from typing import Iterable, Mapping

from .values import Mode, Value, check_mode, value_str

INF = math.inf

NodeId = int
LinkId = int


@dataclass(frozen=True)
class Link:
    """One undirected link. ``u`` and ``v`` record the construction order of
    the endpoints, which fixes the survivor under contraction (``v`` wins)."""

    id: LinkId
    u: NodeId
    v: NodeId
    reliability: Value

    def other(self, node: NodeId) -> NodeId:
        if node == self.u:
            return self.v
        if node == self.v:
            return self.u
        raise ValueError(f"link {self.id} does not touch node {node}")

    def touches(self, node: NodeId) -> bool:
        return node == self.u or node == self.v

    def endpoints(self) -> tuple[NodeId, NodeId]:
        """Endpoint pair in canonical (sorted) order."""
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)


class Graph:
    """Immutable undirected multigraph."""

    __slots__ = ("_nodes", "_links", "_adj", "_next_link_id")

    def __init__(self, nodes: Iterable[NodeId], links: Iterable[Link], next_link_id: int | None = None):
        self._nodes = frozenset(nodes)
        self._links: dict[LinkId, Link] = {}
        adj: dict[NodeId, list[Link]] = {v: [] for v in self._nodes}
        for link in links:
            if link.id in self._links:
                raise ValueError(f"duplicate link id {link.id}")
            if link.u == link.v:
                raise ValueError(f"self-loop on node {link.u} not allowed")
            if link.u not in self._nodes or link.v not in self._nodes:
                raise ValueError(f"link {link.id} touches unknown node")
            self._links[link.id] = link
            adj[link.u].append(link)
            adj[link.v].append(link)
        self._adj = {v: tuple(ls) for v, ls in adj.items()}
        if next_link_id is None:
            next_link_id = max(self._links, default=-1) + 1
        self._next_link_id = next_link_id

    @classmethod
    def from_links(cls, n: int, triples: Iterable[tuple[NodeId, NodeId, Value]]) -> "Graph":
        """Build a graph on nodes ``0..n-1`` with link ids assigned in order."""
        links = [Link(i, u, v, r) for i, (u, v, r) in enumerate(triples)]
        return cls(range(n), links)

    # -- basic accessors ---------------------------------------------------

    @property
    def nodes(self) -> frozenset[NodeId]:
        return self._nodes

    @property
    def links(self) -> Mapping[LinkId, Link]:
        return self._links

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def link_count(self) -> int:
        return len(self._links)

    def link(self, link_id: LinkId) -> Link:
        try:
            return self._links[link_id]
        except KeyError:
            raise ValueError(f"unknown link id {link_id}") from None

    def _check_node(self, node: NodeId) -> None:
        if node not in self._nodes:
            raise ValueError(f"unknown node id {node}")

    def incident(self, node: NodeId) -> tuple[Link, ...]:
        self._check_node(node)
        return self._adj[node]

    def degree(self, node: NodeId) -> int:
        """Number of incident links (parallel links count separately)."""
        return len(self.incident(node))

    def neighbors(self, node: NodeId) -> frozenset[NodeId]:
        return frozenset(l.other(node) for l in self.incident(node))

    def links_between(self, a: NodeId, b: NodeId) -> tuple[Link, ...]:
        self._check_node(a)
        self._check_node(b)
        return tuple(l for l in self._adj[a] if l.other(a) == b)

    def sorted_links(self) -> list[Link]:
        return [self._links[i] for i in sorted(self._links)]

    # -- structural operations (all return new graphs) ---------------------

    def _rebuild(self, nodes: Iterable[NodeId], links: Iterable[Link]) -> "Graph":
        return Graph(nodes, links, self._next_link_id)

    def delete_link(self, link_id: LinkId) -> "Graph":
        self.link(link_id)
        return self._rebuild(self._nodes, (l for l in self._links.values() if l.id != link_id))

    def delete_node(self, node: NodeId) -> "Graph":
        """Remove a node and every link incident to it."""
        self._check_node(node)
        return self._rebuild(
            self._nodes - {node},
            (l for l in self._links.values() if not l.touches(node)),
        )

    def with_link_reliability(self, link_id: LinkId, reliability: Value) -> "Graph":
        old = self.link(link_id)
        new = Link(old.id, old.u, old.v, reliability)
        return self._rebuild(self._nodes, (new if l.id == link_id else l for l in self._links.values()))

    def contract_link(self, link_id: LinkId) -> tuple["Graph", NodeId]:
        """Merge the link's first endpoint into its second.

        The second endpoint survives and inherits every link of the first;
        links parallel to the contracted one become self-loops and are
        dropped; any other parallels are preserved.  Returns the new graph
        and the surviving node id.
        """
        gone = self.link(link_id)
        absorbed, survivor = gone.u, gone.v
        return self.merge_nodes(survivor, (absorbed,)), survivor

    def merge_nodes(self, survivor: NodeId, absorbed: Iterable[NodeId]) -> "Graph":
        """Collapse ``absorbed`` nodes into ``survivor``; self-loops vanish."""
        self._check_node(survivor)
        absorbed = set(absorbed)
        for v in absorbed:
            self._check_node(v)
        if survivor in absorbed:
            raise ValueError("survivor cannot be absorbed")
        merged = absorbed | {survivor}

        def rewritten():
            for l in self._links.values():
                u = survivor if l.u in merged else l.u
                v = survivor if l.v in merged else l.v
                if u == v:
                    continue
                yield Link(l.id, u, v, l.reliability) if (u, v) != (l.u, l.v) else l

        return self._rebuild(self._nodes - absorbed, rewritten())

    def add_merged_link(self, link_id: LinkId, drop: Iterable[LinkId], u: NodeId, v: NodeId, reliability: Value) -> "Graph":
        """Replace the ``drop`` links by one fresh link between ``u`` and ``v``.

        Used by the parallel-link merge; ``link_id`` must be fresh (never
        used before in this graph's history).
        """
        if link_id in self._links or link_id < self._next_link_id:
            raise ValueError(f"link id {link_id} already in use")
        drop = set(drop)
        kept = [l for l in self._links.values() if l.id not in drop]
        kept.append(Link(link_id, u, v, reliability))
        return Graph(self._nodes, kept, max(self._next_link_id, link_id + 1))

    def fresh_link_id(self) -> LinkId:
        return self._next_link_id

    def induced(self, keep: Iterable[NodeId]) -> "Graph":
        """Subgraph on ``keep``, retaining links with both endpoints kept."""
        keep = frozenset(keep)
        for v in keep:
            self._check_node(v)
        return self._rebuild(keep, (l for l in self._links.values() if l.u in keep and l.v in keep))

    # -- queries ------------------------------------------------------------

    def distance(self, a: NodeId, b: NodeId, excluded: Iterable[NodeId] = ()) -> int | float:
        """Hop count of the shortest a-b path avoiding ``excluded`` nodes.

        Returns :data:`INF` when no such path exists, including when either
        endpoint itself is excluded.  ``distance(u, u)`` is 0 when ``u`` is
        not excluded.
        """
        self._check_node(a)
        self._check_node(b)
        excluded = frozenset(excluded)
        if a in excluded or b in excluded:
            return INF
        if a == b:
            return 0
        seen = {a} | excluded
        frontier = deque(((a, 0),))
        while frontier:
            node, dist = frontier.popleft()
            for l in self._adj[node]:
                w = l.other(node)
                if w in seen:
                    continue
                if w == b:
                    return dist + 1
                seen.add(w)
                frontier.append((w, dist + 1))
        return INF

    def components(self) -> list[frozenset[NodeId]]:
        """Connected components, each sorted internally; listed by smallest node."""
        seen: set[NodeId] = set()
        out = []
        for start in sorted(self._nodes):
            if start in seen:
                continue
            comp = {start}
            queue = deque((start,))
            while queue:
                node = queue.popleft()
                for l in self._adj[node]:
                    w = l.other(node)
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def cut_vertices(self) -> frozenset[NodeId]:
        """Articulation points (nodes whose removal splits their component).

        Parallel links are irrelevant to vertex connectivity, so the search
        runs on the simple support of the multigraph.
        """
        adj = {v: sorted(self.neighbors(v)) for v in self._nodes}
        disc: dict[NodeId, int] = {}
        low: dict[NodeId, int] = {}
        cuts: set[NodeId] = set()
        counter = 0
        for root in sorted(self._nodes):
            if root in disc:
                continue
            disc[root] = low[root] = counter
            counter += 1
            root_children = 0
            stack = [(root, None, iter(adj[root]))]
            while stack:
                node, parent, it = stack[-1]
                w = next(it, None)
                if w is None:
                    stack.pop()
                    if stack:
                        above = stack[-1][0]
                        low[above] = min(low[above], low[node])
                        if above != root and low[node] >= disc[above]:
                            cuts.add(above)
                    continue
                if w == parent:
                    continue
                if w in disc:
                    low[node] = min(low[node], disc[w])
                    continue
                disc[w] = low[w] = counter
                counter += 1
                if node == root:
                    root_children += 1
                stack.append((w, node, iter(adj[w])))
            if root_children >= 2:
                cuts.add(root)
        return frozenset(cuts)

    def is_d_k_connected(self, terminals: Iterable[NodeId], d: int) -> bool:
        """True when every pair of terminals lies within ``d`` hops."""
        terminals = sorted(set(terminals))
        for i, a in enumerate(terminals):
            for b in terminals[i + 1:]:
                if self.distance(a, b) > d:
                    return False
        return True

    # -- identity -----------------------------------------------------------

    def _key(self):
        return (self._nodes, frozenset((l.id, l.u, l.v, l.reliability) for l in self._links.values()))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def structure_key(self):
        """Hashable key identifying the labelled structure (ids ignored)."""
        triples = ((*l.endpoints(), l.reliability) for l in self._links.values())
        return (self._nodes, tuple(sorted(triples, key=lambda t: (t[0], t[1], repr(t[2])))))

    def __repr__(self):
        return f"Graph(nodes={sorted(self._nodes)}, links={len(self._links)})"

    def describe(self) -> str:
        rows = [f"{l.id}: {l.u}--{l.v} @ {value_str(l.reliability)}" for l in self.sorted_links()]
        return "\n".join(rows)


@dataclass(frozen=True)
class Instance:
    """A two-terminal hop-bounded reliability problem.

    ``diameter`` is the hop bound: the instance asks for the probability
    that, after independent link failures, some surviving path of at most
    ``diameter`` links still joins ``source`` to ``target``.
    """

    graph: Graph
    source: NodeId
    target: NodeId
    diameter: int
    mode: Mode = Mode.RATIONAL

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError("source and target must differ")
        if self.source not in self.graph.nodes:
            raise ValueError(f"source {self.source} not in graph")
        if self.target not in self.graph.nodes:
            raise ValueError(f"target {self.target} not in graph")
        if not isinstance(self.diameter, int) or self.diameter < 1:
            raise ValueError(f"diameter must be a positive integer, got {self.diameter!r}")
        for l in self.graph.links.values():
            check_mode(l.reliability, self.mode)

    @property
    def terminals(self) -> frozenset[NodeId]:
        return frozenset((self.source, self.target))

    def with_graph(self, graph: Graph) -> "Instance":
        return replace(self, graph=graph)

    def with_diameter(self, diameter: int) -> "Instance":
        return replace(self, diameter=diameter)
