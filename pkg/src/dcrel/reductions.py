"""Reliability-preserving reductions and their replayable traces.

Five operations, each sound for hop-bounded two-terminal reliability:

* pending-node: a non-terminal node of degree at most one lies on no
  elementary terminal path; delete it.  A terminal whose single link goes to
  a non-terminal can only start that way, so contract the link, keep its
  reliability as a multiplier, and shorten the hop bound by one.
* perfect-path: a chain of non-terminal degree-2 nodes is traversed entirely
  or not at all; concentrate the chain's product on its final link and make
  the rest perfect.
* perfect-neighbors: when every link at a terminal is perfect (and the other
  terminal is not adjacent), the first hop is certain; merge the terminal
  with its neighborhood and shorten the hop bound by one.
* perfect-cut-node: components hanging off a cut vertex away from both
  terminals cannot carry an elementary terminal path; delete them.
* parallel-links: two parallel links act as one with reliability
  ``p1 + p2 - p1*p2``; merge until the graph is simple.

Each operation returns ``None`` when nothing applies, otherwise the reduced
instance with a multiplier and per-action steps such that

    reliability(original) == multiplier * reliability(reduced).

:func:`apply_5p` cycles the five to exhaustion in the order above and
accumulates the overall multiplier; :func:`replay` re-applies a recorded
trace to reproduce the reduced instance exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Instance, LinkId, NodeId
from .values import Value, is_one, one, value_to_json

KIND_PENDING = "pending-node"
KIND_PATH = "perfect-path"
KIND_NEIGHBORS = "perfect-neighbors"
KIND_CUT = "perfect-cut-node"
KIND_PARALLEL = "parallel-links"
KIND_PRUNE = "irrelevant-prune"
KIND_ZERO = "zero-link"
KIND_PIVOT = "pivot"


@dataclass(frozen=True)
class ReductionStep:
    """One recorded action: what happened, to which elements, and how it
    contributed to the multiplier and the hop bound."""

    kind: str
    detail: dict
    multiplier: Value
    diameter_delta: int = 0

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "detail": self.detail,
            "multiplier": value_to_json(self.multiplier),
            "diameter_delta": self.diameter_delta,
        }


@dataclass(frozen=True)
class OpOutcome:
    instance: Instance
    multiplier: Value
    steps: tuple[ReductionStep, ...]


@dataclass(frozen=True)
class ReducedForm:
    multiplier: Value
    instance: Instance
    steps: tuple[ReductionStep, ...]


def _one_step(inst: Instance, kind: str, detail: dict, multiplier=None, delta: int = 0) -> ReductionStep:
    return ReductionStep(kind, detail, one(inst.mode) if multiplier is None else multiplier, delta)


def pending_node(inst: Instance) -> OpOutcome | None:
    """Delete dead-end non-terminals; contract single-link terminals."""
    cur = inst
    mult = one(inst.mode)
    steps: list[ReductionStep] = []
    changed = True
    while changed:
        changed = False
        for v in sorted(cur.graph.nodes):
            if v == cur.source or v == cur.target:
                continue
            if cur.graph.degree(v) <= 1:
                cur = cur.with_graph(cur.graph.delete_node(v))
                steps.append(_one_step(cur, KIND_PENDING, {"action": "delete", "node": v}))
                changed = True
        for name in ("source", "target"):
            if cur.diameter < 2:
                continue
            term = getattr(cur, name)
            other_term = cur.target if name == "source" else cur.source
            incident = cur.graph.incident(term)
            if len(incident) != 1:
                continue
            e = incident[0]
            if e.other(term) == other_term:
                continue
            graph, survivor = cur.graph.contract_link(e.id)
            src = survivor if name == "source" else cur.source
            tgt = survivor if name == "target" else cur.target
            cur = Instance(graph, src, tgt, cur.diameter - 1, cur.mode)
            mult = mult * e.reliability
            steps.append(ReductionStep(
                KIND_PENDING,
                {"action": "contract", "link": e.id, "terminal": name, "survivor": survivor},
                e.reliability,
                -1,
            ))
            changed = True
    if not steps:
        return None
    return OpOutcome(cur, mult, tuple(steps))


def _chain_interior(inst: Instance, v: NodeId) -> bool:
    if v == inst.source or v == inst.target:
        return False
    if inst.graph.degree(v) != 2:
        return False
    return len(inst.graph.neighbors(v)) == 2


def _find_chains(inst: Instance) -> list[tuple[list[NodeId], list[LinkId]]]:
    """Maximal paths whose interior nodes are non-terminal with degree 2.

    Each chain is walked from a non-interior anchor; a pure cycle of interior
    nodes has no anchor and is skipped (no terminal path can enter it).
    """
    g = inst.graph
    chains = []
    used: set[LinkId] = set()
    for anchor in sorted(g.nodes):
        if _chain_interior(inst, anchor):
            continue
        for first in sorted(g.incident(anchor), key=lambda l: (l.other(anchor), l.id)):
            if first.id in used:
                continue
            nodes = [anchor]
            links: list[LinkId] = []
            node, link = anchor, first
            while True:
                links.append(link.id)
                used.add(link.id)
                node = link.other(node)
                nodes.append(node)
                if not _chain_interior(inst, node):
                    break
                a, b = g.incident(node)
                link = b if a.id == link.id else a
            if len(nodes) >= 3:
                if nodes[0] != nodes[-1] and nodes[0] > nodes[-1]:
                    nodes.reverse()
                    links.reverse()
                chains.append((nodes, links))
    chains.sort(key=lambda c: c[0])
    return chains


def perfect_path(inst: Instance) -> OpOutcome | None:
    """Concentrate each chain's reliability product on its last link."""
    chains = _find_chains(inst)
    graph = inst.graph
    steps: list[ReductionStep] = []
    for nodes, links in chains:
        if all(is_one(graph.link(lid).reliability) for lid in links[:-1]):
            continue
        product = one(inst.mode)
        for lid in links:
            rel = graph.link(lid).reliability
            if not is_one(rel):
                product = product * rel
        for lid in links[:-1]:
            graph = graph.with_link_reliability(lid, one(inst.mode))
        graph = graph.with_link_reliability(links[-1], product)
        steps.append(_one_step(inst, KIND_PATH, {"chain_nodes": list(nodes), "chain_links": list(links)}))
    if not steps:
        return None
    return OpOutcome(inst.with_graph(graph), one(inst.mode), tuple(steps))


def perfect_neighbors(inst: Instance) -> OpOutcome | None:
    """Merge a terminal with its neighborhood when every first hop is sure."""
    cur = inst
    steps: list[ReductionStep] = []
    changed = True
    while changed:
        changed = False
        for name in ("source", "target"):
            if cur.diameter < 2:
                continue
            term = getattr(cur, name)
            other_term = cur.target if name == "source" else cur.source
            incident = cur.graph.incident(term)
            if not incident:
                continue
            nbrs = cur.graph.neighbors(term)
            if other_term in nbrs:
                continue
            if any(not is_one(l.reliability) for l in incident):
                continue
            graph = cur.graph.merge_nodes(term, nbrs)
            cur = Instance(graph, cur.source, cur.target, cur.diameter - 1, cur.mode)
            steps.append(_one_step(cur, KIND_NEIGHBORS,
                                   {"terminal": name, "merged": sorted(nbrs)}, delta=-1))
            changed = True
    if not steps:
        return None
    return OpOutcome(cur, one(inst.mode), tuple(steps))


def cut_node_cleanup(inst: Instance) -> OpOutcome | None:
    """Delete components hanging off cut vertices away from both terminals."""
    cur = inst
    steps: list[ReductionStep] = []
    while True:
        g = cur.graph
        applied = False
        for v in sorted(g.cut_vertices()):
            doomed: set[NodeId] = set()
            for comp in g.delete_node(v).components():
                if cur.source not in comp and cur.target not in comp:
                    doomed |= comp
            if not doomed:
                continue
            graph = g
            for node in sorted(doomed):
                graph = graph.delete_node(node)
            cur = cur.with_graph(graph)
            steps.append(_one_step(cur, KIND_CUT, {"cut_node": v, "removed": sorted(doomed)}))
            applied = True
            break
        if not applied:
            break
    if not steps:
        return None
    return OpOutcome(cur, one(inst.mode), tuple(steps))


def parallel_links(inst: Instance) -> OpOutcome | None:
    """Merge each parallel bundle into a single link (until simple)."""
    graph = inst.graph
    groups: dict[tuple[NodeId, NodeId], list] = {}
    for link in graph.sorted_links():
        groups.setdefault(link.endpoints(), []).append(link)
    steps: list[ReductionStep] = []
    for (a, b), bundle in sorted(groups.items()):
        if len(bundle) < 2:
            continue
        fail = one(inst.mode)
        for link in bundle:
            fail = fail * (1 - link.reliability)
        new_id = graph.fresh_link_id()
        graph = graph.add_merged_link(new_id, (l.id for l in bundle), a, b, 1 - fail)
        steps.append(_one_step(inst, KIND_PARALLEL,
                               {"endpoints": [a, b], "merged_links": [l.id for l in bundle],
                                "new_link": new_id}))
    if not steps:
        return None
    return OpOutcome(inst.with_graph(graph), one(inst.mode), tuple(steps))


OPERATIONS = (pending_node, perfect_path, perfect_neighbors, cut_node_cleanup, parallel_links)


def apply_5p(inst: Instance) -> ReducedForm:
    """Cycle the five reductions to exhaustion, accumulating the multiplier."""
    cur = inst
    mult = one(inst.mode)
    steps: list[ReductionStep] = []
    budget = 4 * (inst.graph.node_count + inst.graph.link_count + inst.diameter) + 8
    for _ in range(budget):
        changed = False
        for op in OPERATIONS:
            out = op(cur)
            if out is not None:
                cur = out.instance
                if not is_one(out.multiplier):
                    mult = mult * out.multiplier
                steps.extend(out.steps)
                changed = True
        if not changed:
            break
    else:
        raise RuntimeError("reduction loop failed to reach a fixed point")
    return ReducedForm(multiplier=mult, instance=cur, steps=tuple(steps))


def replay(inst: Instance, steps) -> Instance:
    """Re-apply a recorded reduction trace; reproduces the reduced instance."""
    cur = inst
    for step in steps:
        d = step.detail
        if step.kind == KIND_PENDING and d["action"] == "delete":
            cur = cur.with_graph(cur.graph.delete_node(d["node"]))
        elif step.kind == KIND_PENDING:
            graph, survivor = cur.graph.contract_link(d["link"])
            if survivor != d["survivor"]:
                raise ValueError(f"trace mismatch: survivor {survivor} != {d['survivor']}")
            src = survivor if d["terminal"] == "source" else cur.source
            tgt = survivor if d["terminal"] == "target" else cur.target
            cur = Instance(graph, src, tgt, cur.diameter + step.diameter_delta, cur.mode)
        elif step.kind == KIND_PATH:
            graph = cur.graph
            links = d["chain_links"]
            product = one(cur.mode)
            for lid in links:
                rel = graph.link(lid).reliability
                if not is_one(rel):
                    product = product * rel
            for lid in links[:-1]:
                graph = graph.with_link_reliability(lid, one(cur.mode))
            cur = cur.with_graph(graph.with_link_reliability(links[-1], product))
        elif step.kind == KIND_NEIGHBORS:
            term = getattr(cur, d["terminal"])
            graph = cur.graph.merge_nodes(term, d["merged"])
            cur = Instance(graph, cur.source, cur.target,
                           cur.diameter + step.diameter_delta, cur.mode)
        elif step.kind == KIND_CUT:
            graph = cur.graph
            for node in d["removed"]:
                graph = graph.delete_node(node)
            cur = cur.with_graph(graph)
        elif step.kind == KIND_PARALLEL:
            graph = cur.graph
            fail = one(cur.mode)
            for lid in d["merged_links"]:
                fail = fail * (1 - graph.link(lid).reliability)
            a, b = d["endpoints"]
            cur = cur.with_graph(graph.add_merged_link(d["new_link"], d["merged_links"], a, b, 1 - fail))
        elif step.kind in (KIND_PRUNE, KIND_ZERO):
            cur = cur.with_graph(cur.graph.delete_link(d["link"]))
        else:
            raise ValueError(f"cannot replay step kind {step.kind!r}")
    return cur
