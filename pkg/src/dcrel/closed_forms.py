"""Closed-form reliabilities for the two solvable corners.

With hop bound 1 the terminals must be joined directly, so the answer is a
product of (parallel-merged) direct-link reliabilities over terminal pairs.
With two terminals and hop bound 2 the working paths are the direct link and
the two-link detours, whose failure events are independent.
"""

from __future__ import annotations

from typing import Iterable

from .graph import Graph, Instance, NodeId
from .values import Mode, Value, one, zero


def _merged_reliability(graph: Graph, a: NodeId, b: NodeId, mode: Mode) -> Value:
    """Reliability of the (possibly parallel) a-b bundle; zero when absent."""
    links = graph.links_between(a, b)
    if not links:
        return zero(mode)
    fail = one(mode)
    for l in sorted(links, key=lambda l: l.id):
        fail = fail * (1 - l.reliability)
    return 1 - fail

def dcr_d1_terminals(graph: Graph, terminals: Iterable[NodeId], mode: Mode) -> Value:
    """Hop bound 1, any terminal set: product over terminal pairs."""
    term = sorted(set(terminals))
    if len(term) < 2:
        raise ValueError("need at least two terminals")
    out = one(mode)
    for i, a in enumerate(term):
        for b in term[i + 1:]:
            out = out * _merged_reliability(graph, a, b, mode)
    return out


def dcr_d1(inst: Instance) -> Value:
    if inst.diameter != 1:
        raise ValueError(f"closed form requires diameter 1, got {inst.diameter}")
    return dcr_d1_terminals(inst.graph, (inst.source, inst.target), inst.mode)


def dcr_k2_d2(inst: Instance) -> Value:
    """Two terminals, hop bound 2.

    The direct link (parallel-merged) and each two-hop detour through a third
    node are link-disjoint, so their failures are independent:
    ``1 - (1 - p_uv) * prod_w (1 - p_uw * p_wv)``.
    """
    if inst.diameter != 2:
        raise ValueError(f"closed form requires diameter 2, got {inst.diameter}")
    g, u, v, mode = inst.graph, inst.source, inst.target, inst.mode
    fail = 1 - _merged_reliability(g, u, v, mode)
    for w in sorted(g.nodes - {u, v}):
        through = _merged_reliability(g, u, w, mode) * _merged_reliability(g, w, v, mode)
        fail = fail * (1 - through)
    return 1 - fail
