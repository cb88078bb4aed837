"""Builders for standard instance families.

Every family takes a reliability token (as in the instance file format) so
the same builder serves float, rational and polynomial instances.  Terminals
and default hop bounds follow the obvious conventions documented per family.
"""

from __future__ import annotations

from .composition import hard_instance_family, replace_all
from .graph import Graph, Instance
from .instance_io import parse_reliability_token, reliability_value
from .values import Mode, Value, one


def _mode_for(kind: str, requested: str | None) -> Mode:
    if requested and requested != "auto":
        mode = Mode(requested)
    else:
        mode = Mode.POLY if kind == "symbol" else Mode.RATIONAL
    if kind == "symbol" and mode is not Mode.POLY:
        raise ValueError("symbolic reliability requires polynomial mode")
    if kind == "number" and mode is Mode.POLY:
        raise ValueError("polynomial mode admits only 0, 1 and the symbol p")
    return mode


def _rel(token: str, requested: str | None) -> tuple[Value, Mode]:
    kind, number = parse_reliability_token(token)
    mode = _mode_for(kind, requested)
    return reliability_value(kind, number, mode), mode


def path_instance(n: int, p: str = "p", mode: str | None = None, diameter: int | None = None) -> Instance:
    """Path 0-1-...-(n-1); terminals are the two ends; default bound n-1."""
    if n < 2:
        raise ValueError("path needs at least 2 nodes")
    rel, m = _rel(p, mode)
    g = Graph.from_links(n, [(i, i + 1, rel) for i in range(n - 1)])
    return Instance(g, 0, n - 1, min(diameter or n - 1, n - 1), m)


def cycle_instance(n: int, p: str = "p", mode: str | None = None, diameter: int | None = None) -> Instance:
    """Cycle on n nodes; terminals 0 and n//2 (antipodal); default bound n-1."""
    if n < 3:
        raise ValueError("cycle needs at least 3 nodes")
    rel, m = _rel(p, mode)
    g = Graph.from_links(n, [(i, (i + 1) % n, rel) for i in range(n)])
    return Instance(g, 0, n // 2, min(diameter or n - 1, n - 1), m)


def complete_instance(n: int, p: str = "p", mode: str | None = None, diameter: int | None = None) -> Instance:
    """Complete graph K_n; terminals 0 and n-1; default bound n-1."""
    if n < 2:
        raise ValueError("complete graph needs at least 2 nodes")
    rel, m = _rel(p, mode)
    links = [(i, j, rel) for i in range(n) for j in range(i + 1, n)]
    return Instance(Graph.from_links(n, links), 0, n - 1, min(diameter or n - 1, n - 1), m)


def grid_instance(rows: int, cols: int, p: str = "p", mode: str | None = None,
                  diameter: int | None = None) -> Instance:
    """rows x cols lattice; terminals are opposite corners; default bound n-1."""
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise ValueError("grid needs at least 2 nodes")
    rel, m = _rel(p, mode)
    links = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                links.append((v, v + 1, rel))
            if r + 1 < rows:
                links.append((v, v + cols, rel))
    n = rows * cols
    return Instance(Graph.from_links(n, links), 0, n - 1, min(diameter or n - 1, n - 1), m)


#: The 8-node worked example: terminals s=0 and t=7, a 2-hop chord path and a
#: 7-hop outer path, hop bound 6.  Node names 1..6 keep their ids.
FIGRED_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 4), (1, 7))


def figred_instance(p: str = "p", mode: str | None = None, diameter: int = 6) -> Instance:
    """The running worked example: 8 nodes, 9 links, hop bound 6."""
    rel, m = _rel(p, mode)
    g = Graph.from_links(8, [(u, v, rel) for u, v in FIGRED_EDGES])
    return Instance(g, 0, 7, diameter, m)


def replacement_instance(outer: Instance, inner: Instance, diameter: int) -> Instance:
    """Every link of the outer instance replaced by a copy of the inner graph."""
    if outer.mode is not inner.mode:
        raise ValueError("outer and inner instances must share a mode")
    g = replace_all(outer.graph, inner.graph, inner.source, inner.target)
    return Instance(g, outer.source, outer.target, diameter, outer.mode)


def bipartite_cycle(n: int, mode: Mode = Mode.RATIONAL) -> tuple[Graph, list[int], list[int]]:
    """Even cycle C_n as a bipartite graph with its natural 2-coloring."""
    if n < 4 or n % 2:
        raise ValueError("bipartite cycle needs an even n >= 4")
    g = Graph.from_links(n, [(i, (i + 1) % n, one(mode)) for i in range(n)])
    return g, [v for v in range(n) if v % 2 == 0], [v for v in range(n) if v % 2]


def bipartite_complete(a: int, b: int, mode: Mode = Mode.RATIONAL) -> tuple[Graph, list[int], list[int]]:
    """Complete bipartite K_{a,b} with parts [0..a) and [a..a+b)."""
    if a < 1 or b < 1:
        raise ValueError("both parts need at least one node")
    links = [(i, a + j, one(mode)) for i in range(a) for j in range(b)]
    return Graph.from_links(a + b, links), list(range(a)), list(range(a, a + b))


def hard_instance(bipartite_spec: str, diameter: int, mode: str | None = None) -> Instance:
    """Cover-structure instance from a bipartite sub-spec.

    ``bipartite_spec`` is ``cycle:N`` (even cycle) or ``complete:A,B``.
    """
    m = Mode(mode) if mode and mode != "auto" else Mode.RATIONAL
    name, _, params = bipartite_spec.partition(":")
    if name == "cycle":
        g, part_a, part_b = bipartite_cycle(int(params), m)
    elif name == "complete":
        a, _, b = params.partition(",")
        g, part_a, part_b = bipartite_complete(int(a), int(b), m)
    else:
        raise ValueError(f"unknown bipartite family {name!r}; expected cycle:N or complete:A,B")
    return hard_instance_family(g, part_a, part_b, diameter, m)
