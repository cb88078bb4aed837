"""Shared fixtures and random-instance machinery.

Random instances are always connected (spanning tree first, then extra
links, parallels allowed) with reliabilities drawn from a small exact
set so every engine can be compared with exact rational equality.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from dcrel.graph import Graph, Instance
from dcrel.values import Mode

EXACT_RELS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
POSITIVE_RELS = EXACT_RELS[1:]


def random_connected_graph(rng: random.Random, max_nodes: int = 8, max_links: int = 14,
                           rels=EXACT_RELS) -> Graph:
    n = rng.randint(2, max_nodes)
    m = rng.randint(n - 1, min(max_links, n * (n - 1) // 2 + 2))
    order = list(range(n))
    rng.shuffle(order)
    triples = []
    for i in range(1, n):
        triples.append((order[i], order[rng.randrange(i)], rng.choice(rels)))
    while len(triples) < m:
        u, v = rng.sample(range(n), 2)
        triples.append((u, v, rng.choice(rels)))
    return Graph.from_links(n, triples)


def random_instance(rng: random.Random, max_nodes: int = 8, max_links: int = 14,
                    rels=EXACT_RELS, diameter: int | None = None) -> Instance:
    g = random_connected_graph(rng, max_nodes, max_links, rels)
    s, t = rng.sample(sorted(g.nodes), 2)
    if diameter is None:
        diameter = rng.randint(1, g.node_count - 1)
    return Instance(g, s, t, diameter, Mode.RATIONAL)


@pytest.fixture
def figred():
    """The 8-node worked example: a 7-link path plus chords {1,4} and {1,7}."""
    from dcrel.generators import figred_instance
    return figred_instance("1/2", "rational")


@pytest.fixture
def figred_poly():
    from dcrel.generators import figred_instance
    return figred_instance("p", "poly")
