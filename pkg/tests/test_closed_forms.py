"""Closed forms for d=1 and the two-terminal d=2 case."""

import random
from fractions import Fraction

import pytest

from dcrel.closed_forms import dcr_d1, dcr_d1_terminals, dcr_k2_d2
from dcrel.graph import Graph, Instance
from dcrel.oracle import dcr_bruteforce, dcr_bruteforce_terminals
from dcrel.values import Mode
from conftest import random_connected_graph, random_instance

H = Fraction(1, 2)


def test_d1_single_link():
    g = Graph.from_links(2, [(0, 1, H)])
    assert dcr_d1(Instance(g, 0, 1, 1, Mode.RATIONAL)) == H


def test_d1_no_direct_link_is_zero():
    g = Graph.from_links(3, [(0, 1, H), (1, 2, H)])
    assert dcr_d1(Instance(g, 0, 2, 1, Mode.RATIONAL)) == 0


def test_d1_merges_parallels():
    g = Graph.from_links(2, [(0, 1, H), (0, 1, H), (0, 1, H)])
    assert dcr_d1(Instance(g, 0, 1, 1, Mode.RATIONAL)) == Fraction(7, 8)


def test_d1_requires_diameter_one():
    g = Graph.from_links(2, [(0, 1, H)])
    with pytest.raises(ValueError):
        dcr_d1(Instance(g, 0, 1, 2, Mode.RATIONAL))


def test_d1_general_terminals_is_pair_product():
    # triangle with K = all nodes: each pair needs its own link
    g = Graph.from_links(3, [(0, 1, H), (1, 2, H), (0, 2, H)])
    assert dcr_d1_terminals(g, {0, 1, 2}, Mode.RATIONAL) == Fraction(1, 8)
    # a star has no links between leaves
    star = Graph.from_links(4, [(0, 1, H), (0, 2, H), (0, 3, H)])
    assert dcr_d1_terminals(star, {1, 2, 3}, Mode.RATIONAL) == 0


def test_k4_half_reliability_d2():
    links = [(i, j, H) for i in range(4) for j in range(i + 1, 4)]
    inst = Instance(Graph.from_links(4, links), 0, 3, 2, Mode.RATIONAL)
    assert dcr_k2_d2(inst) == Fraction(23, 32)
    assert dcr_bruteforce(inst) == Fraction(23, 32)


def test_k2_d2_requires_diameter_two():
    g = Graph.from_links(2, [(0, 1, H)])
    with pytest.raises(ValueError):
        dcr_k2_d2(Instance(g, 0, 1, 1, Mode.RATIONAL))


def test_d1_matches_oracle_on_100_random_instances():
    rng = random.Random(61)
    for _ in range(100):
        inst = random_instance(rng, max_nodes=7, max_links=12, diameter=1)
        assert dcr_d1(inst) == dcr_bruteforce(inst)


def test_d1_terminals_matches_oracle_on_random_instances():
    rng = random.Random(62)
    for _ in range(50):
        g = random_connected_graph(rng, max_nodes=6, max_links=10)
        k = rng.randint(2, g.node_count)
        terms = rng.sample(sorted(g.nodes), k)
        assert dcr_d1_terminals(g, terms, Mode.RATIONAL) == \
            dcr_bruteforce_terminals(g, terms, 1, Mode.RATIONAL)


def test_k2_d2_matches_oracle_on_100_random_instances():
    rng = random.Random(63)
    for _ in range(100):
        inst = random_instance(rng, max_nodes=7, max_links=12, diameter=2)
        assert dcr_k2_d2(inst) == dcr_bruteforce(inst)
