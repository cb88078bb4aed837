"""Distance-based irrelevance certificates and fixed-point pruning.

The 8-node worked example pins the exact behaviour of all three
conditions at d=5 and d=6, including the known incompleteness of the
strongest single-link test (two oracle-irrelevant links stay uncertified
at d=6 until pruning cascades).
"""

import random

import pytest

from dcrel.graph import INF
from dcrel.irrelevance import (IrrelevanceCertificate, check_condition, condition1,
                               condition2, condition3, prune_irrelevant)
from dcrel.oracle import dcr_bruteforce, is_link_relevant_oracle
from conftest import random_instance


def by_pair(inst):
    return {inst.graph.link(l).endpoints(): l for l in inst.graph.links}


def certified_pairs(inst, level):
    g = inst.graph
    return {g.link(l).endpoints() for l in g.links
            if check_condition(inst, l, level) is not None}


# -- single-link condition tables on the worked example ----------------------

def test_d6_tables(figred):
    assert certified_pairs(figred, "c1") == set()
    assert certified_pairs(figred, "c2") == set()
    assert certified_pairs(figred, "c3") == {(1, 2)}


def test_d5_tables(figred):
    inst = figred.with_diameter(5)
    assert certified_pairs(inst, "c1") == {(2, 3), (3, 4)}
    assert certified_pairs(inst, "c2") == {(1, 2), (2, 3), (3, 4)}
    assert certified_pairs(inst, "c3") == {(1, 2), (2, 3), (3, 4)}


def test_c2_certifies_the_chord_neighbour_at_d5(figred):
    inst = figred.with_diameter(5)
    lid = by_pair(inst)[(1, 2)]
    assert condition1(inst, lid) is None
    cert = condition2(inst, lid)
    assert cert is not None
    assert cert.sums == (5, 5)  # both orientations exactly meet the bound


def test_c3_certificate_on_the_chord_neighbour_at_d6(figred):
    lid = by_pair(figred)[(1, 2)]
    assert condition2(figred, lid) is None
    cert = condition3(figred, lid)
    assert cert == IrrelevanceCertificate(lid, "c3", (6, INF))


def test_c3_misses_interior_path_links_at_d6(figred):
    # oracle-irrelevant, yet node-excluded distance sums are (5, 5) < 6:
    # the single-link test cannot certify them before {1,2} is removed
    for pair in ((2, 3), (3, 4)):
        lid = by_pair(figred)[pair]
        assert not is_link_relevant_oracle(figred, lid)
        assert condition3(figred, lid) is None
    g, s, t, d = figred.graph, 0, 7, 6
    l = g.link(by_pair(figred)[(3, 4)])
    x, y = l.u, l.v
    sum_xy = g.distance(s, x, excluded={y, t}) + g.distance(y, t, excluded={s, x})
    sum_yx = g.distance(s, y, excluded={x, t}) + g.distance(x, t, excluded={s, y})
    assert (sum_xy, sum_yx) == (5, 5)


def test_oracle_irrelevant_set_at_d6(figred):
    pairs = by_pair(figred)
    irrelevant = {p for p, l in pairs.items() if not is_link_relevant_oracle(figred, l)}
    assert irrelevant == {(1, 2), (2, 3), (3, 4)}


# -- fixed-point pruning -------------------------------------------------------

def test_prune_cascade_reaches_the_oracle_set(figred):
    result = prune_irrelevant(figred, "c3")
    removed = [(figred.graph.link(c.link).endpoints(), c.sums) for c in result.certificates]
    assert removed == [
        ((1, 2), (6, INF)),
        ((2, 3), (INF, INF)),
        ((3, 4), (INF, INF)),
    ]
    kept = {result.instance.graph.link(l).endpoints() for l in result.instance.graph.links}
    assert kept == {(0, 1), (1, 4), (1, 7), (4, 5), (5, 6), (6, 7)}


def test_prune_preserves_reliability(figred):
    rng = random.Random(17)
    cases = [figred, figred.with_diameter(5), figred.with_diameter(4)]
    cases += [random_instance(rng, max_nodes=7, max_links=11) for _ in range(40)]
    for inst in cases:
        before = dcr_bruteforce(inst)
        for level in ("c1", "c2", "c3"):
            assert dcr_bruteforce(prune_irrelevant(inst, level).instance) == before


def test_prune_off_is_identity(figred):
    result = prune_irrelevant(figred, "off")
    assert result.instance is figred
    assert result.certificates == ()


def test_prune_unknown_level_rejected(figred):
    with pytest.raises(ValueError):
        prune_irrelevant(figred, "c9")


# -- soundness and strength ordering ------------------------------------------

def test_conditions_sound_and_nested_on_random_instances():
    rng = random.Random(23)
    for _ in range(60):
        inst = random_instance(rng, max_nodes=7, max_links=11)
        c1 = certified_pairs(inst, "c1")
        c2 = certified_pairs(inst, "c2")
        c3 = certified_pairs(inst, "c3")
        assert c1 <= c2 <= c3
        for lid in inst.graph.links:
            if check_condition(inst, lid, "c3") is not None:
                assert not is_link_relevant_oracle(inst, lid)


def test_certificate_sums_meet_the_bound():
    rng = random.Random(29)
    seen = 0
    for _ in range(80):
        inst = random_instance(rng, max_nodes=7, max_links=11)
        for lid in inst.graph.links:
            for level in ("c1", "c2", "c3"):
                cert = check_condition(inst, lid, level)
                if cert is not None:
                    assert all(s >= inst.diameter for s in cert.sums)
                    assert cert.condition == level
                    seen += 1
    assert seen > 20  # the sweep actually exercised certificates


def test_certificate_json_uses_inf_string(figred):
    cert = condition3(figred, by_pair(figred)[(1, 2)])
    assert cert.to_json() == {"link": cert.link, "condition": "c3", "sums": [6, "inf"]}
