"""Reliability-preserving operations and their replayable traces.

Every operation must satisfy DCR(original) = multiplier * DCR(reduced)
exactly; the oracle arbitrates on randomized targets as well as on
hand-built shapes exercising each guard.
"""

import random
from fractions import Fraction

from dcrel.graph import Graph, Instance
from dcrel.irrelevance import prune_irrelevant
from dcrel.oracle import dcr_bruteforce
from dcrel.reductions import (KIND_PENDING, apply_5p, cut_node_cleanup,
                              parallel_links, pending_node, perfect_neighbors,
                              perfect_path, replay)
from dcrel.values import Mode, Poly
from conftest import random_instance

H = Fraction(1, 2)
Q = Fraction(1, 4)


def rational(n, links, s, t, d):
    return Instance(Graph.from_links(n, links), s, t, d, Mode.RATIONAL)


def holds_identity(inst, outcome):
    return dcr_bruteforce(inst) == outcome.multiplier * dcr_bruteforce(outcome.instance)


# -- pending node ---------------------------------------------------------------

def test_pending_runs_to_its_own_fixed_point():
    # dead-end chain 2-3-4 is eaten, then the source pendant contracts too
    inst = rational(5, [(0, 1, H), (1, 2, H), (2, 3, H), (3, 4, H)], 0, 2, 3)
    out = pending_node(inst)
    assert out is not None
    assert sorted(out.instance.graph.nodes) == [1, 2]
    assert out.instance.source == 1
    assert out.instance.diameter == 2
    assert out.multiplier == H
    assert holds_identity(inst, out)


def test_pending_contracts_terminal_and_lowers_bound():
    inst = rational(3, [(0, 1, Q), (1, 2, H)], 0, 2, 2)
    out = pending_node(inst)
    assert out is not None
    assert out.multiplier == Q
    assert out.instance.diameter == 1
    assert out.instance.source == 1  # absorbed into the inner endpoint
    assert holds_identity(inst, out)
    assert dcr_bruteforce(inst) == Q * H


def test_pending_skips_contract_at_diameter_one():
    inst = rational(3, [(0, 1, Q), (1, 2, H)], 0, 2, 1)
    assert pending_node(inst) is None
    assert dcr_bruteforce(inst) == 0


def test_pending_skips_direct_terminal_link():
    inst = rational(2, [(0, 1, H)], 0, 1, 1)
    assert pending_node(inst) is None


def test_pending_applies_on_random_targets():
    rng = random.Random(71)
    applied = 0
    while applied < 60:
        inst = random_instance(rng, max_nodes=7, max_links=9)
        out = pending_node(inst)
        if out is None:
            continue
        assert holds_identity(inst, out)
        applied += 1


# -- perfect path ----------------------------------------------------------------

def test_perfect_path_concentrates_chain_product():
    inst = rational(4, [(0, 1, H), (1, 2, Q), (2, 3, H)], 0, 3, 3)
    out = perfect_path(inst)
    assert out is not None
    rels = sorted(str(out.instance.graph.link(l).reliability)
                  for l in out.instance.graph.links)
    assert rels == ["1", "1", "1/16"]
    assert out.multiplier == 1
    assert out.instance.diameter == 3  # hop counts are preserved
    assert holds_identity(inst, out)


def test_perfect_path_skips_already_concentrated_chain():
    one = Fraction(1)
    inst = rational(4, [(0, 1, one), (1, 2, one), (2, 3, Q)], 0, 3, 3)
    assert perfect_path(inst) is None


def test_perfect_path_applies_on_random_targets():
    rng = random.Random(72)
    applied = 0
    while applied < 60:
        inst = random_instance(rng, max_nodes=8, max_links=10)
        out = perfect_path(inst)
        if out is None:
            continue
        assert holds_identity(inst, out)
        applied += 1


# -- perfect neighbors -------------------------------------------------------------

def test_perfect_neighbors_merges_and_lowers_bound():
    one = Fraction(1)
    inst = rational(4, [(0, 1, one), (0, 2, one), (1, 3, H), (2, 3, H)], 0, 3, 3)
    out = perfect_neighbors(inst)
    assert out is not None
    assert out.instance.diameter == 2
    assert out.instance.graph.node_count == 2
    assert out.instance.graph.link_count == 2  # both paths survive as parallels
    assert holds_identity(inst, out)
    assert dcr_bruteforce(inst) == Fraction(3, 4)


def test_perfect_neighbors_requires_all_incident_perfect():
    one = Fraction(1)
    inst = rational(4, [(0, 1, one), (0, 2, H), (1, 3, H), (2, 3, H)], 0, 3, 3)
    assert perfect_neighbors(inst) is None


def test_perfect_neighbors_skips_when_terminals_adjacent():
    one = Fraction(1)
    inst = rational(3, [(0, 2, one), (0, 1, one), (1, 2, H)], 0, 2, 3)
    assert perfect_neighbors(inst) is None


def test_perfect_neighbors_applies_on_random_targets():
    rng = random.Random(73)
    applied = 0
    while applied < 40:
        inst = random_instance(rng, max_nodes=7, max_links=10,
                               rels=(Fraction(1), Fraction(1), H, Q))
        out = perfect_neighbors(inst)
        if out is None:
            continue
        assert holds_identity(inst, out)
        applied += 1


# -- cut-node cleanup ----------------------------------------------------------------

def test_cut_cleanup_removes_doomed_component():
    # triangle 2-3-4 hangs off cut node 2; no elementary 0-2 path enters it
    inst = rational(5, [(0, 1, H), (1, 2, H), (2, 3, H), (3, 4, H), (4, 2, H)], 0, 2, 3)
    out = cut_node_cleanup(inst)
    assert out is not None
    assert sorted(out.instance.graph.nodes) == [0, 1, 2]
    assert out.multiplier == 1
    assert holds_identity(inst, out)


def test_cut_cleanup_keeps_terminal_components():
    inst = rational(3, [(0, 1, H), (1, 2, H)], 0, 2, 2)
    assert cut_node_cleanup(inst) is None


def test_cut_cleanup_applies_on_random_targets():
    rng = random.Random(74)
    applied = 0
    while applied < 40:
        inst = random_instance(rng, max_nodes=8, max_links=9)
        out = cut_node_cleanup(inst)
        if out is None:
            continue
        assert holds_identity(inst, out)
        applied += 1


# -- parallel links -------------------------------------------------------------------

def test_parallel_merge_formula():
    inst = rational(2, [(0, 1, H), (0, 1, Q), (0, 1, H)], 0, 1, 1)
    out = parallel_links(inst)
    assert out is not None
    assert out.instance.graph.link_count == 1
    merged = next(iter(out.instance.graph.links.values()))
    assert merged.reliability == 1 - (1 - H) * (1 - Q) * (1 - H)
    assert merged.id == 3  # fresh id, never a reused one
    assert holds_identity(inst, out)


def test_parallel_merge_works_in_poly_mode():
    from dcrel.values import P_SYMBOL
    g = Graph.from_links(2, [(0, 1, P_SYMBOL), (0, 1, P_SYMBOL)])
    inst = Instance(g, 0, 1, 1, Mode.POLY)
    out = parallel_links(inst)
    merged = next(iter(out.instance.graph.links.values()))
    assert merged.reliability == Poly((0, 2, -1))  # 2p - p^2


def test_parallel_applies_on_random_targets():
    rng = random.Random(75)
    applied = 0
    while applied < 40:
        inst = random_instance(rng, max_nodes=5, max_links=9)
        out = parallel_links(inst)
        if out is None:
            continue
        assert holds_identity(inst, out)
        applied += 1


# -- the full cycle ----------------------------------------------------------------------

def test_apply_5p_on_pruned_worked_example(figred_poly):
    pruned = prune_irrelevant(figred_poly, "c3").instance
    red = apply_5p(pruned)
    from dcrel.values import P_SYMBOL
    p = P_SYMBOL
    assert red.multiplier == p
    inst = red.instance
    assert inst.diameter == 5
    assert inst.terminals == frozenset({1, 7})
    rels = {inst.graph.link(l).endpoints(): inst.graph.link(l).reliability
            for l in inst.graph.links}
    assert rels == {(1, 4): Poly((1,)), (4, 5): Poly((1,)), (5, 6): Poly((1,)),
                    (6, 7): p ** 4, (1, 7): p}


def test_apply_5p_identity_and_fixed_point():
    rng = random.Random(76)
    for _ in range(60):
        inst = random_instance(rng, max_nodes=7, max_links=10)
        red = apply_5p(inst)
        assert dcr_bruteforce(inst) == red.multiplier * dcr_bruteforce(red.instance)
        again = apply_5p(red.instance)
        assert again.instance == red.instance
        assert again.multiplier == 1
        assert again.steps == ()


def test_steps_record_kind_and_multiplier():
    inst = rational(3, [(0, 1, Q), (1, 2, H)], 0, 2, 2)
    red = apply_5p(inst)
    kinds = [s.kind for s in red.steps]
    assert KIND_PENDING in kinds
    contract = [s for s in red.steps if s.detail.get("action") == "contract"][0]
    assert contract.multiplier == Q
    assert contract.diameter_delta == -1
    doc = contract.to_json()
    assert doc["kind"] == KIND_PENDING
    assert doc["multiplier"] == "1/4"


# -- replay -----------------------------------------------------------------------------

def test_replay_rebuilds_reduced_instance_exactly():
    rng = random.Random(77)
    for _ in range(60):
        inst = random_instance(rng, max_nodes=7, max_links=10)
        red = apply_5p(inst)
        assert replay(inst, red.steps) == red.instance


def test_replay_covers_prune_steps(figred):
    pruned = prune_irrelevant(figred, "c3")
    red = apply_5p(pruned.instance)
    from dcrel.reductions import KIND_PRUNE, ReductionStep
    from dcrel.values import one
    steps = tuple(ReductionStep(KIND_PRUNE, c.to_json(), one(figred.mode))
                  for c in pruned.certificates) + red.steps
    assert replay(figred, steps) == red.instance
