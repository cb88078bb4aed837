"""Exact computation of hop-constrained two-terminal network reliability.

Links fail independently; the quantity of interest is the probability that
two chosen terminals remain connected by a path of at most ``d`` links.
The package provides enumeration and inclusion-exclusion oracles, closed
forms for small hop bounds, irrelevant-link detection, reliability-preserving
reductions, a factoring engine, and composition tools, all generic over
float, exact-rational, and single-variable polynomial arithmetic.
"""

from .closed_forms import dcr_d1, dcr_d1_terminals, dcr_k2_d2
from .composition import (DistanceProfile, ReplacementSpec, cut_decompose,
                          dcr_composed, distance_profile, hard_instance_family,
                          replace_all, replace_edge)
from .errors import DcrError, ParseError, ResourceLimitError
from .factorization import (FactorConfig, FactorResult, FactorStats, has_perfect_path,
                            ip5m, too_far)
from .generators import (bipartite_complete, bipartite_cycle, complete_instance,
                         cycle_instance, figred_instance, grid_instance,
                         hard_instance, path_instance, replacement_instance)
from .graph import INF, Graph, Instance, Link
from .instance_io import (instance_digest, instance_to_json, parse_instance_file,
                          parse_instance_text, serialize_instance)
from .irrelevance import (IrrelevanceCertificate, PruneResult, check_condition,
                          condition1, condition2, condition3, prune_irrelevant)
from .oracle import (MinPath, MonteCarloEstimate, dcr_bruteforce,
                     dcr_bruteforce_terminals, dcr_inclusion_exclusion,
                     enumerate_minpaths, is_link_relevant_oracle, iter_minpaths,
                     monte_carlo_estimate, state_distance_distribution)
from .reductions import (OpOutcome, ReducedForm, ReductionStep, apply_5p,
                         cut_node_cleanup, parallel_links, pending_node,
                         perfect_neighbors, perfect_path, replay)
from .values import Mode, P_SYMBOL, Poly, Value, check_mode, one, value_str, zero

__version__ = "0.1.0"

__all__ = [
    "DcrError", "ParseError", "ResourceLimitError",
    "Mode", "Poly", "P_SYMBOL", "Value", "check_mode", "one", "zero", "value_str",
    "INF", "Graph", "Instance", "Link",
    "dcr_bruteforce", "dcr_bruteforce_terminals", "dcr_inclusion_exclusion",
    "state_distance_distribution", "MinPath", "iter_minpaths", "enumerate_minpaths",
    "is_link_relevant_oracle", "MonteCarloEstimate", "monte_carlo_estimate",
    "dcr_d1", "dcr_d1_terminals", "dcr_k2_d2",
    "IrrelevanceCertificate", "PruneResult", "check_condition",
    "condition1", "condition2", "condition3", "prune_irrelevant",
    "ReductionStep", "OpOutcome", "ReducedForm", "apply_5p", "replay",
    "pending_node", "perfect_path", "perfect_neighbors", "cut_node_cleanup",
    "parallel_links",
    "FactorConfig", "FactorStats", "FactorResult", "ip5m", "has_perfect_path",
    "too_far",
    "DistanceProfile", "distance_profile", "replace_edge", "replace_all",
    "ReplacementSpec", "dcr_composed", "cut_decompose", "hard_instance_family",
    "parse_instance_text", "parse_instance_file", "serialize_instance",
    "instance_digest", "instance_to_json",
    "path_instance", "cycle_instance", "complete_instance", "grid_instance",
    "figred_instance", "replacement_instance", "bipartite_cycle",
    "bipartite_complete", "hard_instance",
]
