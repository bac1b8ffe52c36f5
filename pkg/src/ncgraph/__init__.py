"""Non-commuting, non-generating graphs of finite groups.

Groups are enumerated into Cayley tables, subgroup lattices are computed
exhaustively, and each structural result about nc(G) is checked against
brute force.
"""
from .core import (FiniteGroup, GroupError, GroupTooLarge, Permutation, compose,
                   element_order, enumerate_group, from_cayley_table)
from .corpus import (builtin, corpus_selectors, export_dot, export_report, fixture_groups,
                     iter_corpus, load_group, save_group)
from .graphs import (ComponentSummary, ElementGraph, GraphKind, build_graph,
                     component_summary, distance, hierarchy_check)
from .structure import (GoursatTriple, LatticeTooLarge, Subgroup, SubgroupLattice,
                        all_subgroups, center, centralizer, direct_product, frattini,
                        goursat_maximal_subgroups, is_nilpotent, is_two_generated,
                        maximal_subgroups, structural_predicates, sylow_subgroup,
                        unique_maximal_membership)
from .theorems import (CHECK_IDS, NilpotentCase, PGroupCase, Verdict, classify_nilpotent,
                       classify_p_group, run_check, verify_group)

__version__ = "0.1.0"
