"""Exact finite-space checks for hyperspace and fuzzified dynamics."""

__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .groundspace import (DynMap, FiniteMetricSpace, NamedSystem, build_space,  # noqa: E402
                          dyadic_grid, explicit, identity_system, iterate, rotation, tent_grid)
from .hyperspace import (CompactSet, EmptySet, enumerate_hyperspace, hausdorff,  # noqa: E402
                         induced_map, union_bound_check, vietoris_contains)
from .gfunction import (CAP2X, DYADIC_STAIRCASE, IDENTITY, MonotoneUnitFunction,  # noqa: E402
                        PiecewiseLinear, Step, find_fixation_level, validate, xi_g, xi_iter)
from .fuzzyset import (FuzzySet, LevelLattice, characteristic, cut, enumerate_fuzzy_grid,  # noqa: E402
                       g_cut, levelwise_distance, support)
from .fuzzifier import (FuzzifiedSystem, check_subset_inclusion, check_top_cut_equality,  # noqa: E402
                        fuzzify_cutwise, fuzzify_direct)
from .levels import BaseLevel, FuzzyLevel, HyperLevel, make_level  # noqa: E402
from .sensitivity import (FamilyPredicate, TimeWindowSet, certify_family,  # noqa: E402
                          certify_sensitivity, cross_level_audit, decompose, fuzzy_witness,
                          separation_times)
from .transitivity import (audit_weak_mixing_transfer, build_separation,  # noqa: E402
                           certify_transitive, certify_weak_mixing, return_set,
                           verify_separation)
from .scenario import Scenario, load_scenario, read_scenario  # noqa: E402
from .suites import Report, emit_report, run_suite  # noqa: E402
