"""Exact verification of EKR-type statements for independent sets in trees."""

from .constructions import (InjectionTrace, lstar_injection, remark_family, root_center_search,
                            starlm_injection, theorem4_compression)
from .enumeration import (SetFamily, count_by_size, count_star_by_size, enumerate_r_sets, fib_count,
                          iter_independent_sets, lemma12_decomposition, ratio_root_leaf, star_family)
from .errors import CapacityError, EkrError, EnumCapError, PreconditionError, ResourceLimitError, SearchBudgetError
from .formulas import binomial, ekr_star_bound, kaclaw_root_count, limit_ratio, mainstar_size
from .graph import (Graph, build_claw, build_depth_two_claw, build_disjoint_complete, build_elongated_claw,
                    build_ka_claw, build_path, build_superclaw, closed_delete, delete_vertex, join_with_new_root,
                    mu, random_tree)
from .search import EkrVerdict, ekr_verdict, max_intersecting, max_nonstar_intersecting, representative_map, shadow

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
