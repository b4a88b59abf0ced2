"""Tree decompositions and the treewidth dynamic program for mmbs."""

from .decomposition import (FORGET, INTRODUCE, JOIN, LEAF, TD_CAPACITY, NiceNode,
                            NiceTreeDecomposition, TreeDecomposition, compute_td_small,
                            elimination_ordering, make_nice, td_from_ordering, treewidth,
                            validate_nice, validate_td)
from .dp import (DEFAULT_BAG_LIMIT, NEG_INF, BagLimitExceeded, Criticality, PiInstance,
                 alpha_xz, bag_limit_from_env, check_instance, classify_criticality,
                 is_xz_blocking, mmbs_tw, solve_pi, tchack_check)

__all__ = [
    "BagLimitExceeded", "Criticality", "DEFAULT_BAG_LIMIT", "FORGET", "INTRODUCE", "JOIN",
    "LEAF", "NEG_INF", "NiceNode", "NiceTreeDecomposition", "PiInstance", "TD_CAPACITY",
    "TreeDecomposition", "alpha_xz", "bag_limit_from_env", "check_instance",
    "classify_criticality", "compute_td_small", "elimination_ordering", "is_xz_blocking",
    "make_nice", "mmbs_tw", "solve_pi", "tchack_check", "td_from_ordering", "treewidth",
    "validate_nice", "validate_td",
]
