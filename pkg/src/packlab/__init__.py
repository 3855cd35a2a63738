"""packlab: a bin-packing algorithms laboratory.

Exact-rational instances, classical heuristics, a partition/cover
approximation scheme, a level-state dynamic program for pre-opened bins, and
exact oracles for ground truth.
"""

from .core import (Instance, Packing, SizeProfile, ValidationReport,
                   make_instance, parse_instance, profile, validate_packing)
from .covers import (BinConfig, ConfigSet, Cover, SegmentVector,
                     cover_union, enumerate_configs, min_cover)
from .heuristics import (best_fit, decreasing_variant, first_fit, next_fit,
                         solve_heuristic)
from .leveldp import DpConfig, DpResult, LevelState, assign, solve_rounded
from .oracle import exact_opt, exhaustive_opt, lower_bound_volume
from .partition import (DistributionVector, PartitionPlan, algorithm_b,
                        cover_to_packing, distribution_vector, segment_of,
                        sweep_parameters, truncate_segment)

__all__ = [name for name in dir() if not name.startswith("_")]
