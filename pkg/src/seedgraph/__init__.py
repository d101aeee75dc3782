"""Exact engine for labelled cluster seeds and their global mutation classes."""

from .explore import (
    ExplorationReport,
    LabelledGraph,
    SpecializedSeed,
    certify_seed_count,
    explore_quivers,
    explore_seeds,
    is_small,
)
from .laurent import InexactDivision, LaurentPoly
from .quiver import PRESETS, Quiver, preset
from .quotient import (
    GroupReport,
    PropagationConflict,
    Relation,
    SeedAutomorphism,
    compute_group,
    point_group,
    quotient_graph,
    same_stabilizer,
)
from .seeds import GroupElement, LabelledSeed
from .verify import (
    check_markov,
    run_lemma_suite,
    run_mainthm_suite,
    run_property_suite,
)

__version__ = "0.1.0"

__all__ = [
    "ExplorationReport",
    "GroupElement",
    "GroupReport",
    "InexactDivision",
    "LabelledGraph",
    "LabelledSeed",
    "LaurentPoly",
    "PRESETS",
    "PropagationConflict",
    "Quiver",
    "Relation",
    "SeedAutomorphism",
    "SpecializedSeed",
    "certify_seed_count",
    "check_markov",
    "compute_group",
    "explore_quivers",
    "explore_seeds",
    "is_small",
    "point_group",
    "preset",
    "quotient_graph",
    "run_lemma_suite",
    "run_mainthm_suite",
    "run_property_suite",
    "same_stabilizer",
    "__version__",
]
