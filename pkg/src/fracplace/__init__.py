"""Minimum dedicated sensor placement for structural observability of
discrete-time fractional-order linear systems.

The numeric layer (:mod:`fracplace.fraccore`) simulates systems and tests
observability of concrete realizations; the structural layer
(:mod:`fracplace.structure`, :mod:`fracplace.matching`,
:mod:`fracplace.placement`) works on zero/nonzero patterns only and
computes provably minimal dedicated sensor sets.  :mod:`fracplace.oracle`
holds independent brute-force checks used by the test suite, and
:mod:`fracplace.cli` exposes the ``fracplace`` command.

State indices are 0-based throughout the Python API; the file format and
the command line use 1-based indices.
"""

from .fraccore import (
    FracSystem,
    GlCoefficients,
    Trajectory,
    TransitionSequence,
    gl_coefficient,
    gl_tails,
    is_observable_numeric,
    numeric_rank,
    observability_matrix,
    simulate,
    transition_factors,
)
from .matching import (
    Matching,
    WeightedBipartite,
    generic_rank,
    max_matching,
    min_weight_max_matching,
)
from .oracle import (
    RealizationConfig,
    draw_orders,
    enumerate_matchings,
    exhaustive_min_placement,
    random_realization,
)
from .placement import (
    Certificate,
    PlacementReport,
    SensorSet,
    minimal_sensors,
    sink_scc_columns,
    verify_observability,
)
from .structure import (
    Condensation,
    Pattern,
    condense,
    non_accessible_states,
    pattern_of,
    transition_patterns,
    transition_union,
)
from .sweep import SweepRow, SweepSpec, run_sweep
from .sysfile import SystemFile, load_system_file, parse_system_file

__version__ = "0.1.0"

__all__ = [
    "FracSystem",
    "GlCoefficients",
    "TransitionSequence",
    "Trajectory",
    "gl_coefficient",
    "gl_tails",
    "transition_factors",
    "simulate",
    "observability_matrix",
    "numeric_rank",
    "is_observable_numeric",
    "Pattern",
    "Condensation",
    "pattern_of",
    "transition_union",
    "transition_patterns",
    "condense",
    "non_accessible_states",
    "WeightedBipartite",
    "Matching",
    "max_matching",
    "min_weight_max_matching",
    "generic_rank",
    "SensorSet",
    "Certificate",
    "PlacementReport",
    "sink_scc_columns",
    "minimal_sensors",
    "verify_observability",
    "RealizationConfig",
    "random_realization",
    "draw_orders",
    "exhaustive_min_placement",
    "enumerate_matchings",
    "SweepSpec",
    "SweepRow",
    "run_sweep",
    "SystemFile",
    "parse_system_file",
    "load_system_file",
]
