"""Deleted-digits Cantor sets: exact translate intersections.

Core objects: ``DigitSet`` (base and retained digits), ``NAryExpansion``
(exact digit streams for translations), the brute-force interval oracle,
the offset-transition automaton, the constructive translation streams, and
the geometry of the translation set F.
"""

from .digits import (
    DifferenceSet,
    DigitSet,
    common_divisor,
    difference_set,
    is_separated,
    new_digit_set,
)
from .expansion import (
    NAryExpansion,
    Rational,
    alternate_representation,
    canonical,
    format_expansion,
    from_rational,
    is_terminating,
    parse_expansion,
    to_rational,
    truncate,
)
from .oracle import (
    AlignmentState,
    LevelIntervalSet,
    difference_level,
    intersect_levels,
    level_intervals,
    offset_profile,
    pair_census,
)
from .automaton import (
    CensusSequence,
    DimensionResult,
    OffsetTransitionMatrix,
    box_dimension_periodic,
    census_sequence,
    count_slope,
    evolve,
    is_member,
    refined_census_sequence,
    transition_matrix,
)
from .constructor import (
    construct_translation,
    dense_translation,
    dense_translation_detailed,
    stairs,
)
from .fgeometry import (
    BRepresentation,
    FReport,
    b_representation,
    f_is_interval,
    f_report,
    g_ifs_level,
    hull_is_saturated,
    osc_and_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentState",
    "BRepresentation",
    "CensusSequence",
    "DifferenceSet",
    "DigitSet",
    "DimensionResult",
    "FReport",
    "LevelIntervalSet",
    "NAryExpansion",
    "OffsetTransitionMatrix",
    "Rational",
    "alternate_representation",
    "b_representation",
    "box_dimension_periodic",
    "canonical",
    "census_sequence",
    "common_divisor",
    "construct_translation",
    "count_slope",
    "dense_translation",
    "dense_translation_detailed",
    "difference_level",
    "difference_set",
    "evolve",
    "f_is_interval",
    "f_report",
    "format_expansion",
    "from_rational",
    "g_ifs_level",
    "hull_is_saturated",
    "intersect_levels",
    "is_member",
    "is_separated",
    "is_terminating",
    "level_intervals",
    "new_digit_set",
    "offset_profile",
    "osc_and_dimension",
    "pair_census",
    "parse_expansion",
    "refined_census_sequence",
    "stairs",
    "to_rational",
    "transition_matrix",
    "truncate",
]
