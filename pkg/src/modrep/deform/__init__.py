"""Deformations of residual representations over Artinian local rings."""

from __future__ import annotations

from .cohomology import BAR_BUDGET, CohomologyReport, cohomology_dims
from .lifts import (
    Lift,
    LiftClass,
    ObstructionResult,
    TangentCorrespondence,
    all_lifts,
    enumerate_lifts,
    lift_from_generators,
    lifts_isomorphic,
    lifts_plainly_isomorphic,
    obstruction_class,
    search_lift,
    swapped_identification_pair,
    tangent_correspondence,
    trivial_lift,
)
from .ring import (
    LocalAlgebra,
    SmallExtension,
    dual_numbers,
    power_series_truncated,
    residue_field,
    square_zero,
    truncated_polynomial,
    witt_truncated,
)
from .versal import (
    MapCountCheck,
    VersalPresentation,
    algebra_maps,
    classifying_map_check,
    count_maps,
    specialize,
    versal_presentation_truncated,
)

__all__ = [
    "BAR_BUDGET",
    "CohomologyReport",
    "Lift",
    "LiftClass",
    "LocalAlgebra",
    "MapCountCheck",
    "ObstructionResult",
    "SmallExtension",
    "TangentCorrespondence",
    "VersalPresentation",
    "algebra_maps",
    "all_lifts",
    "classifying_map_check",
    "cohomology_dims",
    "count_maps",
    "dual_numbers",
    "enumerate_lifts",
    "lift_from_generators",
    "lifts_isomorphic",
    "lifts_plainly_isomorphic",
    "obstruction_class",
    "power_series_truncated",
    "residue_field",
    "search_lift",
    "specialize",
    "square_zero",
    "swapped_identification_pair",
    "tangent_correspondence",
    "trivial_lift",
    "truncated_polynomial",
    "versal_presentation_truncated",
    "witt_truncated",
]
