"""Exact slope/instability calculator.

Rationals cross the boundary as fractions.Fraction (ints accepted, floats
rejected); ranks wider than machine integers come back as python ints.
"""

import json as _json
import os as _os

from ._frobstab import (
    HypothesisError,
    InputError,
    VarietyContext,
    bound_bn_subsheaf,
    bound_instab_tl,
    bound_langer_gap,
    bound_pushforward_case_i,
    bound_pushforward_case_ii,
    bound_sun,
    bound_tensor,
    bound_tl2,
    canonical_filtration_ranks,
    check_zi_instability,
    deg_pushforward_forms,
    dominates,
    dominates_same_endpoints,
    dvec,
    forms_closed,
    forms_recurrence,
    instability_tl_exact,
    mu_pushforward,
    normalize,
    polygon_of,
    profile_stats,
    pushforward_stats,
    rank_tl,
    rank_tl_oracle,
    selfcheck_json,
    stability_advisor,
    tl2_case_gap,
    tl_decomposition,
    tl_extremes,
    z1_hn,
    z1_hn_assumptions,
)

DEFAULT_SEED = 123456789


def selfcheck(grid="small", seed=None):
    """Run the built-in oracle suites; returns the parsed report."""
    if seed is None:
        seed = int(_os.environ.get("FROBSTAB_SEED", DEFAULT_SEED))
    return _json.loads(selfcheck_json(grid, seed))


__all__ = [
    "DEFAULT_SEED",
    "HypothesisError",
    "InputError",
    "VarietyContext",
    "bound_bn_subsheaf",
    "bound_instab_tl",
    "bound_langer_gap",
    "bound_pushforward_case_i",
    "bound_pushforward_case_ii",
    "bound_sun",
    "bound_tensor",
    "bound_tl2",
    "canonical_filtration_ranks",
    "check_zi_instability",
    "deg_pushforward_forms",
    "dominates",
    "dominates_same_endpoints",
    "dvec",
    "forms_closed",
    "forms_recurrence",
    "instability_tl_exact",
    "mu_pushforward",
    "normalize",
    "polygon_of",
    "profile_stats",
    "pushforward_stats",
    "rank_tl",
    "rank_tl_oracle",
    "selfcheck",
    "selfcheck_json",
    "stability_advisor",
    "tl2_case_gap",
    "tl_decomposition",
    "tl_extremes",
    "z1_hn",
    "z1_hn_assumptions",
]
