"""Counter-model search, filtration and the decision procedure."""

from secretlogic.decision.filtration import FiltrationReport, FiltrationResult, filtrate, verify_filtration
from secretlogic.decision.search import (
    Invalid,
    SearchConfig,
    SearchInternalError,
    SearchOutcome,
    Timeout,
    Valid,
    ValidUpTo,
    decide,
    find_countermodel,
    fmp_bound,
    nominal_bound,
    outcome_to_json,
)

__all__ = [
    "FiltrationReport",
    "FiltrationResult",
    "Invalid",
    "SearchConfig",
    "SearchInternalError",
    "SearchOutcome",
    "Timeout",
    "Valid",
    "ValidUpTo",
    "decide",
    "filtrate",
    "find_countermodel",
    "fmp_bound",
    "nominal_bound",
    "outcome_to_json",
    "verify_filtration",
]
