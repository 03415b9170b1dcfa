"""Moral-hazard preferences over contracts.

Valuation of contracts under costly output-distribution choice, reduction
of standard effort models, identification of the cost/utility pair from
choice oracles, axiom falsification, and confidence/optimism comparators.
"""

from .config import DEFAULT, Tolerances
from .core import (
    Contract,
    CostFunction,
    Lottery,
    OutputSpace,
    SimplexPoint,
    UtilityFunction,
    cost_at,
    expected_utility,
    fosd,
    mix_contracts,
    mix_lotteries,
    simplex_grid,
    utility_vector,
)
from .models import (
    Comparison,
    PreferenceOracle,
    argmax_efforts,
    certainty_equivalent,
    compare,
    conjugate,
    contract_from_utility_vector,
    value,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT",
    "Tolerances",
    "OutputSpace",
    "Lottery",
    "Contract",
    "SimplexPoint",
    "UtilityFunction",
    "CostFunction",
    "expected_utility",
    "utility_vector",
    "mix_contracts",
    "mix_lotteries",
    "fosd",
    "simplex_grid",
    "cost_at",
    "Comparison",
    "PreferenceOracle",
    "value",
    "compare",
    "argmax_efforts",
    "conjugate",
    "certainty_equivalent",
    "contract_from_utility_vector",
    "__version__",
]
