"""Quantized bimatrix games under the MW quantization scheme and its extension
with a classical/quantum choice for each player."""

from .classify import Classification, classify_emw, diagonal_mixture, equivalent_pure_state, is_separable_pure
from .emw import EmwConfig, emw_bimatrix, emw_config, emw_final_state, emw_payoff
from .game import BimatrixGame, PayoffPair, bimatrix, equivalent_strategies, expected_payoff, quotient_game
from .mw import mw_final_state, mw_output_game, mw_payoff, payoff_operator_from, shift_operator
from .nash import Equilibrium, all_equilibria, best_responses, pure_nash, support_enumeration
from .refined import (
    RefinedStrategy,
    UnitaryParams,
    classical_recovery_params,
    companion_operator,
    refined_final_state,
    two_param_unitary,
)

__all__ = [
    "BimatrixGame",
    "Classification",
    "EmwConfig",
    "Equilibrium",
    "PayoffPair",
    "RefinedStrategy",
    "UnitaryParams",
    "all_equilibria",
    "best_responses",
    "bimatrix",
    "classical_recovery_params",
    "classify_emw",
    "companion_operator",
    "diagonal_mixture",
    "emw_bimatrix",
    "emw_config",
    "emw_final_state",
    "emw_payoff",
    "equivalent_pure_state",
    "equivalent_strategies",
    "expected_payoff",
    "is_separable_pure",
    "mw_final_state",
    "mw_output_game",
    "mw_payoff",
    "payoff_operator_from",
    "pure_nash",
    "quotient_game",
    "refined_final_state",
    "shift_operator",
    "support_enumeration",
    "two_param_unitary",
]
