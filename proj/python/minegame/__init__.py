"""Mining-market equilibria and proof-of-work risk toolkit.

The heavy lifting lives in the compiled `_core` extension; this package
re-exports its public surface.
"""

from ._core import (
    ConvergenceError,
    MarketParams,
    NashOutcome,
    RaceEstimate,
    StackelbergOutcome,
    ValidationError,
    attacker_win_probability,
    best_response,
    best_response_iteration,
    draw_miner_prices,
    grid_search_reward,
    min_network_power,
    miner_profit,
    nash_equilibrium,
    optimal_reward,
    optimal_reward_unclamped,
    platform_utility,
    regularized_incomplete_beta,
    simulate_attack_race,
    stackelberg_solve,
    win_probability,
)

__all__ = [
    "ConvergenceError",
    "MarketParams",
    "NashOutcome",
    "RaceEstimate",
    "StackelbergOutcome",
    "ValidationError",
    "attacker_win_probability",
    "best_response",
    "best_response_iteration",
    "draw_miner_prices",
    "grid_search_reward",
    "min_network_power",
    "miner_profit",
    "nash_equilibrium",
    "optimal_reward",
    "optimal_reward_unclamped",
    "platform_utility",
    "regularized_incomplete_beta",
    "simulate_attack_race",
    "stackelberg_solve",
    "win_probability",
]

__version__ = "0.1.0"
