#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace minegame {

// Library-wide comparison tolerances. Algebraic identities (power totals,
// utility forms) hold to 1e-9 relative; derivative cross-checks against
// central differences to 1e-6 relative.
inline constexpr double kAlgebraicRelTol = 1e-9;
inline constexpr double kDerivativeRelTol = 1e-6;

// Thrown on malformed inputs (bad parameters, broken invariants).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative routine fails to converge.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One prospective miner: stable 0-based id plus the unit price it pays
// per unit of hash power per day.
struct MinerProfile {
    std::size_t id = 0;
    double unit_price = 0.0;
};

// Platform-side constants of the reward market.
struct MarketParams {
    double alpha = 10000.0;        // utility weight on network power, > 1
    double beta = 0.001;           // sigmoid rate per unit hash power, in (0,1)
    double reward_cap = 2000.0;    // max reward per block (avg fees per block)
    double blocks_per_day = 144.0; // new blocks per day

    void validate() const {
        if (!(alpha > 1.0))
            throw ValidationError("MarketParams: alpha must be > 1");
        if (!(beta > 0.0) || !(beta < 1.0))
            throw ValidationError("MarketParams: beta must be in (0,1)");
        if (!(reward_cap > 0.0))
            throw ValidationError("MarketParams: reward_cap must be > 0");
        if (!(blocks_per_day > 0.0))
            throw ValidationError("MarketParams: blocks_per_day must be > 0");
    }
};

// Hash power purchased by each miner, indexed by miner id.
using StrategyProfile = std::vector<double>;

// Equilibrium of the miners' sub-game at a fixed reward.
struct NashOutcome {
    StrategyProfile strategies;           // indexed by original miner id
    std::vector<std::size_t> participants; // ids with a positive strategy, ascending
    double total_power = 0.0;             // sum of strategies
    double aggregate_x = 0.0;             // reward-to-total-power factor of the equilibrium

    std::size_t participant_count() const { return participants.size(); }
};

// Joint solution: platform's reward choice plus the induced miner equilibrium.
struct StackelbergOutcome {
    double reward = 0.0;           // chosen reward, clamped to [0, reward_cap]
    double reward_unclamped = 0.0; // interior optimum before the cap is applied
    NashOutcome nash;              // miner equilibrium at `reward`
    double platform_utility = 0.0;
    std::vector<double> miner_profits; // per day, indexed by miner id
    bool degenerate = false;       // true when the best reward is 0 and no one mines
};

// A catch-up race: an attacker with power h against a network of total
// power H (attacker included), starting z blocks behind.
struct AttackScenario {
    double attacker_power = 0.0; // h
    double network_power = 0.0;  // H, total including the attacker
    int depth = 0;               // z, blocks behind

    void validate() const {
        if (!(network_power > 0.0))
            throw ValidationError("AttackScenario: network_power must be > 0");
        if (attacker_power < 0.0 || attacker_power > network_power)
            throw ValidationError(
                "AttackScenario: attacker_power must lie in [0, network_power]");
        if (depth < 0)
            throw ValidationError("AttackScenario: depth must be >= 0");
    }

    double honest_share() const { // p
        return (network_power - attacker_power) / network_power;
    }
    double attacker_share() const { // q
        return attacker_power / network_power;
    }
};

// Monte Carlo estimate with a 95% binomial confidence half-width.
struct RaceEstimate {
    double probability = 0.0;
    double ci_half_width = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
};

}  // namespace minegame
