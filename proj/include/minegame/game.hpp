#pragma once

#include <cstddef>
#include <vector>

#include "minegame/types.hpp"

namespace minegame {

// Numerically safe logistic function 1/(1+e^-x).
double sigmoid(double x);

// Probability that miner i wins the block competition: mu_i / sum(mu).
// Throws ValidationError if every strategy is zero (undefined ratio).
double win_probability(std::size_t i, const StrategyProfile& strategies);

// Expected daily profit of miner i: win probability times reward flow,
// minus the cost of the purchased power.
double miner_profit(std::size_t i, const StrategyProfile& strategies,
                    double reward, const MarketParams& params,
                    double unit_price);

// Platform utility: alpha * (sigmoid(beta * total_power) - 1/2) - reward.
double platform_utility(double total_power, double reward,
                        const MarketParams& params);

// A miner's profit-maximizing power purchase given the total power bought
// by everyone else. Zero when the marginal return cannot cover the unit
// price. others_total must be positive: a lone miner has no best response
// (it would shrink its purchase indefinitely).
double best_response(double unit_price, double others_total, double reward,
                     const MarketParams& params);

// Ids of the miners that hold a positive strategy in equilibrium, in
// ascending id order. Independent of the reward. Requires >= 2 miners with
// positive unit prices.
std::vector<std::size_t> participant_ids(const std::vector<MinerProfile>& miners);

// Aggregate factor X of an equilibrium participant set: the constant that
// converts a reward into total purchased power. Requires >= 2 members.
double aggregate_factor(const std::vector<MinerProfile>& members,
                        const MarketParams& params);

// Closed-form Nash equilibrium of the miners' sub-game at a fixed reward.
// A zero reward yields the degenerate all-zero profile with no participants.
NashOutcome nash_equilibrium(const std::vector<MinerProfile>& miners,
                             double reward, const MarketParams& params);

// Platform's optimal reward for a given aggregate factor, before clamping.
// Zero when alpha*beta*X < 4 (utility is decreasing on the whole range).
double optimal_reward_unclamped(double aggregate_x, const MarketParams& params);

// Same, clamped to the reward cap.
double optimal_reward(double aggregate_x, const MarketParams& params);

// Full two-stage solution: participant set and aggregate factor from the
// sorted unit prices, optimal reward, miner equilibrium at that reward,
// platform utility and per-miner profits. Deterministic for equal input.
StackelbergOutcome stackelberg_solve(const std::vector<MinerProfile>& miners,
                                     const MarketParams& params);

}  // namespace minegame
