#include "minegame/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minegame {

namespace {

void validate_miners(const std::vector<MinerProfile>& miners) {
    if (miners.size() < 2)
        throw ValidationError(
            "need at least 2 miners: the sub-game has no single-miner equilibrium");
    std::vector<bool> seen(miners.size(), false);
    for (const auto& m : miners) {
        if (!(m.unit_price > 0.0) || !std::isfinite(m.unit_price))
            throw ValidationError("miner unit_price must be a positive finite real");
        if (m.id >= miners.size() || seen[m.id])
            throw ValidationError("miner ids must be unique 0-based ordinals");
        seen[m.id] = true;
    }
}

// Indices into `miners`, sorted by (unit_price, id) ascending.
std::vector<std::size_t> sorted_order(const std::vector<MinerProfile>& miners) {
    std::vector<std::size_t> order(miners.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (miners[a].unit_price != miners[b].unit_price)
            return miners[a].unit_price < miners[b].unit_price;
        return miners[a].id < miners[b].id;
    });
    return order;
}

// Grows the participant set from the two cheapest miners while the next
// unit price stays strictly below sum(prices) / (members - 1). Returns
// the member count q and the members' price sum.
std::pair<std::size_t, double> grow_participants(
    const std::vector<MinerProfile>& miners,
    const std::vector<std::size_t>& order) {
    std::size_t q = 2;
    double price_sum = miners[order[0]].unit_price + miners[order[1]].unit_price;
    while (q < miners.size() &&
           miners[order[q]].unit_price < price_sum / static_cast<double>(q - 1)) {
        price_sum += miners[order[q]].unit_price;
        ++q;
    }
    return {q, price_sum};
}

}  // namespace

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double win_probability(std::size_t i, const StrategyProfile& strategies) {
    if (i >= strategies.size())
        throw ValidationError("win_probability: miner index out of range");
    double total = 0.0;
    for (double mu : strategies) {
        if (mu < 0.0 || !std::isfinite(mu))
            throw ValidationError("win_probability: strategies must be >= 0");
        total += mu;
    }
    if (total == 0.0)
        throw ValidationError(
            "win_probability: all-zero strategy profile, ratio undefined");
    return strategies[i] / total;
}

double miner_profit(std::size_t i, const StrategyProfile& strategies,
                    double reward, const MarketParams& params,
                    double unit_price) {
    if (reward < 0.0) throw ValidationError("miner_profit: reward must be >= 0");
    return win_probability(i, strategies) * reward * params.blocks_per_day -
           unit_price * strategies[i];
}

double platform_utility(double total_power, double reward,
                        const MarketParams& params) {
    if (total_power < 0.0)
        throw ValidationError("platform_utility: total_power must be >= 0");
    if (reward < 0.0 || reward > params.reward_cap)
        throw ValidationError("platform_utility: reward outside [0, reward_cap]");
    return params.alpha * (sigmoid(params.beta * total_power) - 0.5) - reward;
}

double best_response(double unit_price, double others_total, double reward,
                     const MarketParams& params) {
    if (!(others_total > 0.0))
        throw ValidationError(
            "best_response: others_total must be > 0; with no opposing power "
            "a lone miner has no best response");
    if (reward < 0.0) throw ValidationError("best_response: reward must be >= 0");
    const double flow = reward * params.blocks_per_day;
    if (flow / others_total <= unit_price) return 0.0;
    return std::max(0.0, std::sqrt(flow * others_total / unit_price) - others_total);
}

std::vector<std::size_t> participant_ids(const std::vector<MinerProfile>& miners) {
    validate_miners(miners);
    const auto order = sorted_order(miners);
    const auto [q, price_sum] = grow_participants(miners, order);
    (void)price_sum;
    std::vector<std::size_t> ids(q);
    for (std::size_t k = 0; k < q; ++k) ids[k] = miners[order[k]].id;
    std::sort(ids.begin(), ids.end());
    return ids;
}

double aggregate_factor(const std::vector<MinerProfile>& members,
                        const MarketParams& params) {
    params.validate();
    if (members.size() < 2)
        throw ValidationError("aggregate_factor: need at least 2 participants");
    const auto order = sorted_order(members);
    double price_sum = 0.0;
    for (std::size_t k : order) {
        if (!(members[k].unit_price > 0.0))
            throw ValidationError("aggregate_factor: unit prices must be > 0");
        price_sum += members[k].unit_price;
    }
    const double q = static_cast<double>(members.size());
    return params.blocks_per_day * (q - 1.0) / price_sum;
}

NashOutcome nash_equilibrium(const std::vector<MinerProfile>& miners,
                             double reward, const MarketParams& params) {
    params.validate();
    validate_miners(miners);
    if (reward < 0.0)
        throw ValidationError("nash_equilibrium: reward must be >= 0");

    NashOutcome out;
    out.strategies.assign(miners.size(), 0.0);
    if (reward == 0.0) return out; // no one buys power for a zero reward

    const auto order = sorted_order(miners);
    const auto [q, price_sum] = grow_participants(miners, order);
    const double qd = static_cast<double>(q);

    // Total power and per-member split of the interior first-order conditions.
    const double total = reward * params.blocks_per_day * (qd - 1.0) / price_sum;
    out.participants.resize(q);
    for (std::size_t k = 0; k < q; ++k) {
        const std::size_t id = miners[order[k]].id;
        out.strategies[id] =
            total * (1.0 - (qd - 1.0) * miners[order[k]].unit_price / price_sum);
        out.participants[k] = id;
    }
    std::sort(out.participants.begin(), out.participants.end());
    out.total_power = total;
    out.aggregate_x = params.blocks_per_day * (qd - 1.0) / price_sum;
    return out;
}

double optimal_reward_unclamped(double aggregate_x, const MarketParams& params) {
    params.validate();
    if (!(aggregate_x > 0.0))
        throw ValidationError("optimal_reward: aggregate_x must be > 0");
    const double abx = params.alpha * params.beta * aggregate_x;
    if (abx < 4.0) return 0.0;
    // Solve d(utility)/dR = 0: sigmoid(beta*X*R) = 1/2 + s. s < 1/2 always,
    // so the log argument is finite; abx == 4 lands on log(1) = 0.
    const double s = std::sqrt(0.25 - 1.0 / abx);
    return std::log((0.5 + s) / (0.5 - s)) / (params.beta * aggregate_x);
}

double optimal_reward(double aggregate_x, const MarketParams& params) {
    return std::min(optimal_reward_unclamped(aggregate_x, params),
                    params.reward_cap);
}

StackelbergOutcome stackelberg_solve(const std::vector<MinerProfile>& miners,
                                     const MarketParams& params) {
    params.validate();
    validate_miners(miners);

    // Membership and the aggregate factor do not depend on the reward.
    const auto order = sorted_order(miners);
    const auto [q, price_sum] = grow_participants(miners, order);
    const double x =
        params.blocks_per_day * (static_cast<double>(q) - 1.0) / price_sum;

    StackelbergOutcome out;
    out.reward_unclamped = optimal_reward_unclamped(x, params);
    out.reward = std::min(out.reward_unclamped, params.reward_cap);
    out.nash = nash_equilibrium(miners, out.reward, params);
    out.degenerate = out.reward == 0.0;

    const double x_used = out.degenerate ? 0.0 : x;
    out.platform_utility =
        params.alpha * (sigmoid(params.beta * x_used * out.reward) - 0.5) -
        out.reward;

    out.miner_profits.assign(miners.size(), 0.0);
    if (!out.degenerate) {
        // Win probabilities use the realized power sum, as in the profit formula.
        double total = 0.0;
        for (double mu : out.nash.strategies) total += mu;
        for (const auto& m : miners) {
            const double mu = out.nash.strategies[m.id];
            const double p = mu / total;
            out.miner_profits[m.id] =
                p * out.reward * params.blocks_per_day - m.unit_price * mu;
        }
    }
    return out;
}

}  // namespace minegame
