#include "minegame/oracles.hpp"

#include <cmath>
#include <limits>

#include "minegame/game.hpp"

namespace minegame::oracles {

IterationTrace best_response_iteration(const std::vector<MinerProfile>& miners,
                                       double reward,
                                       const MarketParams& params,
                                       StrategyProfile init, double tol,
                                       std::size_t max_sweeps,
                                       double relaxation) {
    params.validate();
    if (miners.size() < 2)
        throw ValidationError("best_response_iteration: need at least 2 miners");
    if (!(reward > 0.0))
        throw ValidationError("best_response_iteration: reward must be > 0");
    if (init.size() != miners.size())
        throw ValidationError("best_response_iteration: init size mismatch");
    for (double mu : init)
        if (!(mu > 0.0))
            throw ValidationError(
                "best_response_iteration: init must be strictly positive");
    if (!(relaxation > 0.0) || relaxation > 1.0)
        throw ValidationError("best_response_iteration: relaxation in (0,1]");

    IterationTrace trace;
    trace.profile = std::move(init);
    double total = 0.0;
    for (double mu : trace.profile) total += mu;

    for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
        double delta = 0.0;
        for (const auto& m : miners) {
            const double current = trace.profile[m.id];
            const double others = total - current;
            // With relaxation < 1 iterates stay interior, so `others`
            // can only reach 0 in the converged all-excluded limit.
            const double target =
                others > 0.0
                    ? best_response(m.unit_price, others, reward, params)
                    : current;
            const double next =
                (1.0 - relaxation) * current + relaxation * target;
            total += next - current;
            delta = std::max(delta, std::fabs(next - current));
            trace.profile[m.id] = next;
        }
        trace.sweeps = sweep;
        trace.max_step_delta = delta;
        if (delta < tol) {
            trace.converged = true;
            return trace;
        }
    }
    trace.converged = false;
    return trace;
}

IterationTrace best_response_iteration(const std::vector<MinerProfile>& miners,
                                       double reward,
                                       const MarketParams& params, double tol,
                                       std::size_t max_sweeps,
                                       double relaxation) {
    StrategyProfile init(miners.size(), 0.0);
    const double n = static_cast<double>(miners.size());
    for (const auto& m : miners)
        init[m.id] = reward * params.blocks_per_day / (2.0 * n * m.unit_price);
    return best_response_iteration(miners, reward, params, std::move(init),
                                   tol, max_sweeps, relaxation);
}

std::pair<double, double> grid_search_reward_x(double aggregate_x,
                                               const MarketParams& params,
                                               std::size_t grid_points) {
    params.validate();
    if (grid_points < 1000)
        throw ValidationError("grid_search_reward: need at least 1000 points");
    if (!(aggregate_x > 0.0))
        throw ValidationError("grid_search_reward: aggregate_x must be > 0");

    const double step =
        params.reward_cap / static_cast<double>(grid_points - 1);
    double best_reward = 0.0;
    double best_utility = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < grid_points; ++g) {
        const double r = static_cast<double>(g) * step;
        const double u =
            params.alpha * (sigmoid(params.beta * aggregate_x * r) - 0.5) - r;
        if (u > best_utility) {
            best_utility = u;
            best_reward = r;
        }
    }
    return {best_reward, best_utility};
}

std::pair<double, double> grid_search_reward(
    const std::vector<MinerProfile>& miners, const MarketParams& params,
    std::size_t grid_points) {
    const auto ids = participant_ids(miners);
    std::vector<MinerProfile> members;
    members.reserve(ids.size());
    for (std::size_t id : ids)
        for (const auto& m : miners)
            if (m.id == id) members.push_back(m);
    return grid_search_reward_x(aggregate_factor(members, params), params,
                                grid_points);
}

double finite_difference_gradient(const std::function<double(double)>& f,
                                  double x, double step) {
    return (f(x + step) - f(x - step)) / (2.0 * step);
}

}  // namespace minegame::oracles
