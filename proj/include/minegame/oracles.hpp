#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "minegame/types.hpp"

// Independent solvers used to cross-check the closed forms. They live in
// the library so the `verify` command can run them, but they are test
// machinery, not part of the modeling API.
namespace minegame::oracles {

struct IterationTrace {
    std::size_t sweeps = 0;
    StrategyProfile profile;
    double max_step_delta = 0.0; // inf-norm change over the last sweep
    bool converged = false;
};

// Round-robin best-response sweeps (updated values used within a sweep),
// relaxed toward the response to keep every iterate strictly positive.
// Converges to the unique equilibrium; a run that exhausts max_sweeps is
// reported as unconverged, never as a silent answer.
IterationTrace best_response_iteration(const std::vector<MinerProfile>& miners,
                                       double reward,
                                       const MarketParams& params,
                                       StrategyProfile init,
                                       double tol = 1e-10,
                                       std::size_t max_sweeps = 100000,
                                       double relaxation = 0.5);

// Same, starting from the default interior profile reward*N / (2*n*price).
IterationTrace best_response_iteration(const std::vector<MinerProfile>& miners,
                                       double reward,
                                       const MarketParams& params,
                                       double tol = 1e-10,
                                       std::size_t max_sweeps = 100000,
                                       double relaxation = 0.5);

// Exhaustive scan of the platform utility over a uniform reward grid on
// [0, reward_cap] for a fixed aggregate factor. Returns (reward, utility)
// at the best grid point.
std::pair<double, double> grid_search_reward_x(double aggregate_x,
                                               const MarketParams& params,
                                               std::size_t grid_points);

// Same, with the aggregate factor derived from the miners' unit prices.
std::pair<double, double> grid_search_reward(
    const std::vector<MinerProfile>& miners, const MarketParams& params,
    std::size_t grid_points);

// Central finite difference (f(x+h) - f(x-h)) / (2h).
double finite_difference_gradient(const std::function<double(double)>& f,
                                  double x, double step);

}  // namespace minegame::oracles
