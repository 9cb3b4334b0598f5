#pragma once

#include <cstdint>
#include <optional>

#include "minegame/types.hpp"

namespace minegame {

// Regularized incomplete beta function I_x(u, v) for x in [0,1], u,v > 0.
// Continued-fraction evaluation with the symmetry switch; absolute error
// below 1e-12 over the parameter ranges used here.
double regularized_incomplete_beta(double x, double u, double v);

// Probability that an attacker ever wins the catch-up race from `depth`
// blocks behind: 1 when its power share reaches 1/2 (or depth is 0),
// otherwise I_{4pq}(depth, 1/2).
double attacker_win_probability(const AttackScenario& scenario);

// Monte Carlo estimate of the same race. Each trial replays the block
// discovery process: every new block belongs to the attacker with
// probability q, to the honest chain with probability p. The honest chain
// must first reach `depth` confirmations (the attacker mines from the fork
// point all along); afterwards the attacker succeeds the moment its branch
// is at least as long as the honest one. A trial fails once `step_cap`
// blocks have been mined without success, which can only bias the estimate
// downward for q < 1/2. Trials are seeded by (seed, trial index) and may
// run on several threads; the estimate is identical either way.
RaceEstimate simulate_attack_race(const AttackScenario& scenario,
                                  std::uint64_t trials, std::uint64_t seed,
                                  std::uint64_t step_cap = 1000000,
                                  unsigned threads = 0);

// Smallest total network power H in (2h, bracket_max] that pushes the
// attacker's success probability down to `target_risk`, found by bisection
// to 1e-6 relative. Empty when even bracket_max is not enough.
std::optional<double> min_network_power(double attacker_power, int depth,
                                        double target_risk,
                                        double bracket_max);

}  // namespace minegame
