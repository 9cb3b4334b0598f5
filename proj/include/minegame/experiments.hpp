#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minegame/types.hpp"

namespace minegame {

// One randomized market scenario: population size, unit-price range and
// the averaging/seeding contract for repeated runs.
struct ScenarioSpec {
    std::size_t n_miners = 1000;
    double lambda_min = 100.0;
    double lambda_spread_pct = 5.0; // prices drawn from [min, min*(1+pct/100)]
    MarketParams params;
    std::size_t runs = 100;
    std::uint64_t seed = 42;

    void validate() const {
        params.validate();
        if (n_miners < 2)
            throw ValidationError("ScenarioSpec: n_miners must be >= 2");
        if (!(lambda_min > 0.0))
            throw ValidationError("ScenarioSpec: lambda_min must be > 0");
        if (lambda_spread_pct < 0.0)
            throw ValidationError("ScenarioSpec: lambda_spread_pct must be >= 0");
        if (runs < 1) throw ValidationError("ScenarioSpec: runs must be >= 1");
    }
};

// One averaged row of a sweep. Rank-k profits are taken after sorting each
// run's miners by unit price ascending; absent when the population is
// smaller than the rank.
struct SweepRow {
    std::string swept_param;
    double swept_value = 0.0;
    double participation = 0.0; // |S'| / n
    double reward_star = 0.0;
    double total_power = 0.0;
    double platform_utility = 0.0;
    double avg_profit = 0.0;
    std::optional<double> profit_rank1;
    std::optional<double> profit_rank50;
    std::optional<double> profit_rank100;
};

struct AttackCurvePoint {
    double network_power = 0.0;
    double probability = 0.0;
};

// n unit prices drawn iid uniform from the scenario's price range; the
// stream is keyed by (seed, run_index) so each run is reproducible in
// isolation.
std::vector<MinerProfile> draw_miners(const ScenarioSpec& spec,
                                      std::uint64_t run_index);

// Participation vs. price spread (percent), lambda_min and n fixed.
std::vector<SweepRow> sweep_price_spread(const std::vector<double>& spreads,
                                         const ScenarioSpec& spec);

// Participation, utility and rank profits vs. population size.
std::vector<SweepRow> sweep_population(const std::vector<std::size_t>& populations,
                                       const ScenarioSpec& spec);

// Reward, power, utility and profits vs. the minimum unit price.
std::vector<SweepRow> sweep_unit_price(const std::vector<double>& lambda_mins,
                                       const ScenarioSpec& spec);

// Attacker success probability across a range of network powers.
std::vector<AttackCurvePoint> attack_curve(double attacker_power, int depth,
                                           const std::vector<double>& network_powers);

// CSV with the fixed sweep header, floats at 10 significant digits,
// absent fields empty. Byte-identical for identical inputs.
std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows);
std::string attack_curve_to_csv(const std::vector<AttackCurvePoint>& points);

// Locale-independent shortest-of-10-significant-digits float rendering
// used for all text output.
std::string format_double(double value);

// Flat `key = value` config covering the scenario fields plus the sweep
// axes. Unknown or repeated keys are rejected.
struct SweepConfig {
    ScenarioSpec scenario;
    std::vector<double> spreads = {1, 2, 3, 4, 5};
    std::vector<std::size_t> populations = {500,  1000, 1500, 2000, 2500,
                                            3000, 3500, 4000, 4500, 5000};
    std::vector<double> lambda_mins = {100, 110, 120, 130, 140, 150,
                                       160, 170, 180, 190, 200};
    double attack_h = 1.0;
    int attack_z = 4;
    std::vector<double> attack_H = {};  // filled with 2..30 when left empty
};

SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

}  // namespace minegame
