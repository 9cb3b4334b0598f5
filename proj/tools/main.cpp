// minegame command line: equilibrium solving, risk curves and seeded sweeps.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "minegame/experiments.hpp"
#include "minegame/game.hpp"
#include "minegame/oracles.hpp"
#include "minegame/rng.hpp"
#include "minegame/security.hpp"

namespace mg = minegame;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNoConvergence = 2;

std::string fd(double v) { return mg::format_double(v); }

std::vector<double> parse_lambda_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw mg::ValidationError("--lambdas: bad number '" + item + "'");
        }
    }
    if (out.empty()) throw mg::ValidationError("--lambdas: empty list");
    return out;
}

std::vector<mg::MinerProfile> miners_from_prices(const std::vector<double>& prices) {
    std::vector<mg::MinerProfile> miners(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) miners[i] = {i, prices[i]};
    return miners;
}

struct AttackProbArgs {
    double h = 1.0;
    double H = 10.0;
    int z = 4;
    bool simulate = false;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    std::uint64_t step_cap = 1000000;
};

int run_attack_prob(const AttackProbArgs& args, bool as_json) {
    const mg::AttackScenario scenario{args.h, args.H, args.z};
    const double p = mg::attacker_win_probability(scenario);

    std::optional<mg::RaceEstimate> est;
    if (args.simulate)
        est = mg::simulate_attack_race(scenario, args.trials, args.seed,
                                       args.step_cap);

    if (as_json) {
        json out;
        out["command"] = "attack-prob";
        out["inputs"] = {{"h", args.h}, {"H", args.H}, {"z", args.z}};
        out["win_probability"] = p;
        if (est) {
            out["simulation"] = {{"trials", est->trials},
                                 {"seed", args.seed},
                                 {"estimate", est->probability},
                                 {"ci_half_width", est->ci_half_width},
                                 {"successes", est->successes}};
        }
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "win_probability: " << fd(p) << "\n";
        if (est) {
            std::cout << "monte_carlo: " << fd(est->probability) << " +/- "
                      << fd(est->ci_half_width) << " (" << est->trials
                      << " trials, seed " << args.seed << ")\n";
        }
    }
    return kExitOk;
}

int run_nash(const std::string& lambdas, double reward, double blocks_per_day,
             bool as_json) {
    const auto prices = parse_lambda_list(lambdas);
    mg::MarketParams params;
    params.blocks_per_day = blocks_per_day;
    const auto miners = miners_from_prices(prices);
    const auto out = mg::nash_equilibrium(miners, reward, params);

    if (as_json) {
        json j;
        j["command"] = "nash";
        j["inputs"] = {{"lambdas", prices},
                       {"reward", reward},
                       {"blocks_per_day", blocks_per_day}};
        j["strategies"] = out.strategies;
        j["participants"] = out.participants;
        j["total_power"] = out.total_power;
        j["aggregate_x"] = out.aggregate_x;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "strategies: (";
        for (std::size_t i = 0; i < out.strategies.size(); ++i)
            std::cout << (i ? ", " : "") << fd(out.strategies[i]);
        std::cout << ")\nparticipants: {";
        for (std::size_t i = 0; i < out.participants.size(); ++i)
            std::cout << (i ? ", " : "") << out.participants[i];
        std::cout << "}\ntotal_power: " << fd(out.total_power) << "\n";
    }
    return kExitOk;
}

// Scenario overrides shared by `stackelberg` and `sweep`.
struct ScenarioFlags {
    std::optional<std::uint64_t> n_miners, runs, seed;
    std::optional<double> lambda_min, lambda_spread_pct;
    std::optional<double> alpha, beta, reward_cap, blocks_per_day;

    void apply(mg::ScenarioSpec& spec) const {
        if (n_miners) spec.n_miners = static_cast<std::size_t>(*n_miners);
        if (runs) spec.runs = static_cast<std::size_t>(*runs);
        if (seed) spec.seed = *seed;
        if (lambda_min) spec.lambda_min = *lambda_min;
        if (lambda_spread_pct) spec.lambda_spread_pct = *lambda_spread_pct;
        if (alpha) spec.params.alpha = *alpha;
        if (beta) spec.params.beta = *beta;
        if (reward_cap) spec.params.reward_cap = *reward_cap;
        if (blocks_per_day) spec.params.blocks_per_day = *blocks_per_day;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--n-miners", n_miners, "population size");
        cmd->add_option("--runs", runs, "averaging repetitions");
        cmd->add_option("--seed", seed, "base seed");
        cmd->add_option("--lambda-min", lambda_min, "minimum unit price");
        cmd->add_option("--lambda-spread-pct", lambda_spread_pct,
                        "price spread in percent");
        cmd->add_option("--alpha", alpha, "utility weight");
        cmd->add_option("--beta", beta, "sigmoid rate");
        cmd->add_option("--reward-cap", reward_cap, "max reward per block");
        cmd->add_option("--blocks-per-day", blocks_per_day, "blocks per day");
    }
};

mg::SweepConfig load_config_or_default(const std::string& config_path) {
    if (config_path.empty()) {
        std::istringstream empty;
        return mg::parse_sweep_config(empty);
    }
    return mg::load_sweep_config(config_path);
}

int run_stackelberg(const std::string& config_path, const ScenarioFlags& flags,
                    const std::string& lambdas, bool as_json) {
    mg::SweepConfig cfg = load_config_or_default(config_path);
    flags.apply(cfg.scenario);

    std::vector<mg::MinerProfile> miners;
    if (!lambdas.empty())
        miners = miners_from_prices(parse_lambda_list(lambdas));
    else
        miners = mg::draw_miners(cfg.scenario, 0);

    const auto out = mg::stackelberg_solve(miners, cfg.scenario.params);

    double profit_sum = 0.0;
    for (double p : out.miner_profits) profit_sum += p;
    const double avg_profit =
        profit_sum / static_cast<double>(out.miner_profits.size());

    if (as_json) {
        json j;
        j["command"] = "stackelberg";
        j["reward"] = out.reward;
        j["reward_unclamped"] = out.reward_unclamped;
        j["degenerate"] = out.degenerate;
        j["participants"] = out.nash.participant_count();
        j["total_power"] = out.nash.total_power;
        j["aggregate_x"] = out.nash.aggregate_x;
        j["platform_utility"] = out.platform_utility;
        j["avg_miner_profit"] = avg_profit;
        j["miner_profits"] = out.miner_profits;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "reward: " << fd(out.reward)
                  << "\nreward_unclamped: " << fd(out.reward_unclamped)
                  << "\nparticipants: " << out.nash.participant_count() << "/"
                  << miners.size() << "\ntotal_power: " << fd(out.nash.total_power)
                  << "\nplatform_utility: " << fd(out.platform_utility)
                  << "\navg_miner_profit: " << fd(avg_profit) << "\n";
        if (out.miner_profits.size() <= 20) {
            std::cout << "miner_profits: (";
            for (std::size_t i = 0; i < out.miner_profits.size(); ++i)
                std::cout << (i ? ", " : "") << fd(out.miner_profits[i]);
            std::cout << ")\n";
        }
        if (out.degenerate)
            std::cerr << "warning: degenerate equilibrium, the optimal reward "
                         "is 0 and no miner participates\n";
    }
    return kExitOk;
}

// The only environment knob: MINEGAME_OUT_DIR redirects relative output
// paths into a chosen directory.
std::string resolve_out_path(const std::string& out_path) {
    const char* dir = std::getenv("MINEGAME_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return out_path;
    const std::filesystem::path p(out_path);
    if (p.is_absolute()) return out_path;
    return (std::filesystem::path(dir) / p).string();
}

int run_sweep(const std::string& kind, const std::string& config_path,
              const ScenarioFlags& flags, const std::string& raw_out_path,
              bool as_json) {
    mg::SweepConfig cfg = load_config_or_default(config_path);
    flags.apply(cfg.scenario);
    const std::string out_path = resolve_out_path(raw_out_path);

    std::string csv;
    std::size_t rows = 0;
    if (kind == "spread") {
        const auto data = mg::sweep_price_spread(cfg.spreads, cfg.scenario);
        rows = data.size();
        csv = mg::sweep_rows_to_csv(data);
    } else if (kind == "population") {
        const auto data = mg::sweep_population(cfg.populations, cfg.scenario);
        rows = data.size();
        csv = mg::sweep_rows_to_csv(data);
    } else if (kind == "price") {
        const auto data = mg::sweep_unit_price(cfg.lambda_mins, cfg.scenario);
        rows = data.size();
        csv = mg::sweep_rows_to_csv(data);
    } else if (kind == "attack") {
        const auto data =
            mg::attack_curve(cfg.attack_h, cfg.attack_z, cfg.attack_H);
        rows = data.size();
        csv = mg::attack_curve_to_csv(data);
    } else {
        throw mg::ValidationError("sweep: unknown kind '" + kind + "'");
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw mg::ValidationError("sweep: cannot open '" + out_path + "'");
    out << csv;
    out.close();

    if (as_json) {
        json j;
        j["command"] = "sweep";
        j["kind"] = kind;
        j["rows"] = rows;
        j["out"] = out_path;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "wrote " << rows << " rows to " << out_path << "\n";
    }
    return kExitOk;
}

// Fast oracle cross-checks: closed forms vs. independent routes.
int run_verify(bool as_json) {
    struct Check {
        std::string name;
        bool ok;
    };
    std::vector<Check> checks;

    {
        // closed-form equilibrium vs. best-response fixed point
        mg::Xoshiro256pp rng(515, 0);
        mg::MarketParams params;
        params.blocks_per_day = 1.0;
        bool ok = true;
        for (int it = 0; it < 25 && ok; ++it) {
            const std::size_t n =
                2 + static_cast<std::size_t>(rng.uniform(0.0, 30.0));
            std::vector<mg::MinerProfile> miners(n);
            for (std::size_t i = 0; i < n; ++i)
                miners[i] = {i, rng.uniform(1.0, 10.0)};
            const double reward = rng.uniform(0.1, 100.0);
            const auto closed = mg::nash_equilibrium(miners, reward, params);
            const auto trace =
                mg::oracles::best_response_iteration(miners, reward, params);
            if (!trace.converged) throw mg::ConvergenceError(
                "verify: best-response iteration did not converge");
            double max_mu = 0.0, diff = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                max_mu = std::max(max_mu, closed.strategies[i]);
                diff = std::max(diff, std::fabs(closed.strategies[i] -
                                                trace.profile[i]));
            }
            ok = diff <= 1e-7 * max_mu;
        }
        checks.push_back({"nash_closed_form_vs_iteration", ok});
    }
    {
        // closed-form reward vs. grid argmax
        mg::Xoshiro256pp rng(516, 0);
        bool ok = true;
        for (int it = 0; it < 25 && ok; ++it) {
            mg::MarketParams p;
            p.alpha = std::exp(rng.uniform(std::log(1.5), std::log(20000.0)));
            p.beta = std::exp(rng.uniform(std::log(1e-4), std::log(0.9)));
            p.reward_cap = std::exp(rng.uniform(std::log(0.1), std::log(5000.0)));
            const double x = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
            const auto [grid_r, grid_u] =
                mg::oracles::grid_search_reward_x(x, p, 100001);
            const double step = p.reward_cap / 100000.0;
            ok = std::fabs(mg::optimal_reward(x, p) - grid_r) <= step * 1.0000001;
            (void)grid_u;
        }
        checks.push_back({"optimal_reward_vs_grid_search", ok});
    }
    {
        // race formula vs. Monte Carlo at two reference cells
        bool ok = true;
        for (const auto& sc :
             {mg::AttackScenario{1.0, 10.0, 4}, mg::AttackScenario{3.0, 10.0, 2}}) {
            const auto est = mg::simulate_attack_race(sc, 200000, 99);
            const double want = mg::attacker_win_probability(sc);
            ok = ok && std::fabs(est.probability - want) <=
                           std::max(est.ci_half_width, 1e-4);
        }
        checks.push_back({"race_formula_vs_monte_carlo", ok});
    }
    {
        // incomplete beta symmetry
        mg::Xoshiro256pp rng(517, 0);
        bool ok = true;
        for (int it = 0; it < 100 && ok; ++it) {
            const double x = rng.uniform(0.001, 0.999);
            const double u = rng.uniform(0.1, 8.0);
            const double v = rng.uniform(0.1, 8.0);
            ok = std::fabs(mg::regularized_incomplete_beta(x, u, v) +
                           mg::regularized_incomplete_beta(1.0 - x, v, u) -
                           1.0) < 1e-10;
        }
        checks.push_back({"incomplete_beta_symmetry", ok});
    }

    bool all_ok = true;
    if (as_json) {
        json j;
        j["command"] = "verify";
        json list = json::array();
        for (const auto& c : checks) {
            list.push_back({{"check", c.name}, {"pass", c.ok}});
            all_ok = all_ok && c.ok;
        }
        j["checks"] = list;
        j["pass"] = all_ok;
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& c : checks) {
            std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << c.name << "\n";
            all_ok = all_ok && c.ok;
        }
    }
    return all_ok ? kExitOk : kExitNoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mining-market equilibria and proof-of-work risk toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    AttackProbArgs attack;
    auto* cmd_attack = app.add_subcommand("attack-prob",
                                          "attacker catch-up win probability");
    cmd_attack->fallthrough();
    // the single-letter --h/--H flags clash with the default -h help alias
    cmd_attack->set_help_flag("--help", "print help");
    cmd_attack->add_option("--h", attack.h, "attacker hash power")->required();
    cmd_attack->add_option("--H", attack.H, "total network hash power")->required();
    cmd_attack->add_option("--z", attack.z, "blocks behind")->required();
    cmd_attack->add_flag("--simulate", attack.simulate,
                         "run a Monte Carlo cross-check");
    cmd_attack->add_option("--trials", attack.trials, "Monte Carlo trials");
    cmd_attack->add_option("--seed", attack.seed, "Monte Carlo seed");
    cmd_attack->add_option("--step-cap", attack.step_cap,
                           "per-trial step budget");

    std::string nash_lambdas;
    double nash_reward = 0.0;
    double nash_blocks = 144.0;
    auto* cmd_nash =
        app.add_subcommand("nash", "miners' equilibrium at a fixed reward");
    cmd_nash->fallthrough();
    cmd_nash->add_option("--lambdas", nash_lambdas, "comma-separated unit prices")
        ->required();
    cmd_nash->add_option("--reward", nash_reward, "reward per block")->required();
    cmd_nash->add_option("--blocks-per-day", nash_blocks, "blocks per day");

    std::string st_config, st_lambdas;
    ScenarioFlags st_flags;
    auto* cmd_st =
        app.add_subcommand("stackelberg", "two-stage equilibrium solution");
    cmd_st->fallthrough();
    cmd_st->add_option("--config", st_config, "scenario config file");
    cmd_st->add_option("--lambdas", st_lambdas,
                       "explicit unit prices instead of a drawn scenario");
    st_flags.attach(cmd_st);

    std::string sw_kind, sw_config, sw_out;
    ScenarioFlags sw_flags;
    auto* cmd_sweep = app.add_subcommand("sweep", "seeded parameter sweep to CSV");
    cmd_sweep->fallthrough();
    cmd_sweep->add_option("--kind", sw_kind, "spread|population|price|attack")
        ->required();
    cmd_sweep->add_option("--config", sw_config, "scenario config file");
    cmd_sweep->add_option("--out", sw_out, "output CSV path")->required();
    sw_flags.attach(cmd_sweep);

    auto* cmd_verify =
        app.add_subcommand("verify", "run the oracle cross-checks");
    cmd_verify->fallthrough();

    try {
        app.parse(argc, argv);
        if (cmd_attack->parsed()) return run_attack_prob(attack, as_json);
        if (cmd_nash->parsed())
            return run_nash(nash_lambdas, nash_reward, nash_blocks, as_json);
        if (cmd_st->parsed())
            return run_stackelberg(st_config, st_flags, st_lambdas, as_json);
        if (cmd_sweep->parsed())
            return run_sweep(sw_kind, sw_config, sw_flags, sw_out, as_json);
        if (cmd_verify->parsed()) return run_verify(as_json);
        return kExitValidation;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitValidation;
    } catch (const mg::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
