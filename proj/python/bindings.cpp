#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minegame/experiments.hpp"
#include "minegame/game.hpp"
#include "minegame/oracles.hpp"
#include "minegame/security.hpp"

namespace py = pybind11;
namespace mg = minegame;

namespace {

std::vector<mg::MinerProfile> miners_from_prices(const std::vector<double>& prices) {
    std::vector<mg::MinerProfile> miners(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) miners[i] = {i, prices[i]};
    return miners;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "mining-market equilibria and proof-of-work risk toolkit";

    py::register_exception<mg::ValidationError>(m, "ValidationError",
                                                PyExc_ValueError);
    py::register_exception<mg::ConvergenceError>(m, "ConvergenceError",
                                                 PyExc_RuntimeError);

    py::class_<mg::MarketParams>(m, "MarketParams")
        .def(py::init<>())
        .def(py::init([](double alpha, double beta, double reward_cap,
                         double blocks_per_day) {
                 return mg::MarketParams{alpha, beta, reward_cap, blocks_per_day};
             }),
             py::arg("alpha") = 10000.0, py::arg("beta") = 0.001,
             py::arg("reward_cap") = 2000.0, py::arg("blocks_per_day") = 144.0)
        .def_readwrite("alpha", &mg::MarketParams::alpha)
        .def_readwrite("beta", &mg::MarketParams::beta)
        .def_readwrite("reward_cap", &mg::MarketParams::reward_cap)
        .def_readwrite("blocks_per_day", &mg::MarketParams::blocks_per_day);

    py::class_<mg::NashOutcome>(m, "NashOutcome")
        .def_readonly("strategies", &mg::NashOutcome::strategies)
        .def_readonly("participants", &mg::NashOutcome::participants)
        .def_readonly("total_power", &mg::NashOutcome::total_power)
        .def_readonly("aggregate_x", &mg::NashOutcome::aggregate_x)
        .def_property_readonly("participant_count",
                               &mg::NashOutcome::participant_count);

    py::class_<mg::StackelbergOutcome>(m, "StackelbergOutcome")
        .def_readonly("reward", &mg::StackelbergOutcome::reward)
        .def_readonly("reward_unclamped",
                      &mg::StackelbergOutcome::reward_unclamped)
        .def_readonly("nash", &mg::StackelbergOutcome::nash)
        .def_readonly("platform_utility",
                      &mg::StackelbergOutcome::platform_utility)
        .def_readonly("miner_profits", &mg::StackelbergOutcome::miner_profits)
        .def_readonly("degenerate", &mg::StackelbergOutcome::degenerate);

    py::class_<mg::RaceEstimate>(m, "RaceEstimate")
        .def_readonly("probability", &mg::RaceEstimate::probability)
        .def_readonly("ci_half_width", &mg::RaceEstimate::ci_half_width)
        .def_readonly("successes", &mg::RaceEstimate::successes)
        .def_readonly("trials", &mg::RaceEstimate::trials);

    m.def("win_probability", &mg::win_probability, py::arg("i"),
          py::arg("strategies"),
          "Probability that miner i wins the block competition.");
    m.def(
        "miner_profit",
        [](std::size_t i, const mg::StrategyProfile& strategies, double reward,
           const mg::MarketParams& params, double unit_price) {
            return mg::miner_profit(i, strategies, reward, params, unit_price);
        },
        py::arg("i"), py::arg("strategies"), py::arg("reward"),
        py::arg("params"), py::arg("unit_price"));
    m.def("platform_utility", &mg::platform_utility, py::arg("total_power"),
          py::arg("reward"), py::arg("params"));
    m.def("best_response", &mg::best_response, py::arg("unit_price"),
          py::arg("others_total"), py::arg("reward"), py::arg("params"));
    m.def(
        "nash_equilibrium",
        [](const std::vector<double>& unit_prices, double reward,
           const mg::MarketParams& params) {
            return mg::nash_equilibrium(miners_from_prices(unit_prices), reward,
                                        params);
        },
        py::arg("unit_prices"), py::arg("reward"),
        py::arg("params") = mg::MarketParams{},
        "Closed-form miners' equilibrium for a list of unit prices.");
    m.def(
        "stackelberg_solve",
        [](const std::vector<double>& unit_prices, const mg::MarketParams& params) {
            return mg::stackelberg_solve(miners_from_prices(unit_prices), params);
        },
        py::arg("unit_prices"), py::arg("params") = mg::MarketParams{},
        "Full two-stage solution for a list of unit prices.");
    m.def("optimal_reward", &mg::optimal_reward, py::arg("aggregate_x"),
          py::arg("params"));
    m.def("optimal_reward_unclamped", &mg::optimal_reward_unclamped,
          py::arg("aggregate_x"), py::arg("params"));

    m.def("regularized_incomplete_beta", &mg::regularized_incomplete_beta,
          py::arg("x"), py::arg("u"), py::arg("v"));
    m.def(
        "attacker_win_probability",
        [](double h, double H, int z) {
            return mg::attacker_win_probability({h, H, z});
        },
        py::arg("h"), py::arg("H"), py::arg("z"),
        "Catch-up success probability from z blocks behind.");
    m.def(
        "simulate_attack_race",
        [](double h, double H, int z, std::uint64_t trials, std::uint64_t seed,
           std::uint64_t step_cap, unsigned threads) {
            return mg::simulate_attack_race({h, H, z}, trials, seed, step_cap,
                                            threads);
        },
        py::arg("h"), py::arg("H"), py::arg("z"), py::arg("trials"),
        py::arg("seed"), py::arg("step_cap") = 1000000,
        py::arg("threads") = 0);
    m.def(
        "min_network_power",
        [](double h, int z, double target_risk, double bracket_max)
            -> std::optional<double> {
            return mg::min_network_power(h, z, target_risk, bracket_max);
        },
        py::arg("h"), py::arg("z"), py::arg("target_risk"),
        py::arg("bracket_max"));

    m.def(
        "draw_miner_prices",
        [](std::size_t n_miners, double lambda_min, double lambda_spread_pct,
           std::uint64_t seed, std::uint64_t run_index) {
            mg::ScenarioSpec spec;
            spec.n_miners = n_miners;
            spec.lambda_min = lambda_min;
            spec.lambda_spread_pct = lambda_spread_pct;
            spec.seed = seed;
            std::vector<double> prices;
            for (const auto& m : mg::draw_miners(spec, run_index))
                prices.push_back(m.unit_price);
            return prices;
        },
        py::arg("n_miners"), py::arg("lambda_min"),
        py::arg("lambda_spread_pct"), py::arg("seed"), py::arg("run_index") = 0,
        "Seeded uniform unit-price draw, identical to the sweep harness.");

    m.def(
        "best_response_iteration",
        [](const std::vector<double>& unit_prices, double reward,
           const mg::MarketParams& params, double tol, std::size_t max_sweeps,
           double relaxation) {
            const auto trace = mg::oracles::best_response_iteration(
                miners_from_prices(unit_prices), reward, params, tol,
                max_sweeps, relaxation);
            return py::make_tuple(trace.profile, trace.sweeps, trace.converged);
        },
        py::arg("unit_prices"), py::arg("reward"),
        py::arg("params") = mg::MarketParams{}, py::arg("tol") = 1e-10,
        py::arg("max_sweeps") = 100000, py::arg("relaxation") = 0.5,
        "Iterative equilibrium oracle; returns (profile, sweeps, converged).");
    m.def(
        "grid_search_reward",
        [](double aggregate_x, const mg::MarketParams& params,
           std::size_t grid_points) {
            return mg::oracles::grid_search_reward_x(aggregate_x, params,
                                                     grid_points);
        },
        py::arg("aggregate_x"), py::arg("params"),
        py::arg("grid_points") = 1000000,
        "Grid-search reward oracle; returns (reward, utility).");
}
