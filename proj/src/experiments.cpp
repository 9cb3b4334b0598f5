#include "minegame/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <system_error>

#include "minegame/game.hpp"
#include "minegame/rng.hpp"
#include "minegame/security.hpp"

namespace minegame {

std::vector<MinerProfile> draw_miners(const ScenarioSpec& spec,
                                      std::uint64_t run_index) {
    spec.validate();
    Xoshiro256pp rng(spec.seed, run_index);
    std::vector<MinerProfile> miners(spec.n_miners);
    for (std::size_t i = 0; i < spec.n_miners; ++i) {
        miners[i].id = i;
        miners[i].unit_price =
            spec.lambda_min *
            (1.0 + rng.uniform() * spec.lambda_spread_pct / 100.0);
    }
    return miners;
}

namespace {

struct RunStats {
    double participation = 0.0;
    double reward_star = 0.0;
    double total_power = 0.0;
    double utility = 0.0;
    double avg_profit = 0.0;
    std::optional<double> rank1, rank50, rank100;
};

std::optional<double> rank_profit(const StackelbergOutcome& out,
                                  const std::vector<std::size_t>& order,
                                  std::size_t rank) {
    if (order.size() < rank) return std::nullopt;
    return out.miner_profits[order[rank - 1]];
}

RunStats solve_one_run(const ScenarioSpec& spec, std::uint64_t run_index) {
    const auto miners = draw_miners(spec, run_index);
    const auto out = stackelberg_solve(miners, spec.params);

    RunStats stats;
    stats.participation = static_cast<double>(out.nash.participant_count()) /
                          static_cast<double>(miners.size());
    stats.reward_star = out.reward;
    stats.total_power = out.nash.total_power;
    stats.utility = out.platform_utility;
    stats.avg_profit =
        std::accumulate(out.miner_profits.begin(), out.miner_profits.end(),
                        0.0) /
        static_cast<double>(miners.size());

    std::vector<std::size_t> order(miners.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (miners[a].unit_price != miners[b].unit_price)
            return miners[a].unit_price < miners[b].unit_price;
        return a < b;
    });
    stats.rank1 = rank_profit(out, order, 1);
    stats.rank50 = rank_profit(out, order, 50);
    stats.rank100 = rank_profit(out, order, 100);
    return stats;
}

SweepRow averaged_row(const ScenarioSpec& spec, const std::string& param,
                      double value) {
    SweepRow row;
    row.swept_param = param;
    row.swept_value = value;
    double r1 = 0.0, r50 = 0.0, r100 = 0.0;
    bool has1 = true, has50 = true, has100 = true;
    for (std::uint64_t run = 0; run < spec.runs; ++run) {
        const RunStats s = solve_one_run(spec, run);
        row.participation += s.participation;
        row.reward_star += s.reward_star;
        row.total_power += s.total_power;
        row.platform_utility += s.utility;
        row.avg_profit += s.avg_profit;
        has1 = has1 && s.rank1.has_value();
        has50 = has50 && s.rank50.has_value();
        has100 = has100 && s.rank100.has_value();
        r1 += s.rank1.value_or(0.0);
        r50 += s.rank50.value_or(0.0);
        r100 += s.rank100.value_or(0.0);
    }
    const double n = static_cast<double>(spec.runs);
    row.participation /= n;
    row.reward_star /= n;
    row.total_power /= n;
    row.platform_utility /= n;
    row.avg_profit /= n;
    if (has1) row.profit_rank1 = r1 / n;
    if (has50) row.profit_rank50 = r50 / n;
    if (has100) row.profit_rank100 = r100 / n;
    return row;
}

}  // namespace

std::vector<SweepRow> sweep_price_spread(const std::vector<double>& spreads,
                                         const ScenarioSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(spreads.size());
    for (double spread : spreads) {
        ScenarioSpec s = spec;
        s.lambda_spread_pct = spread;
        rows.push_back(averaged_row(s, "spread", spread));
    }
    return rows;
}

std::vector<SweepRow> sweep_population(const std::vector<std::size_t>& populations,
                                       const ScenarioSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(populations.size());
    for (std::size_t n : populations) {
        ScenarioSpec s = spec;
        s.n_miners = n;
        rows.push_back(averaged_row(s, "population", static_cast<double>(n)));
    }
    return rows;
}

std::vector<SweepRow> sweep_unit_price(const std::vector<double>& lambda_mins,
                                       const ScenarioSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(lambda_mins.size());
    for (double lmin : lambda_mins) {
        ScenarioSpec s = spec;
        s.lambda_min = lmin;
        rows.push_back(averaged_row(s, "lambda_min", lmin));
    }
    return rows;
}

std::vector<AttackCurvePoint> attack_curve(double attacker_power, int depth,
                                           const std::vector<double>& network_powers) {
    std::vector<AttackCurvePoint> points;
    points.reserve(network_powers.size());
    for (double H : network_powers) {
        points.push_back(
            {H, attacker_win_probability({attacker_power, H, depth})});
    }
    return points;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 10);
    return std::string(buf, res.ptr);
}

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows) {
    std::string csv =
        "swept_param,value,participation,reward_star,total_power,"
        "platform_utility,avg_profit,profit_rank1,profit_rank50,"
        "profit_rank100\n";
    const auto opt = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const auto& r : rows) {
        csv += r.swept_param;
        csv += ',';
        csv += format_double(r.swept_value);
        csv += ',';
        csv += format_double(r.participation);
        csv += ',';
        csv += format_double(r.reward_star);
        csv += ',';
        csv += format_double(r.total_power);
        csv += ',';
        csv += format_double(r.platform_utility);
        csv += ',';
        csv += format_double(r.avg_profit);
        csv += ',';
        csv += opt(r.profit_rank1);
        csv += ',';
        csv += opt(r.profit_rank50);
        csv += ',';
        csv += opt(r.profit_rank100);
        csv += '\n';
    }
    return csv;
}

std::string attack_curve_to_csv(const std::vector<AttackCurvePoint>& points) {
    std::string csv = "H,P\n";
    for (const auto& pt : points) {
        csv += format_double(pt.network_power);
        csv += ',';
        csv += format_double(pt.probability);
        csv += '\n';
    }
    return csv;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double_strict(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ValidationError("config: bad numeric value for '" + key +
                              "': " + text);
    return value;
}

std::uint64_t parse_uint_strict(const std::string& text,
                                const std::string& key) {
    const std::string t = trim(text);
    std::uint64_t value = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ValidationError("config: bad integer value for '" + key +
                              "': " + text);
    return value;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    return parts;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig cfg;
    std::vector<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw ValidationError("config: duplicate key '" + key + "'");
        seen.push_back(key);

        if (key == "n_miners") {
            cfg.scenario.n_miners =
                static_cast<std::size_t>(parse_uint_strict(value, key));
        } else if (key == "lambda_min") {
            cfg.scenario.lambda_min = parse_double_strict(value, key);
        } else if (key == "lambda_spread_pct") {
            cfg.scenario.lambda_spread_pct = parse_double_strict(value, key);
        } else if (key == "alpha") {
            cfg.scenario.params.alpha = parse_double_strict(value, key);
        } else if (key == "beta") {
            cfg.scenario.params.beta = parse_double_strict(value, key);
        } else if (key == "reward_cap") {
            cfg.scenario.params.reward_cap = parse_double_strict(value, key);
        } else if (key == "blocks_per_day") {
            cfg.scenario.params.blocks_per_day =
                parse_double_strict(value, key);
        } else if (key == "runs") {
            cfg.scenario.runs =
                static_cast<std::size_t>(parse_uint_strict(value, key));
        } else if (key == "seed") {
            cfg.scenario.seed = parse_uint_strict(value, key);
        } else if (key == "spreads") {
            cfg.spreads.clear();
            for (const auto& p : split_list(value))
                cfg.spreads.push_back(parse_double_strict(p, key));
        } else if (key == "populations") {
            cfg.populations.clear();
            for (const auto& p : split_list(value))
                cfg.populations.push_back(
                    static_cast<std::size_t>(parse_uint_strict(p, key)));
        } else if (key == "lambda_mins") {
            cfg.lambda_mins.clear();
            for (const auto& p : split_list(value))
                cfg.lambda_mins.push_back(parse_double_strict(p, key));
        } else if (key == "attack_h") {
            cfg.attack_h = parse_double_strict(value, key);
        } else if (key == "attack_z") {
            cfg.attack_z = static_cast<int>(parse_uint_strict(value, key));
        } else if (key == "attack_H") {
            cfg.attack_H.clear();
            for (const auto& p : split_list(value))
                cfg.attack_H.push_back(parse_double_strict(p, key));
        } else {
            throw ValidationError("config: unknown key '" + key + "'");
        }
    }
    if (cfg.attack_H.empty())
        for (int H = 2; H <= 30; ++H)
            cfg.attack_H.push_back(static_cast<double>(H));
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    return parse_sweep_config(in);
}

}  // namespace minegame
