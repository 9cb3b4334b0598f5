#include "minegame/security.hpp"

#include <cmath>
#include <thread>
#include <vector>

#include "minegame/rng.hpp"

namespace minegame {

namespace {

constexpr int kBetaMaxIter = 500;
constexpr double kBetaLentzStop = 1e-15;
constexpr double kBetaLentzTiny = 1e-300;

double log_beta(double u, double v) {
    return std::lgamma(u) + std::lgamma(v) - std::lgamma(u + v);
}

// Lentz's algorithm for the standard continued fraction of I_x(u,v),
// valid (and fast) for x <= (u+1)/(u+v+2).
double beta_continued_fraction(double x, double u, double v) {
    double f = 1.0, c = 1.0, d = 0.0;
    for (int i = 0; i <= kBetaMaxIter; ++i) {
        const int m = i / 2;
        double numerator;
        if (i == 0) {
            numerator = 1.0;
        } else if (i % 2 == 1) {
            numerator = -((u + m) * (u + v + m) * x) /
                        ((u + 2.0 * m) * (u + 2.0 * m + 1.0));
        } else {
            numerator =
                (m * (v - m) * x) / ((u + 2.0 * m - 1.0) * (u + 2.0 * m));
        }
        d = 1.0 + numerator * d;
        if (std::fabs(d) < kBetaLentzTiny) d = kBetaLentzTiny;
        d = 1.0 / d;
        c = 1.0 + numerator / c;
        if (std::fabs(c) < kBetaLentzTiny) c = kBetaLentzTiny;
        const double cd = c * d;
        f *= cd;
        if (std::fabs(1.0 - cd) < kBetaLentzStop) return f - 1.0;
    }
    throw ConvergenceError("regularized_incomplete_beta: continued fraction "
                           "did not converge");
}

// Hypergeometric series around x = 0; a handful of terms suffice for
// tiny x and it avoids the continued fraction entirely.
double beta_small_x_series(double x, double u, double v) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < kBetaMaxIter; ++n) {
        term *= (u + v + n) / (u + 1.0 + n) * x;
        sum += term;
        if (std::fabs(term) < kBetaLentzStop * std::fabs(sum)) return sum;
    }
    throw ConvergenceError("regularized_incomplete_beta: series did not converge");
}

}  // namespace

double regularized_incomplete_beta(double x, double u, double v) {
    if (!(u > 0.0) || !(v > 0.0))
        throw ValidationError("regularized_incomplete_beta: u, v must be > 0");
    if (!(x >= 0.0) || !(x <= 1.0))
        throw ValidationError("regularized_incomplete_beta: x must be in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    // Symmetry switch keeps the continued fraction in its fast region.
    if (x > (u + 1.0) / (u + v + 2.0))
        return 1.0 - regularized_incomplete_beta(1.0 - x, v, u);

    const double front =
        std::exp(u * std::log(x) + v * std::log1p(-x) - log_beta(u, v)) / u;
    if (x < 1e-3) return front * beta_small_x_series(x, u, v);
    return front * beta_continued_fraction(x, u, v);
}

double attacker_win_probability(const AttackScenario& scenario) {
    scenario.validate();
    const double q = scenario.attacker_share();
    if (q >= 0.5) return 1.0;
    if (scenario.depth == 0) return 1.0; // nothing left to catch up
    const double p = scenario.honest_share();
    return regularized_incomplete_beta(4.0 * p * q,
                                       static_cast<double>(scenario.depth), 0.5);
}

namespace {

// Once the attacker is `escape_deficit` blocks behind after the race is
// live, its comeback probability is below 2^-80; counting the trial as a
// failure there keeps failing trials short without a measurable bias.
long long escape_deficit_for(double p, double q) {
    if (!(q < p)) return -1; // non-losing walk, never write it off
    if (q == 0.0) return 1;
    return static_cast<long long>(
        std::ceil(80.0 * 0.6931471805599453 / std::log(p / q)));
}

bool race_trial(Xoshiro256pp& rng, double q, int depth,
                std::uint64_t step_cap, long long escape_deficit) {
    if (depth == 0) return true;
    long long honest = 0, attacker = 0;
    for (std::uint64_t step = 0; step < step_cap; ++step) {
        if (rng.uniform() < q)
            ++attacker;
        else
            ++honest;
        if (honest >= depth) {
            if (attacker >= honest) return true;
            if (escape_deficit > 0 && honest - attacker >= escape_deficit)
                return false;
        }
    }
    return false;
}

}  // namespace

RaceEstimate simulate_attack_race(const AttackScenario& scenario,
                                  std::uint64_t trials, std::uint64_t seed,
                                  std::uint64_t step_cap, unsigned threads) {
    scenario.validate();
    if (trials < 1)
        throw ValidationError("simulate_attack_race: trials must be >= 1");
    if (step_cap < static_cast<std::uint64_t>(scenario.depth))
        throw ValidationError(
            "simulate_attack_race: step_cap smaller than the race depth");

    const double q = scenario.attacker_share();
    const double p = scenario.honest_share();
    const long long escape = escape_deficit_for(p, q);

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, trials));

    std::vector<std::uint64_t> counts(threads, 0);
    auto worker = [&](unsigned t) {
        const std::uint64_t lo = trials * t / threads;
        const std::uint64_t hi = trials * (t + 1) / threads;
        std::uint64_t hits = 0;
        for (std::uint64_t trial = lo; trial < hi; ++trial) {
            Xoshiro256pp rng(seed, trial);
            if (race_trial(rng, q, scenario.depth, step_cap, escape)) ++hits;
        }
        counts[t] = hits;
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::uint64_t successes = 0;
    for (std::uint64_t c : counts) successes += c;

    RaceEstimate est;
    est.successes = successes;
    est.trials = trials;
    est.probability =
        static_cast<double>(successes) / static_cast<double>(trials);
    est.ci_half_width = 1.96 * std::sqrt(est.probability *
                                         (1.0 - est.probability) /
                                         static_cast<double>(trials));
    if (successes == 0 || successes == trials) {
        // rule-of-three floor so degenerate counts still carry a width
        est.ci_half_width =
            std::max(est.ci_half_width, 3.0 / static_cast<double>(trials));
    }
    return est;
}

std::optional<double> min_network_power(double attacker_power, int depth,
                                        double target_risk,
                                        double bracket_max) {
    if (!(target_risk > 0.0) || !(target_risk <= 1.0))
        throw ValidationError("min_network_power: target_risk must be in (0,1]");
    if (attacker_power < 0.0)
        throw ValidationError("min_network_power: attacker_power must be >= 0");
    if (depth < 0)
        throw ValidationError("min_network_power: depth must be >= 0");
    if (!(bracket_max > 2.0 * attacker_power) || !(bracket_max > 0.0))
        throw ValidationError(
            "min_network_power: bracket_max must exceed twice the attacker power");

    const auto risk_met = [&](double network) {
        return attacker_win_probability(
                   {attacker_power, network, depth}) <= target_risk;
    };
    if (!risk_met(bracket_max)) return std::nullopt;

    // P is monotone decreasing in H, so bisect on the predicate boundary.
    double lo = 2.0 * attacker_power;
    double hi = bracket_max;
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // bracket exhausted in fp
        if (risk_met(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace minegame
