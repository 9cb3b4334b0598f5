#include <cmath>
#include <vector>

#include "doctest.h"
#include "minegame/rng.hpp"
#include "minegame/security.hpp"

using namespace minegame;

namespace {

// Independent closed forms for the regularized incomplete beta, used as
// oracles against the continued-fraction implementation.

// I_x(z, 1/2) for integer z: 1 - sqrt(1-x) * sum_{k<z} C(2k,k) (x/4)^k.
double ibeta_halfint_oracle(double x, int z) {
    double sum = 0.0;
    double binom = 1.0; // C(2k,k)
    double pow = 1.0;   // (x/4)^k
    for (int k = 0; k < z; ++k) {
        if (k > 0) {
            binom = binom * (2.0 * k - 1.0) * (2.0 * k) / (static_cast<double>(k) * k);
            pow *= x / 4.0;
        }
        sum += binom * pow;
    }
    return 1.0 - std::sqrt(1.0 - x) * sum;
}

// Adaptive Simpson quadrature for smooth interior cases (u, v >= 1).
double simpson(double (*f)(double, double, double), double a, double b,
               double u, double v, int depth, double fa, double fm, double fb,
               double whole) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm, u, v), frm = f(rm, u, v);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 1e-14)
        return left + right;
    return simpson(f, a, m, u, v, depth - 1, fa, flm, fm, left) +
           simpson(f, m, b, u, v, depth - 1, fm, frm, fb, right);
}

double beta_integrand(double t, double u, double v) {
    return std::pow(t, u - 1.0) * std::pow(1.0 - t, v - 1.0);
}

double ibeta_quadrature_oracle(double x, double u, double v) {
    const double fa = beta_integrand(1e-300, u, v);
    const double fm = beta_integrand(0.5 * x, u, v);
    const double fb = beta_integrand(x, u, v);
    const double whole = x / 6.0 * (fa + 4.0 * fm + fb);
    const double integral =
        simpson(beta_integrand, 0.0, x, u, v, 40, fa, fm, fb, whole);
    const double log_beta =
        std::lgamma(u) + std::lgamma(v) - std::lgamma(u + v);
    return integral * std::exp(-log_beta);
}

}  // namespace

TEST_CASE("incomplete beta endpoints and uniform case") {
    CHECK(regularized_incomplete_beta(0.0, 3.0, 0.5) == 0.0);
    CHECK(regularized_incomplete_beta(1.0, 3.0, 0.5) == 1.0);
    // I_x(1,1) is the uniform CDF
    CHECK(regularized_incomplete_beta(0.3, 1.0, 1.0) == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("incomplete beta against half-integer closed form") {
    for (int z = 1; z <= 6; ++z) {
        for (double x : {0.01, 0.05, 0.19, 0.36, 0.5, 0.75, 0.99}) {
            const double got = regularized_incomplete_beta(x, z, 0.5);
            const double want = ibeta_halfint_oracle(x, z);
            CHECK(std::fabs(got - want) < 1e-12);
        }
    }
    // the race-model reference points, frozen from the closed form
    CHECK(std::fabs(regularized_incomplete_beta(0.36, 4.0, 0.5) - 0.005456) < 1e-12);
    CHECK(std::fabs(regularized_incomplete_beta(0.19, 4.0, 0.5) - 0.00038715625) < 1e-12);
}

TEST_CASE("incomplete beta against elementary closed forms") {
    // I_x(1, v) = 1 - (1-x)^v, I_x(u, 1) = x^u
    for (double x : {0.001, 0.2, 0.6, 0.9}) {
        for (double v : {0.5, 1.7, 4.0}) {
            CHECK(std::fabs(regularized_incomplete_beta(x, 1.0, v) -
                            (1.0 - std::pow(1.0 - x, v))) < 1e-12);
            CHECK(std::fabs(regularized_incomplete_beta(x, v, 1.0) -
                            std::pow(x, v)) < 1e-12);
        }
    }
    // arcsine distribution: I_x(1/2, 1/2) = (2/pi) asin(sqrt(x))
    for (double x : {0.1, 0.3, 0.8}) {
        CHECK(std::fabs(regularized_incomplete_beta(x, 0.5, 0.5) -
                        2.0 / M_PI * std::asin(std::sqrt(x))) < 1e-12);
    }
}

TEST_CASE("incomplete beta against adaptive quadrature") {
    const struct { double x, u, v; } cases[] = {
        {0.36, 4.0, 2.0}, {0.5, 2.5, 1.5}, {0.19, 6.0, 3.0}, {0.7, 1.0, 2.0},
    };
    for (const auto& c : cases) {
        const double got = regularized_incomplete_beta(c.x, c.u, c.v);
        const double want = ibeta_quadrature_oracle(c.x, c.u, c.v);
        CHECK(std::fabs(got - want) < 1e-10);
    }
}

TEST_CASE("incomplete beta symmetry property") {
    Xoshiro256pp rng(991, 0);
    for (int it = 0; it < 200; ++it) {
        const double x = rng.uniform(0.001, 0.999);
        const double u = rng.uniform(0.1, 8.0);
        const double v = rng.uniform(0.1, 8.0);
        const double sum = regularized_incomplete_beta(x, u, v) +
                           regularized_incomplete_beta(1.0 - x, v, u);
        CHECK(std::fabs(sum - 1.0) < 1e-10);
    }
}

TEST_CASE("incomplete beta domain errors") {
    CHECK_THROWS_AS(regularized_incomplete_beta(-0.1, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(regularized_incomplete_beta(1.1, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 1.0, -2.0), ValidationError);
}

TEST_CASE("attacker win probability reference points") {
    // With q = h/H the race formula gives these exact closed-form values.
    CHECK(attacker_win_probability({1.0, 10.0, 4}) ==
          doctest::Approx(0.005456).epsilon(1e-10));
    CHECK(attacker_win_probability({1.0, 20.0, 4}) ==
          doctest::Approx(0.00038715625).epsilon(1e-10));
    // attacker holding half the network (or more) always wins
    CHECK(attacker_win_probability({5.0, 10.0, 4}) == 1.0);
    CHECK(attacker_win_probability({9.0, 10.0, 2}) == 1.0);
    // no deficit, race already won
    CHECK(attacker_win_probability({1.0, 10.0, 0}) == 1.0);
    // powerless attacker never catches up
    CHECK(attacker_win_probability({0.0, 10.0, 1}) == 0.0);
}

TEST_CASE("attacker win probability monotonicity") {
    // decreasing in total network power
    double prev = 1.0;
    for (double H : {2.5, 4.0, 6.0, 10.0, 15.0, 25.0}) {
        const double p = attacker_win_probability({1.0, H, 4});
        CHECK(p < prev);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        prev = p;
    }
    // increasing in attacker power while q < 1/2
    prev = 0.0;
    for (double h : {0.5, 1.0, 2.0, 3.0, 4.0}) {
        const double p = attacker_win_probability({h, 10.0, 4});
        CHECK(p > prev);
        prev = p;
    }
    // non-increasing in depth
    prev = 1.0;
    for (int z = 0; z <= 8; ++z) {
        const double p = attacker_win_probability({1.0, 10.0, z});
        CHECK(p <= prev);
        prev = p;
    }
}

TEST_CASE("race simulation is exact at depth zero and deterministic") {
    const AttackScenario sc{1.0, 10.0, 0};
    for (std::uint64_t seed : {1ULL, 7ULL, 42ULL}) {
        const auto est = simulate_attack_race(sc, 1000, seed);
        CHECK(est.probability == 1.0);
    }
    const AttackScenario sc2{1.0, 10.0, 4};
    const auto a = simulate_attack_race(sc2, 20000, 7);
    const auto b = simulate_attack_race(sc2, 20000, 7);
    CHECK(a.successes == b.successes);
    CHECK(a.probability == b.probability);
    // thread count must not change the estimate
    const auto c = simulate_attack_race(sc2, 20000, 7, 1000000, 1);
    const auto d = simulate_attack_race(sc2, 20000, 7, 1000000, 3);
    CHECK(c.successes == d.successes);
}

TEST_CASE("race simulation agrees with the formula") {
    // oracle-vs-formula agreement is the actual test here
    const AttackScenario sc{1.0, 10.0, 4};
    const auto est = simulate_attack_race(sc, 1000000, 7);
    const double want = attacker_win_probability(sc);
    CHECK(std::fabs(est.probability - want) <= est.ci_half_width);
}

TEST_CASE("race simulation at the recurrent boundary") {
    // q = 1/2: the walk is recurrent, success is certain up to truncation
    const AttackScenario sc{5.0, 10.0, 3};
    const auto est = simulate_attack_race(sc, 100000, 11);
    CHECK(attacker_win_probability(sc) == 1.0);
    CHECK(std::fabs(est.probability - 1.0) < 5e-3);
}

TEST_CASE("race simulation configuration errors") {
    CHECK_THROWS_AS(simulate_attack_race({1.0, 10.0, 4}, 100, 1, 3),
                    ValidationError);
    CHECK_THROWS_AS(simulate_attack_race({1.0, 10.0, 4}, 0, 1),
                    ValidationError);
}

TEST_CASE("minimum network power inversion") {
    // frozen inverses of the formula at the two reference risk levels
    const auto h10 = min_network_power(1.0, 4, 0.00387, 1000.0);
    REQUIRE(h10.has_value());
    CHECK(*h10 == doctest::Approx(10.9582084097).epsilon(1e-4));
    const auto h20 = min_network_power(1.0, 4, 0.00033, 1000.0);
    REQUIRE(h20.has_value());
    CHECK(*h20 == doctest::Approx(20.8409892532).epsilon(1e-4));
    // the solutions indeed meet the risk target, minimally
    CHECK(attacker_win_probability({1.0, *h10, 4}) <= 0.00387);
    CHECK(attacker_win_probability({1.0, *h10 * 0.999, 4}) > 0.00387);
}

TEST_CASE("minimum network power edge cases") {
    // any network beats a target of 1: the bracket's low edge comes back
    const auto edge = min_network_power(1.0, 4, 1.0, 100.0);
    REQUIRE(edge.has_value());
    CHECK(*edge == doctest::Approx(2.0).epsilon(1e-4));
    // unreachable target inside the bracket
    CHECK(!min_network_power(1.0, 1, 1e-12, 5.0).has_value());
    CHECK_THROWS_AS(min_network_power(1.0, 4, 0.0, 100.0), ValidationError);
    CHECK_THROWS_AS(min_network_power(1.0, 4, 0.5, 1.5), ValidationError);
}

TEST_CASE("attack scenario validation") {
    CHECK_THROWS_AS(attacker_win_probability({-1.0, 10.0, 4}), ValidationError);
    CHECK_THROWS_AS(attacker_win_probability({11.0, 10.0, 4}), ValidationError);
    CHECK_THROWS_AS(attacker_win_probability({1.0, 0.0, 4}), ValidationError);
    CHECK_THROWS_AS(attacker_win_probability({1.0, 10.0, -1}), ValidationError);
}

TEST_CASE("rng streams are reproducible and distinct") {
    Xoshiro256pp a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    // frozen first outputs of the (42, 0) stream
    CHECK(a.next() == 0x58920e99ff403696ULL);
    CHECK(a.next() == 0xc5bc6d87ac9ce2f0ULL);
    CHECK(a.next() == 0x199b0b2d23b5eca7ULL);
    CHECK(b.uniform() == doctest::Approx(0.3459786535233895).epsilon(1e-15));
    std::uint64_t same = 0;
    for (int i = 0; i < 64; ++i) {
        const auto x = c.next();
        if (x == d.next()) ++same;
        (void)x;
    }
    CHECK(same == 0);
}
