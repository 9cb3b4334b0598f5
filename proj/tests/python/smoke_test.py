#!/usr/bin/env python3
"""Smoke tests for the python bindings: surface coverage plus a few
frozen cross-language determinism checks."""

import sys

import minegame as mg


def approx(a, b, rel=1e-12, abs_tol=0.0):
    return abs(a - b) <= max(abs_tol, rel * max(abs(a), abs(b)))


def test_security():
    assert approx(mg.regularized_incomplete_beta(0.36, 4, 0.5), 0.005456, 1e-10)
    assert mg.regularized_incomplete_beta(0.0, 2, 0.5) == 0.0
    assert mg.regularized_incomplete_beta(1.0, 2, 0.5) == 1.0

    assert approx(mg.attacker_win_probability(1, 10, 4), 0.005456, 1e-10)
    assert approx(mg.attacker_win_probability(1, 20, 4), 0.00038715625, 1e-10)
    assert mg.attacker_win_probability(5, 10, 4) == 1.0
    assert mg.attacker_win_probability(1, 10, 0) == 1.0

    est = mg.simulate_attack_race(1, 10, 4, trials=200000, seed=7)
    want = mg.attacker_win_probability(1, 10, 4)
    assert abs(est.probability - want) <= est.ci_half_width
    again = mg.simulate_attack_race(1, 10, 4, trials=200000, seed=7)
    assert est.successes == again.successes

    H = mg.min_network_power(1, 4, 0.00387, 1000.0)
    assert H is not None and approx(H, 10.9582084097, 1e-4)
    assert mg.min_network_power(1, 1, 1e-12, 5.0) is None

    try:
        mg.attacker_win_probability(-1, 10, 4)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


def test_game():
    assert mg.win_probability(0, [1.0, 1.0]) == 0.5
    params = mg.MarketParams(blocks_per_day=1.0)
    assert approx(mg.miner_profit(0, [1.0, 1.0], 1.0, params, 0.25), 0.25)
    assert mg.best_response(0.25, 1.0, 1.0, params) == 1.0

    nash = mg.nash_equilibrium([1.0, 1.0], 1.0, params)
    assert nash.strategies == [0.25, 0.25]
    assert list(nash.participants) == [0, 1]
    assert nash.total_power == 0.5

    nash3 = mg.nash_equilibrium([1.0, 2.0, 3.0], 1.0, params)
    assert list(nash3.participants) == [0, 1]
    assert approx(nash3.strategies[0], 2.0 / 9.0, 1e-13)
    assert nash3.strategies[2] == 0.0

    out = mg.stackelberg_solve([1.0, 1.0])  # stock market params
    assert approx(out.reward, 91.33982818428743, 1e-12)
    assert approx(out.platform_utility, 4894.751939032911, 1e-12)
    assert not out.degenerate

    degenerate = mg.stackelberg_solve(
        [1.0, 1.0], mg.MarketParams(alpha=10.0, beta=0.1, reward_cap=100.0,
                                    blocks_per_day=1.0))
    assert degenerate.degenerate and degenerate.reward == 0.0


def test_experiments_and_oracles():
    prices = mg.draw_miner_prices(1000, 100.0, 5.0, seed=42, run_index=0)
    assert len(prices) == 1000
    assert approx(prices[0], 101.72989326761694, 1e-15)
    assert all(100.0 <= p <= 105.0 for p in prices)

    out = mg.stackelberg_solve(prices)
    assert out.nash.participant_count == 191
    assert approx(out.reward, 1753.3623604676764, 1e-12)
    assert approx(out.platform_utility, 2487.3689079898572, 1e-12)

    profile, sweeps, converged = mg.best_response_iteration(
        [1.0, 2.0, 3.0], 1.0, mg.MarketParams(blocks_per_day=1.0))
    assert converged
    assert approx(profile[0], 2.0 / 9.0, 1e-8)
    assert profile[2] < 1e-8

    reward, utility = mg.grid_search_reward(
        out.nash.aggregate_x, mg.MarketParams(), grid_points=100001)
    assert abs(reward - out.reward) <= 2000.0 / 100000.0
    assert utility <= out.platform_utility + 1e-9


def main():
    test_security()
    test_game()
    test_experiments_and_oracles()
    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
