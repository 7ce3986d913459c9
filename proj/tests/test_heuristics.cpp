#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "twrbeam/channel.hpp"
#include "twrbeam/heuristics.hpp"
#include "twrbeam/reciprocal.hpp"
#include "twrbeam/region.hpp"

using namespace twr;
using twrtest::trivial_channels;

TEST_SUITE_BEGIN("heuristics");

TEST_CASE("equal power splits the budget exactly") {
    Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(2);
    const auto ch = ChannelRealization::make_reciprocal(ones, ones);
    SystemConfig cfg;
    cfg.sigma_relay = Eigen::VectorXd::Ones(2);
    cfg.relay_constraint = SumPowerConstraint{6.0};
    const auto w = equal_power(ch, cfg);
    CHECK(std::abs(w(0)) == doctest::Approx(1.0));
    CHECK(std::abs(w(1)) == doctest::Approx(1.0));

    const auto ch_rand = twrtest::random_channels(4, 3, true);
    const auto cfg_rand = twrtest::random_config_sum(4, 4);
    const auto powers = relay_powers(equal_power(ch_rand, cfg_rand), ch_rand, cfg_rand);
    for (int i = 0; i < 4; ++i)
        CHECK(powers.per_relay(i) == doctest::Approx(cfg_rand.sum_power() / 4).epsilon(1e-12));
}

TEST_CASE("max power saturates every cap") {
    const auto cfg = twrtest::trivial_config_individual(3.0);
    const auto w = max_power(trivial_channels(), cfg);
    CHECK(std::abs(w(0)) == doctest::Approx(1.0));

    const auto ch = twrtest::random_channels(4, 5, true);
    const auto cfg_rand = twrtest::random_config_individual(4, 6);
    const auto powers = relay_powers(max_power(ch, cfg_rand), ch, cfg_rand);
    for (int i = 0; i < 4; ++i)
        CHECK(powers.per_relay(i) == doctest::Approx(cfg_rand.individual_powers()(i)).epsilon(1e-12));
}

TEST_CASE("amplitudes depend only on channel magnitudes") {
    auto ch = twrtest::random_channels(3, 7, true);
    const auto cfg = twrtest::paper_config_sum(3);
    const auto base = equal_power(ch, cfg);

    ChannelRealization rotated = ch;
    for (int i = 0; i < 3; ++i) {
        rotated.h1(i) *= std::polar(1.0, 0.3 * (i + 1));
        rotated.h2(i) *= std::polar(1.0, -0.2 * (i + 1));
    }
    rotated.h1r = rotated.h1;
    rotated.h2r = rotated.h2;
    const auto spun = equal_power(rotated, cfg);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(spun(i)) == doctest::Approx(std::abs(base(i))).epsilon(1e-12));
}

TEST_CASE("greedy phase equals alignment on reciprocal channels") {
    const auto ch = twrtest::random_channels(4, 9, true);
    const auto cfg = twrtest::paper_config_sum(4);
    const auto eff = effective_channels(ch, cfg);
    const Eigen::VectorXd amps = Eigen::VectorXd::Constant(4, 0.5);
    const auto greedy = greedy_phase(ch, cfg, amps);
    const Eigen::VectorXd theta = phase_align(ch);
    for (int i = 0; i < 4; ++i) {
        const double diff = std::arg(greedy(i) * std::polar(1.0, -theta(i)));
        CHECK(std::abs(diff) <= 1e-12);
    }
}

TEST_CASE("one-sided channels force the live side's phase") {
    auto ch = twrtest::random_channels(3, 11, false);
    ch.h2.setZero(); // no signal toward S1
    const auto cfg = twrtest::paper_config_sum(3);
    const Eigen::VectorXd amps = Eigen::VectorXd::Constant(3, 0.7);
    const auto w = greedy_phase(ch, cfg, amps);
    for (int i = 0; i < 3; ++i) {
        const double expected = -(std::arg(ch.h1(i)) + std::arg(ch.h2r(i)));
        const double diff = std::remainder(std::arg(w(i)) - expected, 2 * std::numbers::pi);
        CHECK(std::abs(diff) <= 1e-12);
    }
}

TEST_CASE("heuristic points live inside the optimal hull") {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);

    for (std::uint64_t seed : {13u, 14u, 15u}) {
        const auto ch = twrtest::random_channels(3, seed, true);
        const auto cfg_sum = twrtest::paper_config_sum(3);
        const auto eff_sum = effective_channels(ch, cfg_sum);
        const auto hull_sum = sweep_reciprocal(ch, cfg_sum, grid);
        CHECK(hull_sum.contains(rate_pair(equal_power(ch, cfg_sum), eff_sum, cfg_sum), 1e-6));

        const auto cfg_ind = twrtest::random_config_individual(3, seed + 20);
        const auto eff_ind = effective_channels(ch, cfg_ind);
        const auto hull_ind = sweep_reciprocal(ch, cfg_ind, grid);
        CHECK(hull_ind.contains(rate_pair(max_power(ch, cfg_ind), eff_ind, cfg_ind), 1e-6));
    }
}

TEST_CASE("equal power requires a sum constraint and vice versa") {
    const auto ch = trivial_channels();
    CHECK_THROWS_AS(equal_power(ch, twrtest::trivial_config_individual()), ContractViolation);
    CHECK_THROWS_AS(max_power(ch, twrtest::trivial_config_sum()), ContractViolation);
}

TEST_SUITE_END();
