#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "twrbeam/channel.hpp"
#include "twrbeam/nonreciprocal.hpp"
#include "twrbeam/oracle.hpp"
#include "twrbeam/reciprocal.hpp"

using namespace twr;
using twrtest::trivial_channels;
using twrtest::trivial_config_sum;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("single relay grid matches the closed form exactly") {
    const auto cfg = trivial_config_sum(3.0);
    const auto eff = effective_channels(trivial_channels(), cfg);
    const auto grid = grid_wsismin(eff, cfg, WsisWeight(0.5), 100);
    CHECK(grid.best_x(0) == doctest::Approx(1.0).epsilon(1e-12));
    const auto sol = wsismin_sum_power(eff, cfg, WsisWeight(0.5));
    CHECK(grid.best_objective == doctest::Approx(wsis_objective(sol.x, eff, cfg, WsisWeight(0.5))));
}

TEST_CASE("grid agrees with both closed forms") {
    const auto ch = twrtest::random_channels(2, 3, true);
    const auto cfg = twrtest::random_config_sum(2, 4);
    const auto eff = effective_channels(ch, cfg);
    const WsisWeight mu(0.4);
    const auto grid = grid_wsismin(eff, cfg, mu, 400);
    const auto sol = wsismin_sum_power(eff, cfg, mu);
    CHECK(wsis_objective(sol.x, eff, cfg, mu) <= grid.best_objective * (1 + 1e-3));

    const auto cfg_ind = twrtest::random_config_individual(3, 5);
    const auto ch3 = twrtest::random_channels(3, 6, true);
    const auto eff3 = effective_channels(ch3, cfg_ind);
    const auto grid3 = grid_wsismin(eff3, cfg_ind, mu, 200);
    const auto sol3 = wsismin_individual(eff3, cfg_ind, mu);
    CHECK(wsis_objective(sol3.amplitudes(eff3, cfg_ind), eff3, cfg_ind, mu) <=
          grid3.best_objective * (1 + 1e-3));
}

TEST_CASE("grid refuses large problems and tiny resolutions") {
    const auto ch = twrtest::random_channels(4, 7, true);
    const auto cfg = twrtest::random_config_sum(4, 8);
    const auto eff = effective_channels(ch, cfg);
    CHECK_THROWS_AS(grid_wsismin(eff, cfg, WsisWeight(0.5), 200), ParameterError);

    const auto ch2 = twrtest::random_channels(2, 9, true);
    const auto cfg2 = twrtest::random_config_sum(2, 10);
    const auto eff2 = effective_channels(ch2, cfg2);
    CHECK_THROWS_AS(grid_wsismin(eff2, cfg2, WsisWeight(0.5), 50), ParameterError);
}

TEST_CASE("grid refinement never worsens the objective") {
    const auto ch = twrtest::random_channels(2, 11, true);
    const auto cfg = twrtest::random_config_sum(2, 12);
    const auto eff = effective_channels(ch, cfg);
    const auto coarse = grid_wsismin(eff, cfg, WsisWeight(0.7), 200);
    const auto fine = grid_wsismin(eff, cfg, WsisWeight(0.7), 400);
    CHECK(fine.best_objective <= coarse.best_objective + 1e-15);
}

TEST_CASE("oracles are reproducible from their seeds") {
    const auto ch = twrtest::random_channels(2, 13, false);
    const auto cfg = twrtest::paper_config_sum(2);
    const auto eff = effective_channels(ch, cfg);
    const auto a = random_search_rate(eff, cfg, RateProfile(0.5), 5000, 99);
    const auto b = random_search_rate(eff, cfg, RateProfile(0.5), 5000, 99);
    CHECK(a.best_r == b.best_r);
    CHECK((a.best_w - b.best_w).norm() == 0.0);

    const auto cloud_a = enumerate_rate_cloud(eff, cfg, 100, 7);
    const auto cloud_b = enumerate_rate_cloud(eff, cfg, 100, 7);
    for (std::size_t i = 0; i < cloud_a.size(); ++i) {
        CHECK(cloud_a[i].r1 == cloud_b[i].r1);
        CHECK(cloud_a[i].r2 == cloud_b[i].r2);
    }
}

TEST_CASE("random search lower-bounds the sdr optimum") {
    for (std::uint64_t seed : {17u, 18u}) {
        const auto ch = twrtest::random_channels(2, seed, false);
        const auto cfg = twrtest::paper_config_sum(2, 10.0);
        const auto eff = effective_channels(ch, cfg);
        BisectionConfig bis;
        const auto res = bisect_sum_power(eff, cfg, RateProfile(0.5), bis);
        const auto search = random_search_rate(eff, cfg, RateProfile(0.5), 100000, seed);
        CHECK(search.best_r <= res.r_star + bis.epsilon);
        CHECK(search.best_r >= 0.5 * res.r_star); // sanity: the search is not vacuous
    }
}

TEST_CASE("zero samples keep the zero seeding") {
    const auto ch = twrtest::random_channels(2, 21, false);
    const auto cfg = twrtest::paper_config_sum(2);
    const auto eff = effective_channels(ch, cfg);
    const auto res = random_search_rate(eff, cfg, RateProfile(0.5), 0, 1);
    CHECK(res.best_r == 0.0);
    CHECK(res.best_w.norm() == 0.0);
}

TEST_CASE("cloud respects the power constraints and the one-way caps") {
    const auto ch = twrtest::random_channels(3, 23, false);
    auto cfg = twrtest::paper_config_sum(3);
    Eigen::VectorXd p(3);
    p << 2.0, 1.0, 0.5;
    cfg.relay_constraint = IndividualPowerConstraint{p};
    const auto eff = effective_channels(ch, cfg);

    const double cap1 = 0.5 * std::log2(1.0 + cfg.p_s2 * (eff.f2.cwiseAbs2().cwiseQuotient(
        cfg.sigma_s1 * eff.d / p.sum() + eff.a1)).sum());
    const double cap2 = 0.5 * std::log2(1.0 + cfg.p_s1 * (eff.f1.cwiseAbs2().cwiseQuotient(
        cfg.sigma_s2 * eff.d / p.sum() + eff.a2)).sum());

    const auto cloud = enumerate_rate_cloud(eff, cfg, 20000, 29);
    for (const auto& point : cloud) {
        CHECK(point.r1 <= cap1 + 1e-6);
        CHECK(point.r2 <= cap2 + 1e-6);
    }
}

TEST_SUITE_END();
