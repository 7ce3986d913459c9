#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "twrbeam/channel.hpp"
#include "twrbeam/oracle.hpp"
#include "twrbeam/region.hpp"

using namespace twr;
using twrtest::trivial_channels;
using twrtest::trivial_config_sum;

TEST_SUITE_BEGIN("region");

TEST_CASE("map_u values and domain") {
    const RatePoint a = map_u({1.0, 1.0});
    CHECK(a.r1 == doctest::Approx(0.5));
    CHECK(a.r2 == doctest::Approx(0.5));

    const RatePoint b = map_u({1.0 / 3.0, 1.0});
    CHECK(b.r1 == doctest::Approx(1.0));
    CHECK(b.r2 == doctest::Approx(0.5));

    CHECK_THROWS_AS(map_u({0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(map_u({1.0, -1.0}), DomainError);
}

TEST_CASE("map_u reverses component-wise order") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.05, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const InverseSnrPoint p{dist(rng), dist(rng)};
        const InverseSnrPoint q{p.t1 + dist(rng), p.t2 + dist(rng)};
        const RatePoint rp = map_u(p);
        const RatePoint rq = map_u(q);
        CHECK(rp.r1 > rq.r1);
        CHECK(rp.r2 > rq.r2);
    }
}

TEST_CASE("pareto filter") {
    const std::vector<RatePoint> mutual = {{1, 0}, {0, 1}, {0.4, 0.4}};
    CHECK(pareto_filter(mutual).size() == 3);

    const std::vector<RatePoint> dominated = {{1, 1}, {0.5, 0.5}};
    const auto kept = pareto_filter(dominated);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].r1 == 1.0);
}

TEST_CASE("pareto filter never keeps a dominated point") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<RatePoint> cloud(300);
    for (auto& p : cloud) p = {dist(rng), dist(rng)};
    const auto kept = pareto_filter(cloud);
    for (const auto& p : kept)
        for (const auto& q : cloud) {
            const bool dominates = q.r1 >= p.r1 && q.r2 >= p.r2 && (q.r1 > p.r1 || q.r2 > p.r2);
            CHECK_FALSE(dominates);
        }
}

TEST_CASE("convex hull basics") {
    const std::vector<RatePoint> triangle = {{0, 0}, {1, 0}, {0, 1}};
    CHECK(convex_hull(triangle).size() == 3);

    const std::vector<RatePoint> square_center = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    CHECK(convex_hull(square_center).size() == 4);

    CHECK_THROWS_AS(convex_hull({}), ParameterError);
}

TEST_CASE("hull contains every input point") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<RatePoint> cloud(100);
    for (auto& p : cloud) p = {dist(rng), dist(rng)};
    RegionEstimate region;
    region.hull_vertices = convex_hull(cloud);
    for (const auto& p : cloud) CHECK(region.contains(p, 1e-9));
}

TEST_CASE("trivial reciprocal sweep is a square through the boundary point") {
    const auto ch = trivial_channels();
    const auto cfg = trivial_config_sum(3.0);
    const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    const auto region = sweep_reciprocal(ch, cfg, grid);
    const double r = 0.2924812503605781;
    for (const auto& p : region.raw_points) {
        CHECK(p.r1 == doctest::Approx(r).epsilon(1e-9));
        CHECK(p.r2 == doctest::Approx(r).epsilon(1e-9));
    }
    REQUIRE(region.hull_vertices.size() == 4);
    CHECK(region.hull_area() == doctest::Approx(r * r).epsilon(1e-9));
}

TEST_CASE("endpoint weights produce the one-way extremes") {
    const auto ch = twrtest::random_channels(3, 13, true);
    const auto cfg = twrtest::paper_config_sum(3);
    const auto region = sweep_reciprocal(ch, cfg, {0.0, 1.0});
    REQUIRE(region.raw_points.size() == 2);
    // mu = 1 weights direction 1 only, so it attains the largest r1.
    CHECK(region.raw_points[1].r1 >= region.raw_points[0].r1 - 1e-12);
    CHECK(region.raw_points[0].r2 >= region.raw_points[1].r2 - 1e-12);
    // Both extremes are hull vertices.
    CHECK(region.contains(region.raw_points[0], 1e-9));
    CHECK(region.contains(region.raw_points[1], 1e-9));
}

TEST_CASE("sweep vertices are pareto-undominated") {
    const auto ch = twrtest::random_channels(3, 17, true);
    const auto cfg = twrtest::paper_config_sum(3);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    const auto region = sweep_reciprocal(ch, cfg, grid);
    for (const auto& v : region.hull_vertices) {
        if (v.r1 <= 1e-12 || v.r2 <= 1e-12) continue; // anchors
        for (const auto& p : region.raw_points) {
            const bool dominates = p.r1 >= v.r1 + 1e-9 && p.r2 >= v.r2 + 1e-9;
            CHECK_FALSE(dominates);
        }
    }
}

TEST_CASE("random feasible rates stay inside the sweep hull") {
    const auto ch = twrtest::random_channels(2, 19, true);
    const auto cfg = twrtest::paper_config_sum(2);
    const auto eff = effective_channels(ch, cfg);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    const auto region = sweep_reciprocal(ch, cfg, grid);
    const auto cloud = enumerate_rate_cloud(eff, cfg, 20000, 23);
    int outside = 0;
    for (const auto& p : cloud)
        if (!region.contains(p, 1e-3)) ++outside;
    CHECK(outside == 0);
}

TEST_CASE("nonreciprocal sweep of reciprocal channels matches the closed form") {
    const auto ch = twrtest::random_channels(2, 29, true);
    const auto cfg = twrtest::paper_config_sum(2, 10.0);
    std::vector<double> mu_grid;
    for (int i = 0; i <= 10; ++i) mu_grid.push_back(i / 10.0);
    const auto closed = sweep_reciprocal(ch, cfg, mu_grid);

    // Matched boundary points: one kappa per closed-form rate ratio.
    std::vector<double> kappa_grid;
    for (const auto& p : closed.raw_points) kappa_grid.push_back(p.r1 / (p.r1 + p.r2));
    BisectionConfig bis;
    bis.epsilon = 1e-4;
    const auto sdr = sweep_nonreciprocal(ch, cfg, kappa_grid, bis, 31);

    for (std::size_t i = 0; i < kappa_grid.size(); ++i) {
        CHECK(std::abs(sdr.raw_points[i].r1 - closed.raw_points[i].r1) <= bis.epsilon + 1e-3);
        CHECK(std::abs(sdr.raw_points[i].r2 - closed.raw_points[i].r2) <= bis.epsilon + 1e-3);
    }
    const double area_gap = std::abs(sdr.hull_area() - closed.hull_area());
    CHECK(area_gap <= 0.01 * std::max(sdr.hull_area(), closed.hull_area()));
}

TEST_CASE("individual hull nests inside the matched sum hull") {
    const auto ch = twrtest::random_channels(3, 37, true);
    auto cfg_ind = twrtest::paper_config_sum(3);
    Eigen::VectorXd p(3);
    p << 5.0, 3.0, 2.0;
    cfg_ind.relay_constraint = IndividualPowerConstraint{p};
    auto cfg_sum = twrtest::paper_config_sum(3);
    cfg_sum.relay_constraint = SumPowerConstraint{p.sum()};

    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    const auto hull_ind = sweep_reciprocal(ch, cfg_ind, grid);
    const auto hull_sum = sweep_reciprocal(ch, cfg_sum, grid);
    CHECK(hull_ind.hull_area() <= hull_sum.hull_area() + 1e-9);
    for (const auto& v : hull_ind.raw_points) CHECK(hull_sum.contains(v, 1e-6));
}

TEST_CASE("swapping the sides mirrors the hull") {
    const auto ch = twrtest::random_channels(3, 41, true);
    const auto cfg = twrtest::paper_config_sum(3);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    const auto region = sweep_reciprocal(ch, cfg, grid);

    ChannelRealization swapped = ch;
    std::swap(swapped.h1, swapped.h2);
    std::swap(swapped.h1r, swapped.h2r);
    std::vector<double> mirrored_grid;
    for (double mu : grid) mirrored_grid.push_back(1.0 - mu);
    const auto mirror = sweep_reciprocal(swapped, cfg, mirrored_grid);
    REQUIRE(mirror.raw_points.size() == region.raw_points.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(mirror.raw_points[i].r1 == doctest::Approx(region.raw_points[i].r2).epsilon(1e-9));
        CHECK(mirror.raw_points[i].r2 == doctest::Approx(region.raw_points[i].r1).epsilon(1e-9));
    }
}

TEST_CASE("silencing one source collapses that direction") {
    const auto ch = twrtest::random_channels(3, 43, true);
    auto cfg = twrtest::paper_config_sum(3);
    const auto eff_full = effective_channels(ch, cfg);
    const auto sol_full = wsismin_sum_power(eff_full, cfg, WsisWeight(0.5));
    const auto snr_full = snr_pair(sol_full.beamformer(ch), eff_full, cfg);

    cfg.p_s2 = 1e-9; // direction 1 carries S2's signal
    const auto eff = effective_channels(ch, cfg);
    const auto sol = wsismin_sum_power(eff, cfg, WsisWeight(0.5));
    const auto snr = snr_pair(sol.beamformer(ch), eff, cfg);
    CHECK(snr.snr1 < 1e-6 * snr_full.snr1);
}

TEST_CASE("dominance preservation on random pairs") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> dist(0.05, 5.0);
    std::vector<InverseSnrPoint> points(40);
    for (auto& p : points) p = {dist(rng), dist(rng)};
    const auto report = check_dominance_preservation(points);
    CHECK(report.checked > 0);
    CHECK(report.passed());
}

TEST_CASE("dominance check handles trivial pairs") {
    const auto reversed = check_dominance_preservation({{1, 2}, {2, 3}});
    CHECK(reversed.checked == 1);
    CHECK(reversed.passed());

    const auto equal = check_dominance_preservation({{1, 1}, {1, 1}});
    CHECK(equal.checked == 0);
}

TEST_CASE("segment images are decreasing and convex") {
    const auto report = check_segment_convexity({1, 2}, {2, 1}, 50);
    CHECK(report.passed());

    const auto degenerate = check_segment_convexity({1, 1}, {1, 1}, 10);
    CHECK(degenerate.passed());

    const auto horizontal = check_segment_convexity({1, 2}, {3, 2}, 25);
    CHECK(horizontal.passed());

    CHECK_THROWS_AS(check_segment_convexity({0, 1}, {1, 1}, 10), DomainError);
}

TEST_CASE("random segments map to convex curves") {
    // Trade-off segments: the second coordinate decreases where the first
    // increases, as on an inverse-SNR Pareto boundary.
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> dist(0.05, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        InverseSnrPoint a{dist(rng), dist(rng)};
        InverseSnrPoint b{dist(rng), dist(rng)};
        if (a.t1 > b.t1) std::swap(a.t1, b.t1);
        if (a.t2 < b.t2) std::swap(a.t2, b.t2);
        const auto report = check_segment_convexity(a, b, 50);
        CHECK(report.passed());
    }
}

TEST_SUITE_END();
