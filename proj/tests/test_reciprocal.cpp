#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "twrbeam/channel.hpp"
#include "twrbeam/oracle.hpp"
#include "twrbeam/reciprocal.hpp"

using namespace twr;
using twrtest::trivial_channels;
using twrtest::trivial_config_individual;
using twrtest::trivial_config_sum;

TEST_SUITE_BEGIN("reciprocal");

TEST_CASE("weight range is validated") {
    CHECK_THROWS_AS(WsisWeight(-0.1), ParameterError);
    CHECK_THROWS_AS(WsisWeight(1.1), ParameterError);
    CHECK(WsisWeight(0.0).mu_bar() == doctest::Approx(1.0));
}

TEST_CASE("phase alignment") {
    CHECK(phase_align(trivial_channels())(0) == doctest::Approx(0.0));

    Eigen::VectorXcd h1(1), h2(1);
    h1 << Complex{0.0, 1.0};
    h2 << Complex{1.0, 0.0};
    const auto ch = ChannelRealization::make_reciprocal(h1, h2);
    CHECK(phase_align(ch)(0) == doctest::Approx(-std::numbers::pi / 2));
}

TEST_CASE("aligned products are real and nonnegative") {
    const auto ch = twrtest::random_channels(4, 31, true);
    const auto theta = phase_align(ch);
    for (int i = 0; i < 4; ++i) {
        const Complex rotated = std::polar(1.0, theta(i)) * ch.h1(i) * ch.h2(i);
        CHECK(rotated.imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(rotated.real() >= 0.0);
    }
}

TEST_CASE("phase alignment rejects non-reciprocal channels") {
    const auto ch = twrtest::random_channels(2, 32, false);
    CHECK_THROWS_AS(phase_align(ch), ContractViolation);
}

TEST_CASE("sum-power closed form on the trivial link") {
    const auto cfg = trivial_config_sum(3.0);
    const auto eff = effective_channels(trivial_channels(), cfg);
    const auto sol = wsismin_sum_power(eff, cfg, WsisWeight(0.5));
    CHECK(sol.nu == doctest::Approx(1.0));
    CHECK(sol.gamma_diag(0) == doctest::Approx(2.0));
    CHECK(sol.x(0) == doctest::Approx(1.0));
    CHECK(sol.broadcast == doctest::Approx(2.0));
}

TEST_CASE("sum-power solution sits on the full-power shell") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto ch = twrtest::random_channels(4, seed, true);
        const auto cfg = twrtest::random_config_sum(4, seed + 100);
        const auto eff = effective_channels(ch, cfg);
        for (double mu : {0.0, 0.25, 0.5, 0.9, 1.0}) {
            const auto sol = wsismin_sum_power(eff, cfg, WsisWeight(mu));
            const double power = sol.x.cwiseAbs2().dot(eff.d);
            CHECK(power == doctest::Approx(cfg.sum_power()).epsilon(1e-9));
            // Stationarity: Gamma x is parallel to f_hat.
            const Eigen::VectorXd lhs = sol.gamma_diag.cwiseProduct(sol.x);
            const double scale = lhs.norm() / eff.f_hat.norm();
            CHECK((lhs - scale * eff.f_hat).norm() <= 1e-9 * lhs.norm());
        }
    }
}

TEST_CASE("sum-power closed form beats the grid oracle") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const auto ch = twrtest::random_channels(2, seed, true);
        const auto cfg = twrtest::random_config_sum(2, seed + 5);
        const auto eff = effective_channels(ch, cfg);
        const WsisWeight mu(0.3);
        const auto sol = wsismin_sum_power(eff, cfg, mu);
        const double closed = wsis_objective(sol.x, eff, cfg, mu);
        const auto grid = grid_wsismin(eff, cfg, mu, 400);
        CHECK(closed <= grid.best_objective * (1.0 + 1e-3));
    }
}

TEST_CASE("degenerate channels are rejected") {
    ChannelRealization ch = trivial_channels();
    ch.h1(0) = 0.0;
    ch.h1r(0) = 0.0;
    const auto cfg = trivial_config_sum();
    const auto eff = effective_channels(ch, cfg);
    CHECK_THROWS_AS(wsismin_sum_power(eff, cfg, WsisWeight(0.5)), DegenerateChannelError);
    CHECK_THROWS_AS(wsismin_individual(eff, trivial_config_individual(), WsisWeight(0.5)),
                    DegenerateChannelError);
}

TEST_CASE("local sum-power weights reconstruct the centralized solution") {
    const auto cfg0 = trivial_config_sum(3.0);
    const auto eff0 = effective_channels(trivial_channels(), cfg0);
    const auto sol0 = wsismin_sum_power(eff0, cfg0, WsisWeight(0.5));
    const Complex w0 = local_weight_sum_power(Complex{1, 0}, Complex{1, 0}, 1.0, cfg0,
                                              WsisWeight(0.5), sol0.broadcast);
    CHECK(w0.real() == doctest::Approx(1.0));
    CHECK(w0.imag() == doctest::Approx(0.0));

    const auto ch = twrtest::random_channels(5, 41, true);
    const auto cfg = twrtest::random_config_sum(5, 42);
    const auto eff = effective_channels(ch, cfg);
    const WsisWeight mu(0.35);
    const auto sol = wsismin_sum_power(eff, cfg, mu);
    const BeamVector centralized = sol.beamformer(ch);

    BeamVector reassembled(5);
    for (int i = 0; i < 5; ++i)
        reassembled(i) =
            local_weight_sum_power(ch.h1(i), ch.h2(i), cfg.sigma_relay(i), cfg, mu, sol.broadcast);
    CHECK((reassembled - centralized).norm() <= 1e-10 * centralized.norm());

    const auto snr_c = snr_pair(centralized, eff, cfg);
    const auto snr_d = snr_pair(reassembled, eff, cfg);
    CHECK(snr_d.snr1 == doctest::Approx(snr_c.snr1).epsilon(1e-10));
    CHECK(snr_d.snr2 == doctest::Approx(snr_c.snr2).epsilon(1e-10));
}

TEST_CASE("individual closed form on the trivial link") {
    const auto cfg = trivial_config_individual(3.0);
    const auto eff = effective_channels(trivial_channels(), cfg);
    const auto sol = wsismin_individual(eff, cfg, WsisWeight(0.5));
    CHECK(sol.psi(0) == doctest::Approx(1.0));
    CHECK(sol.g_tilde(0) == doctest::Approx(1.0));
    CHECK(sol.phi(0) == doctest::Approx(1.0));
    CHECK(sol.lambda_star == doctest::Approx(2.0));
    CHECK(sol.k_star == 1);
    CHECK(sol.alpha(0) == doctest::Approx(1.0));
}

TEST_CASE("individual solution structure") {
    for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
        const auto ch = twrtest::random_channels(5, seed, true);
        const auto cfg = twrtest::random_config_individual(5, seed + 7);
        const auto eff = effective_channels(ch, cfg);
        for (double mu : {0.1, 0.5, 0.8}) {
            const auto sol = wsismin_individual(eff, cfg, WsisWeight(mu));
            CHECK(sol.alpha.minCoeff() >= 0.0);
            CHECK(sol.alpha.maxCoeff() <= 1.0 + 1e-12);
            // Two-regime structure along the sorted order.
            for (Eigen::Index j = 0; j < 5; ++j) {
                const Eigen::Index idx = sol.tau[static_cast<std::size_t>(j)];
                if (j < sol.k_star)
                    CHECK(sol.alpha(idx) == doctest::Approx(1.0));
                else
                    CHECK(sol.alpha(idx) ==
                          doctest::Approx(sol.lambda_star * sol.phi(idx)).epsilon(1e-12));
            }
            // Threshold inequalities around k_star.
            const double phi_next = sol.k_star < 5 ? sol.phi(sol.tau[static_cast<std::size_t>(sol.k_star)]) : 0.0;
            if (phi_next > 0.0) CHECK(sol.lambda_star < 1.0 / phi_next);
            if (sol.k_star > 1) {
                double psi2 = 0.0, g_sum = 0.0;
                for (Eigen::Index j = 0; j + 1 < sol.k_star; ++j) {
                    const Eigen::Index idx = sol.tau[static_cast<std::size_t>(j)];
                    psi2 += sol.psi(idx) * sol.psi(idx);
                    g_sum += sol.g_tilde(idx);
                }
                const double lambda_prev = (1.0 + psi2) / g_sum;
                const double phi_kstar = sol.phi(sol.tau[static_cast<std::size_t>(sol.k_star - 1)]);
                CHECK(lambda_prev >= 1.0 / phi_kstar - 1e-12);
            }
        }
    }
}

TEST_CASE("individual closed form beats the grid oracle") {
    for (std::uint64_t seed : {31u, 32u}) {
        const auto ch = twrtest::random_channels(3, seed, true);
        const auto cfg = twrtest::random_config_individual(3, seed + 9);
        const auto eff = effective_channels(ch, cfg);
        const WsisWeight mu(0.6);
        const auto sol = wsismin_individual(eff, cfg, mu);
        const double closed = wsis_objective(sol.amplitudes(eff, cfg), eff, cfg, mu);
        const auto grid = grid_wsismin(eff, cfg, mu, 200);
        CHECK(closed <= grid.best_objective * (1.0 + 1e-3));
    }
}

TEST_CASE("local individual weights reconstruct the centralized solution") {
    const auto cfg0 = trivial_config_individual(3.0);
    const auto eff0 = effective_channels(trivial_channels(), cfg0);
    const auto sol0 = wsismin_individual(eff0, cfg0, WsisWeight(0.5));
    const Complex w0 = local_weight_individual(Complex{1, 0}, Complex{1, 0}, 1.0, 3.0, cfg0,
                                               WsisWeight(0.5), sol0.lambda_star);
    CHECK(std::norm(w0) * 3.0 == doctest::Approx(3.0)); // full power

    const auto ch = twrtest::random_channels(5, 61, true);
    const auto cfg = twrtest::random_config_individual(5, 62);
    const auto eff = effective_channels(ch, cfg);
    const WsisWeight mu(0.45);
    const auto sol = wsismin_individual(eff, cfg, mu);
    const BeamVector centralized = sol.beamformer(ch, eff, cfg);
    const Eigen::VectorXd& p = cfg.individual_powers();

    BeamVector reassembled(5);
    for (int i = 0; i < 5; ++i)
        reassembled(i) = local_weight_individual(ch.h1(i), ch.h2(i), cfg.sigma_relay(i), p(i), cfg,
                                                 mu, sol.lambda_star);
    CHECK((reassembled - centralized).norm() <= 1e-10 * centralized.norm());

    // Backed-off relays spend (lambda* phi)^2 p, never more than p.
    for (int i = 0; i < 5; ++i) {
        const double spent = std::norm(reassembled(i)) * eff.d(i);
        CHECK(spent <= p(i) * (1.0 + 1e-12));
        if (sol.alpha(i) < 1.0 - 1e-12) {
            const double expected = std::pow(sol.lambda_star * sol.phi(i), 2) * p(i);
            CHECK(spent == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("snr trade-off is monotone in the weight") {
    const auto ch = twrtest::random_channels(4, 71, true);
    const auto cfg = twrtest::random_config_sum(4, 72);
    const auto eff = effective_channels(ch, cfg);
    double prev_snr1 = -1.0, prev_snr2 = 1e300;
    for (int i = 0; i <= 10; ++i) {
        const auto sol = wsismin_sum_power(eff, cfg, WsisWeight(i / 10.0));
        const auto snr = snr_pair(sol.beamformer(ch), eff, cfg);
        CHECK(snr.snr1 >= prev_snr1 - 1e-9);
        CHECK(snr.snr2 <= prev_snr2 + 1e-9);
        prev_snr1 = snr.snr1;
        prev_snr2 = snr.snr2;
    }
}

TEST_CASE("phi ties are harmless") {
    // Two identical relays tie in phi; any order yields the same alpha.
    Eigen::VectorXcd h(2);
    h << Complex{1.0, 0.0}, Complex{1.0, 0.0};
    const auto ch = ChannelRealization::make_reciprocal(h, h);
    SystemConfig cfg = trivial_config_sum();
    cfg.sigma_relay = Eigen::VectorXd::Ones(2);
    cfg.relay_constraint = IndividualPowerConstraint{Eigen::VectorXd::Constant(2, 2.0)};
    const auto eff = effective_channels(ch, cfg);
    const auto sol = wsismin_individual(eff, cfg, WsisWeight(0.5));
    CHECK(sol.phi(0) == doctest::Approx(sol.phi(1)));
    CHECK(sol.alpha(0) == doctest::Approx(sol.alpha(1)));
}

TEST_SUITE_END();
