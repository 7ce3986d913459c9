#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "twrbeam/sdp.hpp"

using namespace twr;

namespace {

Eigen::MatrixXcd random_hermitian(int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXcd m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = Complex{unit(rng), unit(rng)};
    return 0.5 * (m + m.adjoint()).eval();
}

Eigen::MatrixXcd random_psd(int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXcd m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = Complex{unit(rng), unit(rng)};
    return m * m.adjoint();
}

double trace_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a * b).trace().real();
}

} // namespace

TEST_SUITE_BEGIN("sdp");

TEST_CASE("real embedding of a real scalar") {
    Eigen::MatrixXcd m(1, 1);
    m << Complex{2.0, 0.0};
    const Eigen::MatrixXd e = real_embed(m);
    CHECK(e(0, 0) == doctest::Approx(2.0));
    CHECK(e(1, 1) == doctest::Approx(2.0));
    CHECK(e(0, 1) == doctest::Approx(0.0));

    Eigen::MatrixXcd x(1, 1);
    x << Complex{3.0, 0.0};
    CHECK(trace_product(m, x) == doctest::Approx(0.5 * (real_embed(m) * real_embed(x)).trace()));
}

TEST_CASE("embedding duplicates the spectrum") {
    Eigen::MatrixXcd m(2, 2);
    m << Complex{0, 0}, Complex{0, 1}, Complex{0, -1}, Complex{0, 0};
    const Eigen::MatrixXd e = real_embed(m);
    CHECK((e - e.transpose()).norm() == doctest::Approx(0.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    CHECK(ev(0) == doctest::Approx(-1.0));
    CHECK(ev(1) == doctest::Approx(-1.0));
    CHECK(ev(2) == doctest::Approx(1.0));
    CHECK(ev(3) == doctest::Approx(1.0));
}

TEST_CASE("trace identity on random matrices") {
    const auto m = random_hermitian(4, 5);
    const auto x = random_psd(4, 6);
    const double direct = trace_product(m, x);
    const double embedded = 0.5 * (real_embed(m) * real_embed(x)).trace();
    CHECK(std::abs(direct - embedded) < 1e-12 * std::max(1.0, std::abs(direct)));
}

TEST_CASE("recover is the inverse of embed") {
    const auto m = random_hermitian(5, 7);
    const Eigen::MatrixXcd back = complex_recover(real_embed(m));
    CHECK((back - m).norm() <= 1e-14 * m.norm());
}

TEST_CASE("non-hermitian data is rejected") {
    HermitianTraceSdp p;
    p.dim = 2;
    Eigen::MatrixXcd bad(2, 2);
    bad << Complex{1, 0}, Complex{1, 0}, Complex{0, 0}, Complex{1, 0};
    p.constraints.push_back({bad, ConstraintSense::GreaterEqual, 1.0});
    CHECK_THROWS_AS(p.validate(), ParameterError);
    CHECK_THROWS_AS(real_embed(p), ParameterError);
}

TEST_CASE("scalar problem solves like an lp") {
    HermitianTraceSdp p;
    p.dim = 1;
    p.objective = Eigen::MatrixXcd::Identity(1, 1);
    p.constraints.push_back({Eigen::MatrixXcd::Identity(1, 1), ConstraintSense::GreaterEqual, 1.0});
    const auto out = solve(p);
    REQUIRE(out.status == SdpStatus::Optimal);
    CHECK(out.objective_value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(out.x_matrix(0, 0).real() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(out.dual_objective <= out.objective_value + 1e-7);
    CHECK(out.kkt_residual <= 1e-8);
}

TEST_CASE("contradictory constraints are infeasible with a certificate") {
    HermitianTraceSdp p;
    p.dim = 1;
    p.constraints.push_back({Eigen::MatrixXcd::Identity(1, 1), ConstraintSense::GreaterEqual, 2.0});
    p.diag_upper_bounds = Eigen::VectorXd::Constant(1, 1.0);
    const auto out = solve(p);
    REQUIRE(out.status == SdpStatus::Infeasible);
    REQUIRE(out.certificate.size() == 2);
    // Farkas pair: y0 * I - y1 * E11 <= 0 while 2 y0 - 1 y1 > 0.
    const double y0 = out.certificate(0);
    const double y1 = out.certificate(1);
    CHECK(y0 - y1 <= 1e-8 * std::max(1.0, y1));
    CHECK(2.0 * y0 - y1 > 0.0);
}

TEST_CASE("feasibility with zero targets returns the zero matrix") {
    HermitianTraceSdp p;
    p.dim = 2;
    p.constraints.push_back({random_psd(2, 8), ConstraintSense::GreaterEqual, 0.0});
    const auto out = solve(p);
    REQUIRE(out.status == SdpStatus::Optimal);
    CHECK(out.x_matrix.norm() == doctest::Approx(0.0));
}

TEST_CASE("random constrained minimization satisfies kkt conditions") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const int k = 3;
        HermitianTraceSdp p;
        p.dim = k;
        Eigen::MatrixXcd objective = random_psd(k, seed);
        objective += Eigen::MatrixXcd::Identity(k, k); // strictly positive definite
        p.objective = objective;
        p.constraints.push_back({random_psd(k, seed + 50), ConstraintSense::GreaterEqual, 1.0});
        p.constraints.push_back({random_psd(k, seed + 100), ConstraintSense::GreaterEqual, 0.5});
        const auto out = solve(p);
        REQUIRE(out.status == SdpStatus::Optimal);

        // Primal feasibility.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.x_matrix, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-8 * out.x_matrix.norm());
        for (const auto& c : p.constraints) {
            const double value = trace_product(c.matrix, out.x_matrix);
            CHECK(value >= c.bound - 1e-7 * (1.0 + std::abs(c.bound)));
        }

        // Weak duality and complementarity.
        CHECK(out.dual_objective <= out.objective_value + 1e-7);
        const double gap = trace_product(out.x_matrix, out.dual_slack);
        CHECK(gap <= 1e-8 * (1.0 + std::abs(out.objective_value)));
        CHECK(out.kkt_residual <= 1e-8);
    }
}

TEST_CASE("diagonal bounds hold at the optimum") {
    const int k = 3;
    HermitianTraceSdp p;
    p.dim = k;
    Eigen::MatrixXcd reward = -random_psd(k, 33); // maximize a psd form
    p.objective = reward;
    p.diag_upper_bounds = Eigen::VectorXd::Constant(k, 0.5);
    const auto out = solve(p);
    REQUIRE(out.status == SdpStatus::Optimal);
    for (int i = 0; i < k; ++i) CHECK(out.x_matrix(i, i).real() <= 0.5 + 1e-7);
    CHECK(out.objective_value < 0.0);
}

TEST_CASE("tightening a lower bound never decreases the minimum") {
    const int k = 2;
    const auto b_matrix = random_psd(k, 44);
    double previous = -1.0;
    for (double bound : {0.5, 1.0, 2.0, 4.0}) {
        HermitianTraceSdp p;
        p.dim = k;
        p.objective = Eigen::MatrixXcd::Identity(k, k) + random_psd(k, 45);
        p.constraints.push_back({b_matrix, ConstraintSense::GreaterEqual, bound});
        const auto out = solve(p);
        REQUIRE(out.status == SdpStatus::Optimal);
        CHECK(out.objective_value >= previous - 1e-7 * (1.0 + std::abs(previous)));
        previous = out.objective_value;
    }
}

TEST_CASE("mixed senses work together") {
    // Keep tr(BX) >= 1 but cap tr(X) <= t; the cap binds for small t.
    const int k = 2;
    const auto b_matrix = random_psd(k, 55);
    HermitianTraceSdp p;
    p.dim = k;
    p.objective = Eigen::MatrixXcd::Identity(k, k);
    p.constraints.push_back({b_matrix, ConstraintSense::GreaterEqual, 1.0});
    p.constraints.push_back({Eigen::MatrixXcd::Identity(k, k), ConstraintSense::LessEqual, 100.0});
    const auto out = solve(p);
    REQUIRE(out.status == SdpStatus::Optimal);
    CHECK(trace_product(Eigen::MatrixXcd::Identity(k, k), out.x_matrix) <= 100.0 + 1e-6);
    CHECK(trace_product(b_matrix, out.x_matrix) >= 1.0 - 1e-7);
}

TEST_CASE("tolerance range is enforced") {
    HermitianTraceSdp p;
    p.dim = 1;
    p.objective = Eigen::MatrixXcd::Identity(1, 1);
    CHECK_THROWS_AS(solve(p, 1e-12), ParameterError);
    CHECK_THROWS_AS(solve(p, 1e-3), ParameterError);
}

TEST_SUITE_END();
