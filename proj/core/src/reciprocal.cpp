// twrbeam - distributed beamforming and achievable rate regions for
// two-way amplify-and-forward relay networks
// Copyright (C) 2026 the twrbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "twrbeam/reciprocal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace twr {

namespace {

// mu (sigma_S1^2 + x^T A1 x) / P_S2 + mu_bar (sigma_S2^2 + x^T A2 x) / P_S1,
// split into the constant part nu and the quadratic weights per relay.
double noise_weight_nu(const SystemConfig& cfg, WsisWeight mu) {
    return mu.mu * cfg.sigma_s1 / cfg.p_s2 + mu.mu_bar() * cfg.sigma_s2 / cfg.p_s1;
}

double quadratic_weight_eta(double h1_abs2, double h2_abs2, double sigma2_i,
                            const SystemConfig& cfg, WsisWeight mu) {
    return sigma2_i * (h1_abs2 * mu.mu / cfg.p_s2 + h2_abs2 * mu.mu_bar() / cfg.p_s1);
}

double normalize_angle(double theta) {
    theta = std::remainder(theta, 2.0 * std::numbers::pi);
    if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
    return theta;
}

void require_reciprocal(const EffectiveChannels& eff) {
    if (eff.f_hat.size() != eff.size())
        throw ContractViolation("reciprocal effective channels required (f_hat missing)");
}

} // namespace

WsisWeight::WsisWeight(double m) : mu(m) {
    if (!(m >= 0.0 && m <= 1.0)) throw ParameterError("wsis weight must lie in [0, 1]");
}

Eigen::VectorXd phase_align(const ChannelRealization& ch) {
    ch.validate();
    if (!ch.reciprocal) throw ContractViolation("phase alignment is defined for reciprocal channels");
    Eigen::VectorXd theta(ch.size());
    for (Eigen::Index i = 0; i < ch.size(); ++i)
        theta(i) = normalize_angle(-(std::arg(ch.h1(i)) + std::arg(ch.h2(i))));
    return theta;
}

double wsis_objective(const Eigen::VectorXd& x, const EffectiveChannels& eff,
                      const SystemConfig& cfg, WsisWeight mu) {
    require_reciprocal(eff);
    if (x.size() != eff.size()) throw DimensionError("amplitude vector length must equal the relay count");
    const double gain = eff.f_hat.dot(x);
    const double signal = gain * gain;
    if (signal <= 0.0) return std::numeric_limits<double>::infinity();
    const Eigen::VectorXd x2 = x.cwiseAbs2();
    const double inv1 = (cfg.sigma_s1 + eff.a1.dot(x2)) / (cfg.p_s2 * signal);
    const double inv2 = (cfg.sigma_s2 + eff.a2.dot(x2)) / (cfg.p_s1 * signal);
    return mu.mu * inv1 + mu.mu_bar() * inv2;
}

BeamVector SumPowerSolution::beamformer(const ChannelRealization& ch) const {
    const Eigen::VectorXd theta = phase_align(ch);
    BeamVector w(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) w(i) = std::polar(x(i), theta(i));
    return w;
}

SumPowerSolution wsismin_sum_power(const EffectiveChannels& eff, const SystemConfig& cfg, WsisWeight mu) {
    require_reciprocal(eff);
    const Eigen::Index k = eff.size();
    if (!cfg.has_sum_power()) throw ContractViolation("wsismin_sum_power needs a sum-power constraint");
    const double p_r = cfg.sum_power();
    if (eff.f_hat.maxCoeff() <= 0.0)
        throw DegenerateChannelError("every relay sees a silent source; no beamforming gain exists");

    SumPowerSolution sol;
    sol.nu = noise_weight_nu(cfg, mu);
    sol.gamma_diag.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double beta = eff.d(i); // per-relay power per unit amplitude^2
        const double h1_abs2 = eff.a1(i) / cfg.sigma_relay(i);
        const double h2_abs2 = eff.a2(i) / cfg.sigma_relay(i);
        const double eta = quadratic_weight_eta(h1_abs2, h2_abs2, cfg.sigma_relay(i), cfg, mu);
        sol.gamma_diag(i) = sol.nu * beta / p_r + eta;
    }

    const Eigen::VectorXd direction = eff.f_hat.cwiseQuotient(sol.gamma_diag);
    const double norm = direction.norm();
    const Eigen::VectorXd unit = direction / norm;
    sol.xi = std::sqrt(p_r / unit.cwiseAbs2().dot(eff.d));
    sol.x = sol.xi * unit;
    sol.broadcast = sol.xi / norm;
    return sol;
}

Complex local_weight_sum_power(Complex h1i, Complex h2i, double sigma2_i,
                               const SystemConfig& cfg, WsisWeight mu, double broadcast) {
    const double p_r = cfg.sum_power();
    const double h1_abs2 = std::norm(h1i);
    const double h2_abs2 = std::norm(h2i);
    const double nu = noise_weight_nu(cfg, mu);
    const double beta = sigma2_i + cfg.p_s1 * h1_abs2 + cfg.p_s2 * h2_abs2;
    const double eta = quadratic_weight_eta(h1_abs2, h2_abs2, sigma2_i, cfg, mu);
    const double amplitude = broadcast * std::abs(h1i) * std::abs(h2i) / (nu * beta / p_r + eta);
    const double theta = normalize_angle(-(std::arg(h1i) + std::arg(h2i)));
    return std::polar(amplitude, theta);
}

Eigen::VectorXd IndividualSolution::amplitudes(const EffectiveChannels& eff, const SystemConfig& cfg) const {
    const Eigen::VectorXd& p = cfg.individual_powers();
    return alpha.cwiseProduct(p.cwiseQuotient(eff.d).cwiseSqrt());
}

BeamVector IndividualSolution::beamformer(const ChannelRealization& ch, const EffectiveChannels& eff,
                                          const SystemConfig& cfg) const {
    const Eigen::VectorXd x = amplitudes(eff, cfg);
    const Eigen::VectorXd theta = phase_align(ch);
    BeamVector w(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) w(i) = std::polar(x(i), theta(i));
    return w;
}

IndividualSolution wsismin_individual(const EffectiveChannels& eff, const SystemConfig& cfg, WsisWeight mu) {
    require_reciprocal(eff);
    const Eigen::Index k = eff.size();
    if (!cfg.has_individual_power())
        throw ContractViolation("wsismin_individual needs individual power constraints");
    const Eigen::VectorXd& p = cfg.individual_powers();

    IndividualSolution sol;
    sol.psi.resize(k);
    sol.g_tilde.resize(k);
    sol.phi.resize(k);
    const double nu = noise_weight_nu(cfg, mu);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double h1_abs2 = eff.a1(i) / cfg.sigma_relay(i);
        const double h2_abs2 = eff.a2(i) / cfg.sigma_relay(i);
        const double g = std::sqrt(p(i)) * eff.f_hat(i) / std::sqrt(eff.d(i));
        const double psi2 =
            p(i) * quadratic_weight_eta(h1_abs2, h2_abs2, cfg.sigma_relay(i), cfg, mu) / (eff.d(i) * nu);
        sol.psi(i) = std::sqrt(psi2);
        sol.g_tilde(i) = g / std::sqrt(nu);
        if (psi2 > 0.0)
            sol.phi(i) = sol.g_tilde(i) / psi2;
        else
            sol.phi(i) = sol.g_tilde(i) > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    if ((sol.phi.array() <= 0.0).all())
        throw DegenerateChannelError("every relay sees a silent source; no beamforming gain exists");

    // Sort phi descending; ties fall back to ascending relay index.
    sol.tau.resize(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) sol.tau[static_cast<std::size_t>(i)] = i;
    std::stable_sort(sol.tau.begin(), sol.tau.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return sol.phi(a) > sol.phi(b); });

    // lambda_k = (1 + sum psi^2) / (sum g_tilde) over the k largest phi;
    // stop at the first k with lambda_k < 1/phi_{tau_{k+1}} (the sentinel
    // phi_{K+1} = 0 makes the final comparison succeed). The linear g_tilde
    // sum is what the stationarity condition alpha_i = lambda*phi_i forces
    // once the clamped set is substituted back.
    double psi2_acc = 0.0;
    double g_acc = 0.0;
    double lambda = 0.0;
    Eigen::Index k_star = k;
    for (Eigen::Index j = 0; j < k; ++j) {
        const Eigen::Index idx = sol.tau[static_cast<std::size_t>(j)];
        psi2_acc += sol.psi(idx) * sol.psi(idx);
        g_acc += sol.g_tilde(idx);
        lambda = (1.0 + psi2_acc) / g_acc;
        const double next_phi =
            j + 1 < k ? sol.phi(sol.tau[static_cast<std::size_t>(j + 1)]) : 0.0;
        const double threshold =
            next_phi > 0.0 ? 1.0 / next_phi : std::numeric_limits<double>::infinity();
        if (lambda < threshold) {
            k_star = j + 1;
            break;
        }
    }
    sol.k_star = k_star;
    sol.lambda_star = lambda;

    sol.alpha.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const Eigen::Index idx = sol.tau[static_cast<std::size_t>(j)];
        sol.alpha(idx) = j < k_star ? 1.0 : sol.lambda_star * sol.phi(idx);
    }
    return sol;
}

Complex local_weight_individual(Complex h1i, Complex h2i, double sigma2_i, double p_i,
                                const SystemConfig& cfg, WsisWeight mu, double lambda_star) {
    const double h1_abs2 = std::norm(h1i);
    const double h2_abs2 = std::norm(h2i);
    const double d_i = sigma2_i + cfg.p_s1 * h1_abs2 + cfg.p_s2 * h2_abs2;
    const double nu = noise_weight_nu(cfg, mu);
    const double g = std::sqrt(p_i) * std::abs(h1i) * std::abs(h2i) / std::sqrt(d_i);
    const double psi2 = p_i * quadratic_weight_eta(h1_abs2, h2_abs2, sigma2_i, cfg, mu) / (d_i * nu);
    const double g_tilde = g / std::sqrt(nu);
    double phi;
    if (psi2 > 0.0)
        phi = g_tilde / psi2;
    else
        phi = g_tilde > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;

    double alpha;
    if (phi <= 0.0)
        alpha = 0.0;
    else if (1.0 / phi <= lambda_star)
        alpha = 1.0;
    else
        alpha = lambda_star * phi;

    const double amplitude = alpha * std::sqrt(p_i / d_i);
    const double theta = normalize_angle(-(std::arg(h1i) + std::arg(h2i)));
    return std::polar(amplitude, theta);
}

} // namespace twr
