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

#include "twrbeam/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "twrbeam/channel.hpp"
#include "twrbeam/detail/support.hpp"

namespace twr {

namespace {

// Objective of the weighted sum inverse-SNR problem, written so the grid
// loops stay cheap: numerator terms accumulate over coordinates.
struct WsisTerms {
    double nu = 0.0;
    Eigen::VectorXd quad; // per-relay quadratic weight on x_i^2
    Eigen::VectorXd gain; // f_hat

    double value(const Eigen::VectorXd& x) const {
        const double g = gain.dot(x);
        if (g <= 0.0) return std::numeric_limits<double>::infinity();
        return (nu + quad.dot(x.cwiseAbs2())) / (g * g);
    }
};

WsisTerms wsis_terms(const EffectiveChannels& eff, const SystemConfig& cfg, WsisWeight mu) {
    WsisTerms t;
    t.nu = mu.mu * cfg.sigma_s1 / cfg.p_s2 + mu.mu_bar() * cfg.sigma_s2 / cfg.p_s1;
    t.quad = mu.mu / cfg.p_s2 * eff.a1 + mu.mu_bar() / cfg.p_s1 * eff.a2;
    t.gain = eff.f_hat;
    return t;
}

void require_small_k(Eigen::Index k) {
    if (k > 3) throw ParameterError("grid oracle refuses K > 3");
}

// Scales a nonnegative direction onto the shell x^T D x = P_R and evaluates.
void consider_direction(const Eigen::VectorXd& dir, const Eigen::VectorXd& d, double p_r,
                        const WsisTerms& terms, Eigen::VectorXd& best_x, double& best_obj) {
    const double power = dir.cwiseAbs2().dot(d);
    if (power <= 0.0) return;
    const Eigen::VectorXd x = dir * std::sqrt(p_r / power);
    const double obj = terms.value(x);
    if (obj < best_obj) {
        best_obj = obj;
        best_x = x;
    }
}

BeamVector random_feasible_beamformer(const EffectiveChannels& eff, const SystemConfig& cfg,
                                      std::mt19937_64& rng) {
    const Eigen::Index k = eff.size();
    const Eigen::VectorXcd g = detail::complex_gaussian(k, 1.0, rng);
    if (cfg.has_sum_power()) {
        const double power = g.cwiseAbs2().dot(eff.d);
        if (power <= 0.0) return BeamVector::Zero(k);
        return g * std::sqrt(cfg.sum_power() / power);
    }
    const Eigen::VectorXd& p = cfg.individual_powers();
    double scale = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < k; ++i) {
        const double used = std::norm(g(i)) * eff.d(i);
        if (used > 0.0) scale = std::min(scale, p(i) / used);
    }
    if (!std::isfinite(scale)) return BeamVector::Zero(k);
    return g * std::sqrt(scale);
}

} // namespace

GridSearchResult grid_wsismin(const EffectiveChannels& eff, const SystemConfig& cfg,
                              WsisWeight mu, int resolution) {
    const Eigen::Index k = eff.size();
    require_small_k(k);
    if (resolution < 100) throw ParameterError("grid oracle needs resolution >= 100");
    if (eff.f_hat.size() != k)
        throw ContractViolation("grid oracle expects reciprocal effective channels");

    const WsisTerms terms = wsis_terms(eff, cfg, mu);
    GridSearchResult out;
    out.best_objective = std::numeric_limits<double>::infinity();
    out.best_x = Eigen::VectorXd::Zero(k);

    if (cfg.has_sum_power()) {
        const double p_r = cfg.sum_power();
        // Direction grid on the positive orthant, normalized onto the shell.
        if (k == 1) {
            consider_direction(Eigen::VectorXd::Ones(1), eff.d, p_r, terms, out.best_x,
                               out.best_objective);
        } else if (k == 2) {
            Eigen::VectorXd dir(2);
            for (int i = 0; i <= resolution; ++i) {
                const double angle = 0.5 * std::numbers::pi * i / resolution;
                dir << std::cos(angle), std::sin(angle);
                consider_direction(dir, eff.d, p_r, terms, out.best_x, out.best_objective);
            }
        } else {
            Eigen::VectorXd dir(3);
            for (int i = 0; i <= resolution; ++i) {
                const double a = 0.5 * std::numbers::pi * i / resolution;
                for (int j = 0; j <= resolution; ++j) {
                    const double b = 0.5 * std::numbers::pi * j / resolution;
                    dir << std::cos(a) * std::cos(b), std::cos(a) * std::sin(b), std::sin(a);
                    consider_direction(dir, eff.d, p_r, terms, out.best_x, out.best_objective);
                }
            }
        }
        return out;
    }

    // Individual constraints: lattice over the power fractions in [0,1]^K.
    const Eigen::VectorXd& p = cfg.individual_powers();
    const Eigen::VectorXd full = p.cwiseQuotient(eff.d).cwiseSqrt(); // x at alpha = 1
    const double step = 1.0 / resolution;

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd best_alpha = Eigen::VectorXd::Zero(k);
    const Eigen::VectorXd gain_full = terms.gain.cwiseProduct(full);
    const Eigen::VectorXd quad_full = terms.quad.cwiseProduct(full.cwiseAbs2());

    double best = std::numeric_limits<double>::infinity();
    auto scan_last_axis = [&](double gain_acc, double quad_acc, Eigen::Index last) {
        for (int s = 0; s <= resolution; ++s) {
            const double a = s * step;
            const double g = gain_acc + a * gain_full(last);
            if (g <= 0.0) continue;
            const double obj = (terms.nu + quad_acc + a * a * quad_full(last)) / (g * g);
            if (obj < best) {
                best = obj;
                alpha(last) = a;
                best_alpha = alpha;
            }
        }
    };

    if (k == 1) {
        scan_last_axis(0.0, 0.0, 0);
    } else if (k == 2) {
        for (int s0 = 0; s0 <= resolution; ++s0) {
            alpha(0) = s0 * step;
            scan_last_axis(alpha(0) * gain_full(0), alpha(0) * alpha(0) * quad_full(0), 1);
        }
    } else {
        for (int s0 = 0; s0 <= resolution; ++s0) {
            alpha(0) = s0 * step;
            const double g0 = alpha(0) * gain_full(0);
            const double q0 = alpha(0) * alpha(0) * quad_full(0);
            for (int s1 = 0; s1 <= resolution; ++s1) {
                alpha(1) = s1 * step;
                scan_last_axis(g0 + alpha(1) * gain_full(1), q0 + alpha(1) * alpha(1) * quad_full(1), 2);
            }
        }
    }
    out.best_objective = best;
    out.best_x = best_alpha.cwiseProduct(full);
    return out;
}

RandomSearchResult random_search_rate(const EffectiveChannels& eff, const SystemConfig& cfg,
                                      RateProfile profile, int samples, std::uint64_t seed) {
    RandomSearchResult out;
    out.best_w = BeamVector::Zero(eff.size());
    out.best_r = 0.0; // the zero beamformer seeds the search

    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        const BeamVector w = random_feasible_beamformer(eff, cfg, rng);
        const RatePoint rates = rate_pair(w, eff, cfg);
        double r = std::numeric_limits<double>::infinity();
        if (profile.kappa > 0.0) r = std::min(r, rates.r1 / profile.kappa);
        if (profile.kappa_bar() > 0.0) r = std::min(r, rates.r2 / profile.kappa_bar());
        if (!std::isfinite(r)) r = 0.0;
        if (r > out.best_r) {
            out.best_r = r;
            out.best_w = w;
        }
    }
    return out;
}

std::vector<RatePoint> enumerate_rate_cloud(const EffectiveChannels& eff, const SystemConfig& cfg,
                                            int samples, std::uint64_t seed) {
    std::vector<RatePoint> cloud(static_cast<std::size_t>(samples));
    std::mt19937_64 rng(seed);
    for (auto& point : cloud) point = rate_pair(random_feasible_beamformer(eff, cfg, rng), eff, cfg);
    return cloud;
}

} // namespace twr
