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

#include "twrbeam/channel.hpp"

#include <cmath>
#include <random>

#include "twrbeam/detail/support.hpp"

namespace twr {

void ChannelRealization::validate() const {
    const Eigen::Index k = h1.size();
    if (k < 1) throw DimensionError("channel realization needs at least one relay");
    if (h2.size() != k || h1r.size() != k || h2r.size() != k)
        throw DimensionError("channel vectors must all have the same length");
    if (!h1.allFinite() || !h2.allFinite() || !h1r.allFinite() || !h2r.allFinite())
        throw ParameterError("channel coefficients must be finite");
    if (reciprocal && ((h1r.array() != h1.array()).any() || (h2r.array() != h2.array()).any()))
        throw ContractViolation("reciprocal flag set but backward channels differ from forward ones");
}

ChannelRealization ChannelRealization::make_reciprocal(Eigen::VectorXcd h1, Eigen::VectorXcd h2) {
    ChannelRealization ch;
    ch.h1 = std::move(h1);
    ch.h2 = std::move(h2);
    ch.h1r = ch.h1;
    ch.h2r = ch.h2;
    ch.reciprocal = true;
    ch.validate();
    return ch;
}

double SystemConfig::sum_power() const {
    if (const auto* sum = std::get_if<SumPowerConstraint>(&relay_constraint)) return sum->p_r;
    throw ContractViolation("sum-power constraint required");
}

const Eigen::VectorXd& SystemConfig::individual_powers() const {
    if (const auto* ind = std::get_if<IndividualPowerConstraint>(&relay_constraint)) return ind->p;
    throw ContractViolation("individual power constraints required");
}

double SystemConfig::total_power_budget() const {
    if (has_sum_power()) return sum_power();
    return individual_powers().sum();
}

void SystemConfig::validate(Eigen::Index k) const {
    if (p_s1 <= 0.0 || p_s2 <= 0.0) throw ParameterError("source powers must be positive");
    if (sigma_s1 <= 0.0 || sigma_s2 <= 0.0) throw ParameterError("receiver noise variances must be positive");
    if (sigma_relay.size() != k) throw DimensionError("sigma_relay length must equal the relay count");
    if ((sigma_relay.array() <= 0.0).any()) throw ParameterError("relay noise variances must be positive");
    if (const auto* ind = std::get_if<IndividualPowerConstraint>(&relay_constraint)) {
        if (ind->p.size() != k) throw DimensionError("individual power vector length must equal the relay count");
        if ((ind->p.array() <= 0.0).any()) throw ParameterError("relay power budgets must be positive");
    } else {
        if (sum_power() <= 0.0) throw ParameterError("relay sum power must be positive");
    }
}

EffectiveChannels effective_channels(const ChannelRealization& ch, const SystemConfig& cfg) {
    ch.validate();
    const Eigen::Index k = ch.size();
    cfg.validate(k);

    EffectiveChannels eff;
    eff.f1 = ch.h1.cwiseProduct(ch.h2r);
    eff.f2 = ch.h2.cwiseProduct(ch.h1r);
    eff.a1 = ch.h1r.cwiseAbs2().cwiseProduct(cfg.sigma_relay);
    eff.a2 = ch.h2r.cwiseAbs2().cwiseProduct(cfg.sigma_relay);
    eff.d = cfg.p_s1 * ch.h1.cwiseAbs2() + cfg.p_s2 * ch.h2.cwiseAbs2() + cfg.sigma_relay;
    if (ch.reciprocal) eff.f_hat = ch.h1.cwiseAbs().cwiseProduct(ch.h2.cwiseAbs());
    return eff;
}

SnrPair snr_pair(const BeamVector& w, const EffectiveChannels& eff, const SystemConfig& cfg) {
    if (w.size() != eff.size()) throw DimensionError("beam vector length must equal the relay count");
    const Eigen::VectorXd w2 = w.cwiseAbs2();
    const double num1 = cfg.p_s2 * std::norm(eff.f2.cwiseProduct(w).sum());
    const double num2 = cfg.p_s1 * std::norm(eff.f1.cwiseProduct(w).sum());
    SnrPair out;
    out.snr1 = num1 / (cfg.sigma_s1 + eff.a1.dot(w2));
    out.snr2 = num2 / (cfg.sigma_s2 + eff.a2.dot(w2));
    return out;
}

RatePoint rate_from_snr(const SnrPair& snr) {
    return {0.5 * std::log2(1.0 + snr.snr1), 0.5 * std::log2(1.0 + snr.snr2)};
}

RatePoint rate_pair(const BeamVector& w, const EffectiveChannels& eff, const SystemConfig& cfg) {
    return rate_from_snr(snr_pair(w, eff, cfg));
}

RelayPowers relay_powers(const BeamVector& w, const ChannelRealization& ch, const SystemConfig& cfg) {
    const EffectiveChannels eff = effective_channels(ch, cfg);
    if (w.size() != eff.size()) throw DimensionError("beam vector length must equal the relay count");
    RelayPowers out;
    out.per_relay = w.cwiseAbs2().cwiseProduct(eff.d);
    out.total = out.per_relay.sum();
    return out;
}

EmpiricalSnr simulate_link(const BeamVector& w, const ChannelRealization& ch, const SystemConfig& cfg,
                           std::int64_t n_symbols, std::uint64_t seed) {
    if (n_symbols < 10000) throw ParameterError("simulate_link needs at least 1e4 symbols");
    const EffectiveChannels eff = effective_channels(ch, cfg);
    const Eigen::Index k = eff.size();
    if (w.size() != k) throw DimensionError("beam vector length must equal the relay count");

    // Signal coefficients after self-interference cancellation.
    const Complex c1 = eff.f2.cwiseProduct(w).sum(); // carries s2 toward S1
    const Complex c2 = eff.f1.cwiseProduct(w).sum(); // carries s1 toward S2

    // Self-interference coefficients known to each source.
    const Complex e1 = ch.h1.cwiseProduct(ch.h1r).cwiseProduct(w).sum();
    const Complex e2 = ch.h2.cwiseProduct(ch.h2r).cwiseProduct(w).sum();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    auto cscg = [&](double variance) {
        const double s = std::sqrt(variance / 2.0);
        return Complex{unit(rng) * s, unit(rng) * s};
    };

    double sig1 = 0.0, res1 = 0.0, sig2 = 0.0, res2 = 0.0;
    for (std::int64_t n = 0; n < n_symbols; ++n) {
        const Complex s1 = cscg(cfg.p_s1);
        const Complex s2 = cscg(cfg.p_s2);

        // Relay forwarding with per-relay receiver noise.
        Complex y1 = cscg(cfg.sigma_s1);
        Complex y2 = cscg(cfg.sigma_s2);
        for (Eigen::Index i = 0; i < k; ++i) {
            const Complex t = ch.h1(i) * s1 + ch.h2(i) * s2 + cscg(cfg.sigma_relay(i));
            const Complex u = w(i) * t;
            y1 += ch.h1r(i) * u;
            y2 += ch.h2r(i) * u;
        }

        // Subtract the known echo, then project on the known symbol.
        const Complex clean1 = y1 - e1 * s1;
        const Complex clean2 = y2 - e2 * s2;
        const Complex want1 = c1 * s2;
        const Complex want2 = c2 * s1;
        sig1 += std::norm(want1);
        res1 += std::norm(clean1 - want1);
        sig2 += std::norm(want2);
        res2 += std::norm(clean2 - want2);
    }
    return {sig1 / res1, sig2 / res2};
}

} // namespace twr
