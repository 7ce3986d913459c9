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

#include "twrbeam/heuristics.hpp"

#include <cmath>

#include "twrbeam/channel.hpp"
#include "twrbeam/reciprocal.hpp"

namespace twr {

namespace {

BeamVector with_phases(const ChannelRealization& ch, const SystemConfig& cfg,
                       const Eigen::VectorXd& amplitudes) {
    if (ch.reciprocal) {
        const Eigen::VectorXd theta = phase_align(ch);
        BeamVector w(amplitudes.size());
        for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
            w(i) = std::polar(amplitudes(i), theta(i));
        return w;
    }
    return greedy_phase(ch, cfg, amplitudes);
}

} // namespace

BeamVector equal_power(const ChannelRealization& ch, const SystemConfig& cfg) {
    const EffectiveChannels eff = effective_channels(ch, cfg);
    const double share = cfg.sum_power() / static_cast<double>(eff.size());
    const Eigen::VectorXd x = (share * eff.d.cwiseInverse()).cwiseSqrt();
    return with_phases(ch, cfg, x);
}

BeamVector max_power(const ChannelRealization& ch, const SystemConfig& cfg) {
    const EffectiveChannels eff = effective_channels(ch, cfg);
    const Eigen::VectorXd x = cfg.individual_powers().cwiseQuotient(eff.d).cwiseSqrt();
    return with_phases(ch, cfg, x);
}

BeamVector greedy_phase(const ChannelRealization& ch, const SystemConfig& cfg,
                        const Eigen::VectorXd& amplitudes) {
    ch.validate();
    if (amplitudes.size() != ch.size())
        throw DimensionError("amplitude vector length must equal the relay count");

    BeamVector w(ch.size());
    for (Eigen::Index i = 0; i < ch.size(); ++i) {
        const double x2 = amplitudes(i) * amplitudes(i);
        const double to_s1 = x2 * cfg.p_s2 * std::norm(ch.h2(i) * ch.h1r(i)) /
                             (cfg.sigma_s1 + x2 * std::norm(ch.h1r(i)) * cfg.sigma_relay(i));
        const double to_s2 = x2 * cfg.p_s1 * std::norm(ch.h1(i) * ch.h2r(i)) /
                             (cfg.sigma_s2 + x2 * std::norm(ch.h2r(i)) * cfg.sigma_relay(i));
        // Align with the stronger own contribution; ties favor the S1 side.
        const double theta = to_s1 >= to_s2
                                 ? -(std::arg(ch.h2(i)) + std::arg(ch.h1r(i)))
                                 : -(std::arg(ch.h1(i)) + std::arg(ch.h2r(i)));
        w(i) = std::polar(amplitudes(i), theta);
    }
    return w;
}

} // namespace twr
