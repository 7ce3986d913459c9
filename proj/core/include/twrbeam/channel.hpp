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

#ifndef TWRBEAM_CHANNEL_HPP
#define TWRBEAM_CHANNEL_HPP

#include <cstdint>

#include "twrbeam/types.hpp"

namespace twr {

/// Derives the effective two-hop channels and noise/power weights.
EffectiveChannels effective_channels(const ChannelRealization& ch, const SystemConfig& cfg);

/// End-to-end SNRs at S1 and S2 for a given beamforming vector.
///
/// snr1 = P_S2 |f2^T w|^2 / (sigma_S1^2 + sum_i a1_i |w_i|^2) and
/// symmetrically for snr2.
SnrPair snr_pair(const BeamVector& w, const EffectiveChannels& eff, const SystemConfig& cfg);

/// Half-duplex rates 0.5*log2(1 + snr) for both directions.
RatePoint rate_pair(const BeamVector& w, const EffectiveChannels& eff, const SystemConfig& cfg);

/// Rate pair from an SNR pair.
RatePoint rate_from_snr(const SnrPair& snr);

struct RelayPowers {
    Eigen::VectorXd per_relay;
    double total = 0.0;
};

/// Transmit power spent by each relay (|w_i|^2 d_i) and their sum.
RelayPowers relay_powers(const BeamVector& w, const ChannelRealization& ch, const SystemConfig& cfg);

struct EmpiricalSnr {
    double snr1 = 0.0;
    double snr2 = 0.0;
};

/// Symbol-level Monte Carlo simulation of one two-slot relaying round.
///
/// Gaussian symbols with E|s1|^2 = P_S1, E|s2|^2 = P_S2 are relayed through
/// the cluster; each receiver cancels its own self-interference and the SNR
/// is measured against the known transmitted symbols. n_symbols must be at
/// least 10^4.
EmpiricalSnr simulate_link(const BeamVector& w, const ChannelRealization& ch, const SystemConfig& cfg,
                           std::int64_t n_symbols, std::uint64_t seed);

} // namespace twr

#endif // TWRBEAM_CHANNEL_HPP
