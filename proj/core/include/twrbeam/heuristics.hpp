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

#ifndef TWRBEAM_HEURISTICS_HPP
#define TWRBEAM_HEURISTICS_HPP

#include "twrbeam/types.hpp"

namespace twr {

// Low-complexity beamformers that need only local channel knowledge.
// Phases come from phase alignment on reciprocal channels and from the
// greedy per-relay rule otherwise.

/// Every relay spends P_R / K; requires a sum-power constraint.
BeamVector equal_power(const ChannelRealization& ch, const SystemConfig& cfg);

/// Every relay spends its own cap p_i; requires individual constraints.
BeamVector max_power(const ChannelRealization& ch, const SystemConfig& cfg);

/// Greedy per-relay phase choice for non-reciprocal channels: each relay
/// aligns with whichever direction its own SNR contribution favors.
BeamVector greedy_phase(const ChannelRealization& ch, const SystemConfig& cfg,
                        const Eigen::VectorXd& amplitudes);

} // namespace twr

#endif // TWRBEAM_HEURISTICS_HPP
