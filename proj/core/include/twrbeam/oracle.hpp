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

#ifndef TWRBEAM_ORACLE_HPP
#define TWRBEAM_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "twrbeam/reciprocal.hpp"
#include "twrbeam/nonreciprocal.hpp"
#include "twrbeam/types.hpp"

namespace twr {

// Brute-force baselines used to certify the optimized solvers at small K.
// Not production solvers: grids refuse K > 3.

struct GridSearchResult {
    Eigen::VectorXd best_x; ///< amplitudes of the best grid point
    double best_objective = 0.0;
};

/// Exhaustive weighted sum inverse-SNR minimization. Sum-power constraints
/// enumerate directions on the positive orthant of the power shell;
/// individual constraints enumerate power fractions on a [0,1]^K lattice.
GridSearchResult grid_wsismin(const EffectiveChannels& eff, const SystemConfig& cfg,
                              WsisWeight mu, int resolution);

struct RandomSearchResult {
    double best_r = 0.0;
    BeamVector best_w;
};

/// Random feasible beamformers scored by the rate-profile value
/// min(R1/kappa, R2/kappa_bar); a certified-achievable lower bound on the
/// optimum sum rate.
RandomSearchResult random_search_rate(const EffectiveChannels& eff, const SystemConfig& cfg,
                                      RateProfile profile, int samples, std::uint64_t seed);

/// Rate pairs of random feasible beamformers.
std::vector<RatePoint> enumerate_rate_cloud(const EffectiveChannels& eff, const SystemConfig& cfg,
                                            int samples, std::uint64_t seed);

} // namespace twr

#endif // TWRBEAM_ORACLE_HPP
