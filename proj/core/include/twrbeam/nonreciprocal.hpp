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

#ifndef TWRBEAM_NONRECIPROCAL_HPP
#define TWRBEAM_NONRECIPROCAL_HPP

#include <cstdint>
#include <vector>

#include "twrbeam/sdp.hpp"
#include "twrbeam/types.hpp"

namespace twr {

/// Rate-profile split: direction 1 gets kappa * r of the sum rate r.
struct RateProfile {
    double kappa = 0.5;

    RateProfile() = default;
    explicit RateProfile(double k);

    double kappa_bar() const { return 1.0 - kappa; }
};

struct SnrTargets {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

struct BisectionConfig {
    double epsilon = 1e-3; ///< sum-rate tolerance in bits
    double r_max = 0.0;    ///< 0 = derive from rate_upper_bound
    int max_steps = 96;
    int randomization_candidates = 1000; ///< rank-one recovery draws (individual path)
};

/// SNR targets implied by a sum rate r and a profile:
/// gamma1 = 2^(2 kappa r) - 1, gamma2 = 2^(2 kappa_bar r) - 1.
SnrTargets snr_targets(RateProfile profile, double r);

/// Upper bound on the achievable sum rate: twice the better of the two
/// decoupled one-way rates under a sum-power relaxation of the constraint.
double rate_upper_bound(const EffectiveChannels& eff, const SystemConfig& cfg);

/// Tolerances the rate-profile pipeline hands to the SDP engine: looser than
/// the engine's 1e-8 default because the relaxations routinely lose strict
/// complementarity at rank-one optima, with a higher iteration cap to match.
/// A 1e-6 duality gap moves bisection decisions by ~1e-7 bits, far below the
/// bisection epsilon, and recovered beamformers re-verify their constraints
/// directly.
inline constexpr SdpOptions kPipelineSdpOptions{1e-6, 600};

struct MinSumPowerResult {
    SdpStatus status = SdpStatus::Infeasible;
    double p_r_star = 0.0; ///< +inf encoded by infeasible status
    Eigen::MatrixXcd x_opt;
    SdpOutcome outcome;
};

/// Minimum relay sum power supporting the SNR targets (relaxed problem).
/// A positive power_cap adds tr(D X) <= power_cap, turning "needs more than
/// the cap" into a certified Infeasible; the bisection uses this since only
/// the comparison against the budget matters there.
MinSumPowerResult min_sum_power(const EffectiveChannels& eff, const SystemConfig& cfg,
                                const SnrTargets& targets, const SdpOptions& options = kPipelineSdpOptions,
                                double power_cap = 0.0);

/// Feasibility of the SNR targets under per-relay power caps (relaxed problem).
SdpOutcome feasibility_individual(const EffectiveChannels& eff, const SystemConfig& cfg,
                                  const SnrTargets& targets, const SdpOptions& options = kPipelineSdpOptions);

struct BisectionStep {
    double r = 0.0;
    bool feasible = false;
    double p_r_star = 0.0; ///< sum-power path only; +inf when infeasible
};

struct BisectionResult {
    double r_star = 0.0;
    Eigen::MatrixXcd x_opt;        ///< relaxed optimizer at r_star (zero when r_star = 0)
    SnrTargets targets;            ///< targets at r_star
    std::vector<BisectionStep> trace;
};

/// Bisection over the sum rate, solving a power minimization at each step.
BisectionResult bisect_sum_power(const EffectiveChannels& eff, const SystemConfig& cfg,
                                 RateProfile profile, const BisectionConfig& bis,
                                 const SdpOptions& options = kPipelineSdpOptions);

/// Bisection over the sum rate, solving a feasibility problem at each step.
BisectionResult bisect_individual(const EffectiveChannels& eff, const SystemConfig& cfg,
                                  RateProfile profile, const BisectionConfig& bis,
                                  const SdpOptions& options = kPipelineSdpOptions);

/// Constructive rank reduction of an SDP optimizer that must keep the trace
/// values against `preserve` and `objective` (at most three matrices in
/// total). Returns w with w w^H equal to the final rank-one matrix.
BeamVector rank_one_reduce(const Eigen::MatrixXcd& x_opt,
                           const std::vector<Eigen::MatrixXcd>& preserve,
                           const Eigen::MatrixXcd& objective);

/// Random-phase rank-one recovery that keeps |w_i|^2 = X_ii exactly; the
/// candidate with the smallest SNR-constraint violation score wins.
BeamVector randomize_rank_one(const Eigen::MatrixXcd& x_opt, const EffectiveChannels& eff,
                              const SystemConfig& cfg, const SnrTargets& targets,
                              int num_candidates, std::uint64_t seed);

struct NonreciprocalSolution {
    BeamVector w;
    RatePoint rates;
    double r_star = 0.0;
    BisectionResult bisection;
};

/// Full rate-profile pipeline: bisection, then rank-one recovery
/// (constructive under a sum-power constraint, randomized under individual
/// constraints).
NonreciprocalSolution solve_nonreciprocal(const ChannelRealization& ch, const SystemConfig& cfg,
                                          RateProfile profile, const BisectionConfig& bis,
                                          std::uint64_t seed, const SdpOptions& options = kPipelineSdpOptions);

} // namespace twr

#endif // TWRBEAM_NONRECIPROCAL_HPP
