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

#ifndef TWRBEAM_RECIPROCAL_HPP
#define TWRBEAM_RECIPROCAL_HPP

#include "twrbeam/types.hpp"

namespace twr {

/// Weight of the weighted sum inverse-SNR objective, in [0, 1].
struct WsisWeight {
    double mu = 0.5;

    WsisWeight() = default;
    explicit WsisWeight(double m);

    double mu_bar() const { return 1.0 - mu; }
};

/// Closed-form minimizer under the sum-power constraint.
struct SumPowerSolution {
    Eigen::VectorXd x;        ///< optimal relay amplitudes |w_i|
    double xi = 0.0;          ///< scale putting x on the full-power shell
    Eigen::VectorXd gamma_diag;
    double broadcast = 0.0;   ///< xi / ||Gamma^{-1} f_hat||, the one scalar each relay needs
    double nu = 0.0;

    /// Full beamformer: amplitudes combined with the aligned phases.
    BeamVector beamformer(const ChannelRealization& ch) const;
};

/// Water-filling style minimizer under individual power constraints.
///
/// alpha holds the per-relay power fractions; relays tau[0..k_star-1]
/// transmit at full power and the rest back off linearly with their phi.
struct IndividualSolution {
    Eigen::VectorXd alpha;
    Eigen::Index k_star = 0;  ///< number of full-power relays
    double lambda_star = 0.0;
    std::vector<Eigen::Index> tau; ///< relay indices sorted by descending phi
    Eigen::VectorXd psi;
    Eigen::VectorXd g_tilde;
    Eigen::VectorXd phi;

    /// Amplitudes alpha_i * sqrt(p_i / d_i).
    Eigen::VectorXd amplitudes(const EffectiveChannels& eff, const SystemConfig& cfg) const;
    BeamVector beamformer(const ChannelRealization& ch, const EffectiveChannels& eff,
                          const SystemConfig& cfg) const;
};

/// Phase of the optimal reciprocal beamformer: theta_i = -(arg h1_i + arg h2_i),
/// normalized to (-pi, pi]. Throws ContractViolation on non-reciprocal input.
Eigen::VectorXd phase_align(const ChannelRealization& ch);

/// Weighted sum inverse-SNR value of an amplitude vector (reciprocal channels).
double wsis_objective(const Eigen::VectorXd& x, const EffectiveChannels& eff,
                      const SystemConfig& cfg, WsisWeight mu);

/// Closed-form solution of the weighted sum inverse-SNR minimization on the
/// sum-power shell x^T D x = P_R. Throws DegenerateChannelError when f_hat = 0.
SumPowerSolution wsismin_sum_power(const EffectiveChannels& eff, const SystemConfig& cfg, WsisWeight mu);

/// One relay's weight from its local channels plus the broadcast scalar.
Complex local_weight_sum_power(Complex h1i, Complex h2i, double sigma2_i,
                               const SystemConfig& cfg, WsisWeight mu, double broadcast);

/// Closed-form solution of the weighted sum inverse-SNR minimization under
/// per-relay power constraints. Throws DegenerateChannelError when no relay
/// carries signal.
IndividualSolution wsismin_individual(const EffectiveChannels& eff, const SystemConfig& cfg, WsisWeight mu);

/// One relay's weight from its local channels plus the broadcast threshold.
Complex local_weight_individual(Complex h1i, Complex h2i, double sigma2_i, double p_i,
                                const SystemConfig& cfg, WsisWeight mu, double lambda_star);

} // namespace twr

#endif // TWRBEAM_RECIPROCAL_HPP
