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

#ifndef TWRBEAM_TYPES_HPP
#define TWRBEAM_TYPES_HPP

#include <complex>
#include <variant>

#include <Eigen/Dense>

#include "twrbeam/errors.hpp"

namespace twr {

using Complex = std::complex<double>;

/// One complex weight per relay node.
using BeamVector = Eigen::VectorXcd;

/// Sum-power budget shared by the whole relay cluster.
struct SumPowerConstraint {
    double p_r = 0.0;
};

/// One power budget per relay node.
struct IndividualPowerConstraint {
    Eigen::VectorXd p;
};

using RelayPowerConstraint = std::variant<SumPowerConstraint, IndividualPowerConstraint>;

/// The four channel vectors of a two-way relay link.
///
/// h1/h2 are the forward channels from the sources into the relay cluster,
/// h1r/h2r the backward channels from the relays to each source. When
/// `reciprocal` is set, the backward vectors must equal the forward ones.
struct ChannelRealization {
    Eigen::VectorXcd h1;
    Eigen::VectorXcd h2;
    Eigen::VectorXcd h1r;
    Eigen::VectorXcd h2r;
    bool reciprocal = false;

    Eigen::Index size() const { return h1.size(); }

    /// Throws DimensionError / ContractViolation when the invariants fail.
    void validate() const;

    /// Convenience constructor for the reciprocal case (h1r = h1, h2r = h2).
    static ChannelRealization make_reciprocal(Eigen::VectorXcd h1, Eigen::VectorXcd h2);
};

/// Source powers, noise variances and the relay power constraint.
struct SystemConfig {
    double p_s1 = 1.0;
    double p_s2 = 1.0;
    Eigen::VectorXd sigma_relay; ///< per-relay noise variances
    double sigma_s1 = 1.0;
    double sigma_s2 = 1.0;
    RelayPowerConstraint relay_constraint = SumPowerConstraint{1.0};

    bool has_sum_power() const { return std::holds_alternative<SumPowerConstraint>(relay_constraint); }
    bool has_individual_power() const { return std::holds_alternative<IndividualPowerConstraint>(relay_constraint); }

    /// P_R for the sum-power case; throws ContractViolation otherwise.
    double sum_power() const;
    /// Per-relay budgets for the individual case; throws ContractViolation otherwise.
    const Eigen::VectorXd& individual_powers() const;
    /// P_R, or the total of the individual budgets.
    double total_power_budget() const;

    /// Throws unless all powers/variances are positive and sizes match k.
    void validate(Eigen::Index k) const;
};

/// Channel/system quantities every solver consumes.
///
/// f1 = h1 .* h2r and f2 = h2 .* h1r are the cascaded two-hop channels;
/// a1/a2 are the relay-noise amplification weights seen by each receiver;
/// d holds the per-relay transmit power per unit |w_i|^2. f_hat carries the
/// cascaded channel magnitudes |h1_i||h2_i| and is populated only for
/// reciprocal realizations.
struct EffectiveChannels {
    Eigen::VectorXcd f1;
    Eigen::VectorXcd f2;
    Eigen::VectorXd f_hat;
    Eigen::VectorXd a1;
    Eigen::VectorXd a2;
    Eigen::VectorXd d;

    Eigen::Index size() const { return f1.size(); }
};

struct RatePoint {
    double r1 = 0.0;
    double r2 = 0.0;
};

struct InverseSnrPoint {
    double t1 = 0.0;
    double t2 = 0.0;
};

struct SnrPair {
    double snr1 = 0.0;
    double snr2 = 0.0;
};

} // namespace twr

#endif // TWRBEAM_TYPES_HPP
