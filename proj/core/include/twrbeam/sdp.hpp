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

#ifndef TWRBEAM_SDP_HPP
#define TWRBEAM_SDP_HPP

#include <optional>
#include <vector>

#include "twrbeam/types.hpp"

namespace twr {

enum class ConstraintSense { GreaterEqual, LessEqual };

/// One linear trace constraint tr(B X) >= bound or tr(B X) <= bound.
struct TraceConstraint {
    Eigen::MatrixXcd matrix; ///< Hermitian
    ConstraintSense sense = ConstraintSense::GreaterEqual;
    double bound = 0.0;
};

/// A small dense SDP over a complex Hermitian PSD variable X:
///
///   minimize    tr(C X)          (feasibility problem when objective is empty)
///   subject to  tr(B_j X) >= / <= b_j
///               X_ii <= u_i      (optional, real diagonal bounds)
///               X  PSD
struct HermitianTraceSdp {
    Eigen::Index dim = 0;
    std::optional<Eigen::MatrixXcd> objective;
    std::vector<TraceConstraint> constraints;
    Eigen::VectorXd diag_upper_bounds; ///< empty = no diagonal bounds

    /// Throws unless every matrix is Hermitian (to 1e-12) and bounds are finite.
    void validate() const;
};

enum class SdpStatus { Optimal, Infeasible, MaxIterations };

struct SdpOutcome {
    SdpStatus status = SdpStatus::MaxIterations;
    Eigen::MatrixXcd x_matrix;       ///< Hermitian PSD optimizer (Optimal only)
    double objective_value = 0.0;
    double dual_objective = 0.0;
    double kkt_residual = 0.0;       ///< max of scaled primal/dual residual and gap
    Eigen::MatrixXcd dual_slack;     ///< complex dual slack, complements x_matrix
    Eigen::VectorXd certificate;     ///< Farkas multipliers on Infeasible, one per
                                     ///< constraint followed by the diagonal bounds
    double feasibility_margin = 0.0; ///< best strict-feasibility margin found
};

struct SdpOptions {
    double tolerance = 1e-8;
    int max_iterations = 200;
};

/// Real symmetric embedding of a complex matrix M = A + iB as
/// [[A, -B], [B, A]]. For Hermitian M the image is symmetric and
/// tr(M X) = 0.5 * tr(embed(M) embed(X)).
Eigen::MatrixXd real_embed(const Eigen::MatrixXcd& m);

/// Inverse of real_embed on structure-symmetrized matrices:
/// X = (M11 + M22)/2 + i (M21 - M12)/2.
Eigen::MatrixXcd complex_recover(const Eigen::MatrixXd& m_hat);

/// The full problem embedded over a real symmetric variable of size 2K.
/// Constraint values keep their meaning through the 1/2 trace factor.
struct RealTraceSdp {
    Eigen::Index dim = 0; ///< 2K
    std::optional<Eigen::MatrixXd> objective;
    struct RealConstraint {
        Eigen::MatrixXd matrix;
        ConstraintSense sense;
        double bound;
    };
    std::vector<RealConstraint> constraints;
    Eigen::VectorXd diag_pair_upper_bounds; ///< bound on (Xhat_ii + Xhat_{i+K,i+K})/2
};

RealTraceSdp real_embed(const HermitianTraceSdp& p);

/// Primal-dual interior-point solve of the real embedding, recovered back to
/// complex form. Infeasible is reported only together with a validated
/// separating certificate; when the iteration cap is hit the status is
/// MaxIterations and the caller should treat the result as a numerical
/// failure.
SdpOutcome solve(const HermitianTraceSdp& p, const SdpOptions& options = {});
SdpOutcome solve(const HermitianTraceSdp& p, double tolerance);

} // namespace twr

#endif // TWRBEAM_SDP_HPP
