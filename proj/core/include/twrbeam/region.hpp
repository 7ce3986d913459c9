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

#ifndef TWRBEAM_REGION_HPP
#define TWRBEAM_REGION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "twrbeam/nonreciprocal.hpp"
#include "twrbeam/types.hpp"

namespace twr {

struct RegionMetadata {
    std::vector<double> grid;   ///< mu or kappa values swept
    std::string sweep;          ///< "reciprocal" or "nonreciprocal"
    std::string constraint;     ///< "sum" or "individual"
    std::uint64_t seed = 0;
};

/// A sampled achievable rate region: the swept boundary points plus the
/// convex hull over those points, the origin, and both axis anchor points
/// (R1max, 0) and (0, R2max).
struct RegionEstimate {
    std::vector<RatePoint> raw_points;
    std::vector<RatePoint> hull_vertices; ///< counter-clockwise
    RegionMetadata metadata;

    double hull_area() const;
    /// True when p lies inside (or within tol outside of) the hull polygon.
    bool contains(const RatePoint& p, double tol) const;
};

/// The bijection from inverse-SNR pairs to rate pairs,
/// (t1, t2) -> (0.5 log2(1 + 1/t1), 0.5 log2(1 + 1/t2)).
RatePoint map_u(const InverseSnrPoint& p);

/// Builds a RegionEstimate from boundary points (adds anchors and hulls).
RegionEstimate make_region(std::vector<RatePoint> points, RegionMetadata metadata);

/// Boundary sweep with the closed-form reciprocal solvers, one solve per mu.
RegionEstimate sweep_reciprocal(const ChannelRealization& ch, const SystemConfig& cfg,
                                const std::vector<double>& mu_grid);

/// Boundary sweep with the rate-profile pipeline, one solve per kappa.
RegionEstimate sweep_nonreciprocal(const ChannelRealization& ch, const SystemConfig& cfg,
                                   const std::vector<double>& kappa_grid, const BisectionConfig& bis,
                                   std::uint64_t seed, const SdpOptions& options = kPipelineSdpOptions);

/// Points not component-wise dominated by any other input point.
std::vector<RatePoint> pareto_filter(const std::vector<RatePoint>& points);

/// Planar convex hull (counter-clockwise, duplicates merged, collinear
/// points dropped). Throws ParameterError on empty input.
std::vector<RatePoint> convex_hull(std::vector<RatePoint> points);

struct PropertyReport {
    int checked = 0;
    int violations = 0;
    double worst_violation = 0.0;
    bool passed() const { return violations == 0; }
};

/// Checks that strict dominance among inverse-SNR points maps to reversed
/// strict dominance among the corresponding rate points.
PropertyReport check_dominance_preservation(const std::vector<InverseSnrPoint>& points);

/// Samples the segment [a, b] in inverse-SNR space, maps it, and checks the
/// image is a decreasing, discretely convex curve over its first coordinate.
PropertyReport check_segment_convexity(const InverseSnrPoint& a, const InverseSnrPoint& b, int samples);

} // namespace twr

#endif // TWRBEAM_REGION_HPP
