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

#include "twrbeam/region.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "twrbeam/channel.hpp"
#include "twrbeam/detail/support.hpp"
#include "twrbeam/reciprocal.hpp"

namespace twr {

RatePoint map_u(const InverseSnrPoint& p) {
    if (!(p.t1 > 0.0) || !(p.t2 > 0.0))
        throw DomainError("inverse-SNR components must be strictly positive");
    return {0.5 * std::log2(1.0 + 1.0 / p.t1), 0.5 * std::log2(1.0 + 1.0 / p.t2)};
}

std::vector<RatePoint> pareto_filter(const std::vector<RatePoint>& points) {
    std::vector<RatePoint> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            if (i == j) continue;
            const bool geq = points[j].r1 >= points[i].r1 && points[j].r2 >= points[i].r2;
            const bool strict = points[j].r1 > points[i].r1 || points[j].r2 > points[i].r2;
            dominated = geq && strict;
        }
        if (!dominated) kept.push_back(points[i]);
    }
    return kept;
}

namespace {

double cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

} // namespace

std::vector<RatePoint> convex_hull(std::vector<RatePoint> points) {
    if (points.empty()) throw ParameterError("convex hull needs at least one point");
    std::sort(points.begin(), points.end(), [](const RatePoint& a, const RatePoint& b) {
        return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const RatePoint& a, const RatePoint& b) {
                                 return std::abs(a.r1 - b.r1) <= 1e-12 && std::abs(a.r2 - b.r2) <= 1e-12;
                             }),
                 points.end());
    const std::size_t n = points.size();
    if (n <= 2) return points;

    // Andrew's monotone chain, counter-clockwise output.
    std::vector<RatePoint> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 1e-15) --k;
        hull[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 1e-15) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

double RegionEstimate::hull_area() const {
    double twice = 0.0;
    const std::size_t n = hull_vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatePoint& a = hull_vertices[i];
        const RatePoint& b = hull_vertices[(i + 1) % n];
        twice += a.r1 * b.r2 - b.r1 * a.r2;
    }
    return 0.5 * std::abs(twice);
}

bool RegionEstimate::contains(const RatePoint& p, double tol) const {
    const std::size_t n = hull_vertices.size();
    if (n == 0) return false;
    if (n == 1)
        return std::abs(p.r1 - hull_vertices[0].r1) <= tol && std::abs(p.r2 - hull_vertices[0].r2) <= tol;
    // Inside a counter-clockwise polygon: not more than tol outside any edge.
    for (std::size_t i = 0; i < n; ++i) {
        const RatePoint& a = hull_vertices[i];
        const RatePoint& b = hull_vertices[(i + 1) % n];
        const double len = std::hypot(b.r1 - a.r1, b.r2 - a.r2);
        if (len <= 1e-15) continue;
        if (cross(a, b, p) < -tol * len) return false;
    }
    return true;
}

RegionEstimate make_region(std::vector<RatePoint> points, RegionMetadata metadata) {
    RegionEstimate region;
    region.metadata = std::move(metadata);
    region.raw_points = std::move(points);

    double r1_max = 0.0, r2_max = 0.0;
    for (const auto& p : region.raw_points) {
        r1_max = std::max(r1_max, p.r1);
        r2_max = std::max(r2_max, p.r2);
    }
    std::vector<RatePoint> with_anchors = region.raw_points;
    with_anchors.push_back({0.0, 0.0});
    with_anchors.push_back({r1_max, 0.0});
    with_anchors.push_back({0.0, r2_max});
    region.hull_vertices = convex_hull(std::move(with_anchors));
    return region;
}

RegionEstimate sweep_reciprocal(const ChannelRealization& ch, const SystemConfig& cfg,
                                const std::vector<double>& mu_grid) {
    if (mu_grid.empty()) throw ParameterError("mu grid must not be empty");
    const EffectiveChannels eff = effective_channels(ch, cfg);

    std::vector<RatePoint> points(mu_grid.size());
    for (std::size_t i = 0; i < mu_grid.size(); ++i) {
        const WsisWeight mu(mu_grid[i]);
        BeamVector w;
        if (cfg.has_sum_power())
            w = wsismin_sum_power(eff, cfg, mu).beamformer(ch);
        else
            w = wsismin_individual(eff, cfg, mu).beamformer(ch, eff, cfg);
        points[i] = rate_pair(w, eff, cfg);
    }

    RegionMetadata meta;
    meta.grid = mu_grid;
    meta.sweep = "reciprocal";
    meta.constraint = cfg.has_sum_power() ? "sum" : "individual";
    return make_region(std::move(points), std::move(meta));
}

RegionEstimate sweep_nonreciprocal(const ChannelRealization& ch, const SystemConfig& cfg,
                                   const std::vector<double>& kappa_grid, const BisectionConfig& bis,
                                   std::uint64_t seed, const SdpOptions& options) {
    if (kappa_grid.empty()) throw ParameterError("kappa grid must not be empty");

    std::vector<RatePoint> points(kappa_grid.size());
    std::vector<std::exception_ptr> errors(kappa_grid.size());
    detail::parallel_for(kappa_grid.size(), [&](std::size_t i) {
        try {
            const RateProfile profile(kappa_grid[i]);
            const auto solution =
                solve_nonreciprocal(ch, cfg, profile, bis, detail::derive_seed(seed, i), options);
            points[i] = solution.rates;
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    RegionMetadata meta;
    meta.grid = kappa_grid;
    meta.sweep = "nonreciprocal";
    meta.constraint = cfg.has_sum_power() ? "sum" : "individual";
    meta.seed = seed;
    return make_region(std::move(points), std::move(meta));
}

PropertyReport check_dominance_preservation(const std::vector<InverseSnrPoint>& points) {
    PropertyReport report;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i == j) continue;
            const auto& a = points[i];
            const auto& b = points[j];
            if (!(a.t1 < b.t1 && a.t2 < b.t2)) continue; // strict dominance in both
            ++report.checked;
            const RatePoint ra = map_u(a);
            const RatePoint rb = map_u(b);
            const double slack = std::min(ra.r1 - rb.r1, ra.r2 - rb.r2);
            if (!(slack > 0.0)) {
                ++report.violations;
                report.worst_violation = std::max(report.worst_violation, -slack);
            }
        }
    }
    return report;
}

PropertyReport check_segment_convexity(const InverseSnrPoint& a, const InverseSnrPoint& b, int samples) {
    if (!(a.t1 > 0.0 && a.t2 > 0.0 && b.t1 > 0.0 && b.t2 > 0.0))
        throw DomainError("segment endpoints must be strictly positive");
    if (samples < 2) throw ParameterError("need at least two samples");

    PropertyReport report;
    std::vector<RatePoint> mapped(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double u = static_cast<double>(i) / (samples - 1);
        mapped[static_cast<std::size_t>(i)] =
            map_u({a.t1 + u * (b.t1 - a.t1), a.t2 + u * (b.t2 - a.t2)});
    }
    std::sort(mapped.begin(), mapped.end(),
              [](const RatePoint& p, const RatePoint& q) { return p.r1 < q.r1; });

    // Degenerate in the first coordinate: a vertical segment, trivially fine.
    if (mapped.back().r1 - mapped.front().r1 <= 1e-12) {
        report.checked = samples;
        return report;
    }

    constexpr double tol = 1e-9;
    double prev_slope = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < mapped.size(); ++i) {
        const double dx = mapped[i + 1].r1 - mapped[i].r1;
        if (dx <= 1e-15) continue;
        const double slope = (mapped[i + 1].r2 - mapped[i].r2) / dx;
        ++report.checked;
        if (slope > tol) { // image must be non-increasing
            ++report.violations;
            report.worst_violation = std::max(report.worst_violation, slope);
        }
        if (slope < prev_slope - tol) { // slopes must be non-decreasing (convexity)
            ++report.violations;
            report.worst_violation = std::max(report.worst_violation, prev_slope - slope);
        }
        prev_slope = slope;
    }
    return report;
}

} // namespace twr
