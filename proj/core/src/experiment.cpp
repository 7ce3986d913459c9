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

#include "twrbeam/experiment.hpp"

#include <cmath>
#include <mutex>

#include "twrbeam/channel.hpp"
#include "twrbeam/detail/support.hpp"
#include "twrbeam/heuristics.hpp"

namespace twr {

double db_to_watts(double db) { return std::pow(10.0, db / 10.0); }
double watts_to_db(double watts) { return 10.0 * std::log10(watts); }

void ExperimentConfig::validate() const {
    if (k_relays < 1) throw ParameterError("need at least one relay");
    if (n_realizations < 1) throw ParameterError("need at least one realization");
    if (!sum_constraint) {
        if (individual_powers.size() != static_cast<std::size_t>(k_relays))
            throw DimensionError("individual power list must have one entry per relay");
        for (double p : individual_powers)
            if (p <= 0.0) throw ParameterError("relay power budgets must be positive");
    }
    if (bisection_epsilon <= 0.0) throw ParameterError("bisection epsilon must be positive");
    if (format != "csv" && format != "json" && format != "both")
        throw ParameterError("format must be csv, json or both");
}

SystemConfig ExperimentConfig::system_config(int k) const {
    SystemConfig sys;
    sys.p_s1 = db_to_watts(p_s1_db);
    sys.p_s2 = db_to_watts(p_s2_db);
    sys.sigma_relay = Eigen::VectorXd::Ones(k); // dB figures are relative to unit noise
    sys.sigma_s1 = 1.0;
    sys.sigma_s2 = 1.0;
    if (sum_constraint) {
        sys.relay_constraint = SumPowerConstraint{db_to_watts(p_r_db)};
    } else {
        Eigen::VectorXd p(k);
        for (int i = 0; i < k; ++i) p(i) = individual_powers[static_cast<std::size_t>(i)];
        sys.relay_constraint = IndividualPowerConstraint{std::move(p)};
    }
    return sys;
}

ChannelRealization gen_channels(int k, std::uint64_t seed, VarianceProfile profile, bool reciprocal) {
    if (k < 1) throw ParameterError("need at least one relay");
    std::mt19937_64 rng(seed);

    Eigen::VectorXd var1 = Eigen::VectorXd::Ones(k);
    Eigen::VectorXd var2(k);
    for (int i = 0; i < k; ++i)
        var2(i) = profile == VarianceProfile::Symmetric ? 1.0 : static_cast<double>(i + 1);

    ChannelRealization ch;
    ch.h1 = detail::complex_gaussian(k, var1, rng);
    ch.h2 = detail::complex_gaussian(k, var2, rng);
    if (reciprocal) {
        ch.h1r = ch.h1;
        ch.h2r = ch.h2;
        ch.reciprocal = true;
    } else {
        ch.h1r = detail::complex_gaussian(k, var1, rng);
        ch.h2r = detail::complex_gaussian(k, var2, rng);
        ch.reciprocal = false;
    }
    return ch;
}

namespace {

std::vector<double> default_grid(double step) {
    std::vector<double> grid;
    const int n = static_cast<int>(std::round(1.0 / step));
    grid.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) grid.push_back(static_cast<double>(i) * step);
    return grid;
}

} // namespace

Dataset run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const int k = cfg.k_relays;
    const SystemConfig sys = cfg.system_config(k);
    const std::vector<double> grid = cfg.reciprocal
        ? (cfg.mu_grid.empty() ? default_grid(0.1) : cfg.mu_grid)
        : (cfg.kappa_grid.empty() ? default_grid(0.05) : cfg.kappa_grid);

    BisectionConfig bis;
    bis.epsilon = cfg.bisection_epsilon;
    bis.randomization_candidates = cfg.randomization_candidates;
    SdpOptions sdp_options;
    sdp_options.tolerance = cfg.sdp_tolerance;

    struct RealizationOutput {
        bool ok = false;
        std::string error;
        std::vector<RatePoint> boundary;
        RatePoint heuristic;
        RegionEstimate region;
    };
    const std::size_t n_real = static_cast<std::size_t>(cfg.n_realizations);
    std::vector<RealizationOutput> results(n_real);

    detail::parallel_for(n_real, [&](std::size_t i) {
        RealizationOutput& slot = results[i];
        try {
            const std::uint64_t channel_seed = detail::derive_seed(cfg.seed, i);
            const ChannelRealization ch = gen_channels(k, channel_seed, cfg.profile, cfg.reciprocal);
            RegionEstimate region = cfg.reciprocal
                ? sweep_reciprocal(ch, sys, grid)
                : sweep_nonreciprocal(ch, sys, grid, bis, detail::derive_seed(cfg.seed ^ 0x5eedULL, i),
                                      sdp_options);
            slot.boundary = region.raw_points;
            const EffectiveChannels eff = effective_channels(ch, sys);
            const BeamVector heuristic_w = sys.has_sum_power() ? equal_power(ch, sys) : max_power(ch, sys);
            slot.heuristic = rate_pair(heuristic_w, eff, sys);
            if (cfg.per_realization_hulls) slot.region = std::move(region);
            slot.ok = true;
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    });

    Dataset dataset;
    dataset.config = cfg;

    int successes = 0;
    std::vector<RatePoint> averaged(grid.size());
    RatePoint heuristic_avg;
    for (std::size_t i = 0; i < n_real; ++i) {
        const auto& slot = results[i];
        if (!slot.ok) {
            dataset.failures.push_back("realization " + std::to_string(i) + ": " + slot.error);
            continue;
        }
        ++successes;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            averaged[g].r1 += slot.boundary[g].r1;
            averaged[g].r2 += slot.boundary[g].r2;
        }
        heuristic_avg.r1 += slot.heuristic.r1;
        heuristic_avg.r2 += slot.heuristic.r2;
        if (cfg.per_realization_hulls) dataset.per_realization.push_back(results[i].region);
    }
    if (successes == 0) throw NumericalFailure("every realization failed");
    for (auto& p : averaged) {
        p.r1 /= successes;
        p.r2 /= successes;
    }
    heuristic_avg.r1 /= successes;
    heuristic_avg.r2 /= successes;

    RegionMetadata meta;
    meta.grid = grid;
    meta.sweep = cfg.reciprocal ? "reciprocal" : "nonreciprocal";
    meta.constraint = cfg.sum_constraint ? "sum" : "individual";
    meta.seed = cfg.seed;
    const RegionEstimate averaged_region = make_region(averaged, std::move(meta));
    dataset.averaged_hull = averaged_region.hull_vertices;

    for (std::size_t g = 0; g < grid.size(); ++g)
        dataset.rows.push_back({grid[g], averaged[g].r1, averaged[g].r2, "boundary", successes, cfg.seed});
    dataset.rows.push_back({-1.0, heuristic_avg.r1, heuristic_avg.r2,
                            cfg.sum_constraint ? "equal-power" : "max-power", successes, cfg.seed});
    for (const auto& v : dataset.averaged_hull)
        dataset.rows.push_back({-1.0, v.r1, v.r2, "hull", successes, cfg.seed});
    return dataset;
}

} // namespace twr
