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

#ifndef TWRBEAM_EXPERIMENT_HPP
#define TWRBEAM_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "twrbeam/region.hpp"
#include "twrbeam/types.hpp"

namespace twr {

/// Channel variance profile: Symmetric draws every coefficient CN(0, 1);
/// Asymmetric keeps the S1 side at CN(0, 1) and gives the S2-side channel
/// of relay i variance i.
enum class VarianceProfile { Symmetric, Asymmetric };

/// Everything a Monte Carlo region experiment needs; mirrors the JSON
/// config file field for field.
struct ExperimentConfig {
    int k_relays = 5;
    std::uint64_t seed = 1;
    int n_realizations = 100;
    bool reciprocal = true;
    VarianceProfile profile = VarianceProfile::Symmetric;

    double p_s1_db = 0.0;
    double p_s2_db = 0.0;
    bool sum_constraint = true;
    double p_r_db = 10.0;                  ///< sum-power case
    std::vector<double> individual_powers; ///< watts, individual case

    std::vector<double> mu_grid;    ///< default 0:0.1:1
    std::vector<double> kappa_grid; ///< default 0:0.05:1
    double bisection_epsilon = 1e-3;
    double sdp_tolerance = 1e-6; ///< pipeline solves lose strict complementarity
    int randomization_candidates = 1000;
    bool per_realization_hulls = false;

    std::string output_path; ///< stem; ".csv"/".json" appended
    std::string format = "both"; ///< "csv", "json" or "both"

    void validate() const;
    SystemConfig system_config(int k) const;
};

/// Linear watts from dB relative to unit noise power.
double db_to_watts(double db);
double watts_to_db(double watts);

/// Draws a channel realization with i.i.d. CSCG coefficients.
ChannelRealization gen_channels(int k, std::uint64_t seed, VarianceProfile profile, bool reciprocal);

struct DatasetRow {
    double mu_or_kappa = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    std::string scheme; ///< "boundary", "hull", "equal-power", "max-power"
    int realization_count = 0;
    std::uint64_t seed = 0;
};

struct Dataset {
    ExperimentConfig config;
    std::vector<DatasetRow> rows;
    std::vector<RatePoint> averaged_hull;
    std::vector<RegionEstimate> per_realization; ///< filled only on request
    std::vector<std::string> failures;           ///< per-realization error notes
};

/// Runs the configured number of channel realizations, averages each grid
/// point's rate pair across them, hulls the averaged boundary, and records
/// the heuristic operating points. Realizations run in a work pool; the
/// output is deterministic for a fixed config.
Dataset run_experiment(const ExperimentConfig& cfg);

} // namespace twr

#endif // TWRBEAM_EXPERIMENT_HPP
