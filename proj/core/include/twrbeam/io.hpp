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

#ifndef TWRBEAM_IO_HPP
#define TWRBEAM_IO_HPP

#include <string>

#include "twrbeam/experiment.hpp"
#include "twrbeam/types.hpp"

namespace twr {

/// A channel instance file: the four channel vectors (JSON arrays of
/// [re, im] pairs) plus the system configuration.
struct ChannelInstance {
    ChannelRealization channels;
    SystemConfig system;
};

ChannelInstance load_channel_instance(const std::string& path);
void save_channel_instance(const ChannelInstance& instance, const std::string& path);

BeamVector load_beam_vector(const std::string& path);
void save_beam_vector(const BeamVector& w, const std::string& path);

ExperimentConfig load_experiment_config(const std::string& path);
std::string experiment_config_to_json(const ExperimentConfig& cfg);

/// CSV columns: mu_or_kappa, r1, r2, scheme, realization_count, seed.
std::string dataset_to_csv(const Dataset& dataset);
/// JSON envelope: config echo plus the dataset rows and averaged hull.
std::string dataset_to_json(const Dataset& dataset);
/// Writes <stem>.csv / <stem>.json according to cfg.format.
void write_dataset(const Dataset& dataset, const std::string& stem);

} // namespace twr

#endif // TWRBEAM_IO_HPP
