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

#include <benchmark/benchmark.h>

#include "twrbeam/channel.hpp"
#include "twrbeam/experiment.hpp"
#include "twrbeam/nonreciprocal.hpp"
#include "twrbeam/reciprocal.hpp"
#include "twrbeam/region.hpp"

namespace {

twr::SystemConfig sum_config(int k, double p_r_db) {
    twr::SystemConfig cfg;
    cfg.sigma_relay = Eigen::VectorXd::Ones(k);
    cfg.relay_constraint = twr::SumPowerConstraint{twr::db_to_watts(p_r_db)};
    return cfg;
}

void bm_wsismin_sum_power(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto ch = twr::gen_channels(k, 1, twr::VarianceProfile::Symmetric, true);
    const auto cfg = sum_config(k, 10.0);
    const auto eff = twr::effective_channels(ch, cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(twr::wsismin_sum_power(eff, cfg, twr::WsisWeight(0.4)));
}
BENCHMARK(bm_wsismin_sum_power)->Arg(5)->Arg(16)->Arg(64);

void bm_wsismin_individual(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto ch = twr::gen_channels(k, 2, twr::VarianceProfile::Symmetric, true);
    auto cfg = sum_config(k, 10.0);
    cfg.relay_constraint = twr::IndividualPowerConstraint{Eigen::VectorXd::Constant(k, 10.0 / k)};
    const auto eff = twr::effective_channels(ch, cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(twr::wsismin_individual(eff, cfg, twr::WsisWeight(0.4)));
}
BENCHMARK(bm_wsismin_individual)->Arg(5)->Arg(16)->Arg(64);

void bm_min_sum_power_sdp(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto ch = twr::gen_channels(k, 3, twr::VarianceProfile::Symmetric, false);
    const auto cfg = sum_config(k, 10.0);
    const auto eff = twr::effective_channels(ch, cfg);
    const auto targets = twr::snr_targets(twr::RateProfile(0.5), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(twr::min_sum_power(eff, cfg, targets));
}
BENCHMARK(bm_min_sum_power_sdp)->Arg(3)->Arg(5)->Arg(10);

void bm_bisect_sum_power(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto ch = twr::gen_channels(k, 4, twr::VarianceProfile::Symmetric, false);
    const auto cfg = sum_config(k, 10.0);
    const auto eff = twr::effective_channels(ch, cfg);
    twr::BisectionConfig bis;
    for (auto _ : state)
        benchmark::DoNotOptimize(twr::bisect_sum_power(eff, cfg, twr::RateProfile(0.5), bis));
}
BENCHMARK(bm_bisect_sum_power)->Arg(3)->Arg(5);

void bm_simulate_link(benchmark::State& state) {
    const int k = 5;
    const auto ch = twr::gen_channels(k, 5, twr::VarianceProfile::Symmetric, true);
    const auto cfg = sum_config(k, 10.0);
    const auto eff = twr::effective_channels(ch, cfg);
    const auto w = twr::wsismin_sum_power(eff, cfg, twr::WsisWeight(0.5)).beamformer(ch);
    for (auto _ : state) benchmark::DoNotOptimize(twr::simulate_link(w, ch, cfg, state.range(0), 9));
}
BENCHMARK(bm_simulate_link)->Arg(10000)->Arg(100000);

void bm_sweep_reciprocal(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto ch = twr::gen_channels(k, 6, twr::VarianceProfile::Symmetric, true);
    const auto cfg = sum_config(k, 10.0);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(twr::sweep_reciprocal(ch, cfg, grid));
}
BENCHMARK(bm_sweep_reciprocal)->Arg(5)->Arg(32);

} // namespace

BENCHMARK_MAIN();
