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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "twrbeam/channel.hpp"
#include "twrbeam/experiment.hpp"
#include "twrbeam/heuristics.hpp"
#include "twrbeam/io.hpp"
#include "twrbeam/nonreciprocal.hpp"
#include "twrbeam/oracle.hpp"
#include "twrbeam/reciprocal.hpp"
#include "twrbeam/region.hpp"

namespace {

using Json = nlohmann::ordered_json;

Json beam_to_json(const twr::BeamVector& w) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < w.size(); ++i) arr.push_back({w(i).real(), w(i).imag()});
    return arr;
}

void emit(const Json& j, const std::string& output) {
    if (output.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream stream(output, std::ios::trunc);
        if (!stream) throw twr::ParameterError("cannot write " + output);
        stream << j.dump(2) << "\n";
    }
}

struct SolveArgs {
    std::string channels;
    std::string mode;
    double mu = 0.5;
    double kappa = 0.5;
    bool mu_set = false;
    bool kappa_set = false;
    double epsilon = 1e-3;
    double tolerance = 1e-6;
    int candidates = 1000;
    std::optional<std::uint64_t> seed;
    std::string output;
};

int run_solve(const SolveArgs& args) {
    const twr::ChannelInstance instance = twr::load_channel_instance(args.channels);
    const twr::EffectiveChannels eff = twr::effective_channels(instance.channels, instance.system);

    const bool wants_sum = args.mode == "reciprocal-sum" || args.mode == "nonrecip-sum";
    if (wants_sum != instance.system.has_sum_power())
        throw twr::ParameterError("mode '" + args.mode + "' does not match the instance's relay constraint");

    Json out;
    out["mode"] = args.mode;
    twr::BeamVector w;

    if (args.mode == "reciprocal-sum" || args.mode == "reciprocal-ind") {
        if (!args.mu_set) throw twr::ParameterError("reciprocal modes need --mu");
        const twr::WsisWeight mu(args.mu);
        out["mu"] = args.mu;
        if (args.mode == "reciprocal-sum") {
            const auto solution = twr::wsismin_sum_power(eff, instance.system, mu);
            w = solution.beamformer(instance.channels);
            out["broadcast"] = solution.broadcast;
            out["objective"] = twr::wsis_objective(solution.x, eff, instance.system, mu);
        } else {
            const auto solution = twr::wsismin_individual(eff, instance.system, mu);
            w = solution.beamformer(instance.channels, eff, instance.system);
            out["lambda_star"] = solution.lambda_star;
            out["k_star"] = solution.k_star;
        }
    } else if (args.mode == "nonrecip-sum" || args.mode == "nonrecip-ind") {
        if (!args.kappa_set) throw twr::ParameterError("non-reciprocal modes need --kappa");
        if (args.mode == "nonrecip-ind" && !args.seed)
            throw twr::ParameterError("nonrecip-ind randomizes and needs --seed");
        twr::BisectionConfig bis;
        bis.epsilon = args.epsilon;
        bis.randomization_candidates = args.candidates;
        twr::SdpOptions options;
        options.tolerance = args.tolerance;
        const auto solution = twr::solve_nonreciprocal(instance.channels, instance.system,
                                                       twr::RateProfile(args.kappa), bis,
                                                       args.seed.value_or(0), options);
        w = solution.w;
        out["kappa"] = args.kappa;
        out["r_star"] = solution.r_star;
        out["bisection_steps"] = solution.bisection.trace.size();
    } else {
        throw twr::ParameterError("unknown mode " + args.mode);
    }

    const twr::SnrPair snr = twr::snr_pair(w, eff, instance.system);
    const twr::RatePoint rates = twr::rate_from_snr(snr);
    const twr::RelayPowers powers = twr::relay_powers(w, instance.channels, instance.system);
    out["w"] = beam_to_json(w);
    out["snr"] = {{"snr1", snr.snr1}, {"snr2", snr.snr2}};
    out["rates"] = {{"r1", rates.r1}, {"r2", rates.r2}};
    Json per_relay = Json::array();
    for (Eigen::Index i = 0; i < powers.per_relay.size(); ++i) per_relay.push_back(powers.per_relay(i));
    out["relay_powers"] = {{"per_relay", per_relay}, {"total", powers.total}};
    emit(out, args.output);
    return 0;
}

struct OracleArgs {
    std::string channels;
    double mu = 0.5;
    bool mu_set = false;
    int resolution = 200;
    double kappa = 0.5;
    bool kappa_set = false;
    int samples = 100000;
    double epsilon = 1e-3;
    std::optional<std::uint64_t> seed;
    std::string output;
};

int run_oracle(const OracleArgs& args) {
    const twr::ChannelInstance instance = twr::load_channel_instance(args.channels);
    const twr::EffectiveChannels eff = twr::effective_channels(instance.channels, instance.system);
    Json out;

    if (args.mu_set) {
        if (!instance.channels.reciprocal)
            throw twr::ParameterError("grid oracle comparison needs a reciprocal instance");
        const twr::WsisWeight mu(args.mu);
        const auto grid = twr::grid_wsismin(eff, instance.system, mu, args.resolution);
        double solver_obj;
        if (instance.system.has_sum_power()) {
            const auto solution = twr::wsismin_sum_power(eff, instance.system, mu);
            solver_obj = twr::wsis_objective(solution.x, eff, instance.system, mu);
        } else {
            const auto solution = twr::wsismin_individual(eff, instance.system, mu);
            solver_obj = twr::wsis_objective(solution.amplitudes(eff, instance.system), eff,
                                             instance.system, mu);
        }
        out["grid"] = {{"mu", args.mu},
                       {"resolution", args.resolution},
                       {"oracle_objective", grid.best_objective},
                       {"solver_objective", solver_obj},
                       {"solver_minus_oracle", solver_obj - grid.best_objective}};
    }

    if (args.kappa_set) {
        if (!args.seed) throw twr::ParameterError("random search needs --seed");
        const twr::RateProfile profile(args.kappa);
        const auto search =
            twr::random_search_rate(eff, instance.system, profile, args.samples, *args.seed);
        twr::BisectionConfig bis;
        bis.epsilon = args.epsilon;
        const auto bisect = instance.system.has_sum_power()
            ? twr::bisect_sum_power(eff, instance.system, profile, bis)
            : twr::bisect_individual(eff, instance.system, profile, bis);
        out["random_search"] = {{"kappa", args.kappa},
                                {"samples", args.samples},
                                {"lower_bound", search.best_r},
                                {"sdr_r_star", bisect.r_star},
                                {"gap", bisect.r_star - search.best_r}};
    }

    if (out.empty()) throw twr::ParameterError("oracle needs --mu and/or --kappa");
    emit(out, args.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed beamforming and achievable rate regions for two-way relay networks"};
    app.require_subcommand(1);

    // region
    std::string region_config;
    std::string region_output_override;
    auto* region_cmd = app.add_subcommand("region", "Monte Carlo rate-region dataset from a config file");
    region_cmd->add_option("--config", region_config, "JSON experiment config")->required();
    region_cmd->add_option("--output", region_output_override, "override the config's output stem");

    // solve
    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "One beamformer for one channel instance");
    solve_cmd->add_option("--channels", solve_args.channels, "channel instance JSON")->required();
    solve_cmd->add_option("--mode", solve_args.mode, "reciprocal-sum|reciprocal-ind|nonrecip-sum|nonrecip-ind")
        ->required()
        ->check(CLI::IsMember({"reciprocal-sum", "reciprocal-ind", "nonrecip-sum", "nonrecip-ind"}));
    solve_cmd->add_option("--mu", solve_args.mu, "weight for reciprocal modes")
        ->check(CLI::Range(0.0, 1.0))
        ->each([&](const std::string&) { solve_args.mu_set = true; });
    solve_cmd->add_option("--kappa", solve_args.kappa, "rate profile for non-reciprocal modes")
        ->check(CLI::Range(0.0, 1.0))
        ->each([&](const std::string&) { solve_args.kappa_set = true; });
    solve_cmd->add_option("--epsilon", solve_args.epsilon, "bisection tolerance in bits");
    solve_cmd->add_option("--tol", solve_args.tolerance, "sdp tolerance");
    solve_cmd->add_option("--candidates", solve_args.candidates, "randomization candidates");
    std::uint64_t solve_seed = 0;
    solve_cmd->add_option("--seed", solve_seed, "rng seed (required for nonrecip-ind)")
        ->each([&](const std::string&) { solve_args.seed = solve_seed; });
    solve_cmd->add_option("--output", solve_args.output, "write JSON here instead of stdout");

    // oracle
    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force comparison report");
    oracle_cmd->add_option("--channels", oracle_args.channels, "channel instance JSON")->required();
    oracle_cmd->add_option("--mu", oracle_args.mu, "grid-oracle weight")
        ->check(CLI::Range(0.0, 1.0))
        ->each([&](const std::string&) { oracle_args.mu_set = true; });
    oracle_cmd->add_option("--resolution", oracle_args.resolution, "grid resolution (>= 100)");
    oracle_cmd->add_option("--kappa", oracle_args.kappa, "random-search rate profile")
        ->check(CLI::Range(0.0, 1.0))
        ->each([&](const std::string&) { oracle_args.kappa_set = true; });
    oracle_cmd->add_option("--samples", oracle_args.samples, "random-search samples");
    oracle_cmd->add_option("--epsilon", oracle_args.epsilon, "bisection tolerance");
    std::uint64_t oracle_seed = 0;
    oracle_cmd->add_option("--seed", oracle_seed, "rng seed (required with --kappa)")
        ->each([&](const std::string&) { oracle_args.seed = oracle_seed; });
    oracle_cmd->add_option("--output", oracle_args.output, "write JSON here instead of stdout");

    // simulate
    std::string sim_channels, sim_w, sim_output;
    std::int64_t sim_symbols = 1000000;
    std::uint64_t sim_seed = 0;
    bool sim_seed_set = false;
    auto* sim_cmd = app.add_subcommand("simulate", "Symbol-level empirical vs analytic SNR report");
    sim_cmd->add_option("--channels", sim_channels, "channel instance JSON")->required();
    sim_cmd->add_option("--w", sim_w, "beam vector JSON")->required();
    sim_cmd->add_option("--symbols", sim_symbols, "number of symbols (>= 1e4)");
    sim_cmd->add_option("--seed", sim_seed, "rng seed")
        ->required()
        ->each([&](const std::string&) { sim_seed_set = true; });
    sim_cmd->add_option("--output", sim_output, "write JSON here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (region_cmd->parsed()) {
            twr::ExperimentConfig cfg = twr::load_experiment_config(region_config);
            if (!region_output_override.empty()) cfg.output_path = region_output_override;
            if (cfg.output_path.empty())
                throw twr::ParameterError("config needs output_path (or pass --output)");
            const twr::Dataset dataset = twr::run_experiment(cfg);
            twr::write_dataset(dataset, cfg.output_path);
            std::cout << "wrote " << cfg.output_path << "{.csv,.json} ("
                      << dataset.rows.size() << " rows";
            if (!dataset.failures.empty())
                std::cout << ", " << dataset.failures.size() << " failed realizations";
            std::cout << ")\n";
            return 0;
        }
        if (solve_cmd->parsed()) return run_solve(solve_args);
        if (oracle_cmd->parsed()) return run_oracle(oracle_args);
        if (sim_cmd->parsed()) {
            if (!sim_seed_set) throw twr::ParameterError("simulate needs --seed");
            const twr::ChannelInstance instance = twr::load_channel_instance(sim_channels);
            const twr::BeamVector w = twr::load_beam_vector(sim_w);
            const twr::EffectiveChannels eff = twr::effective_channels(instance.channels, instance.system);
            const twr::SnrPair analytic = twr::snr_pair(w, eff, instance.system);
            const twr::EmpiricalSnr empirical =
                twr::simulate_link(w, instance.channels, instance.system, sim_symbols, sim_seed);
            Json out;
            out["symbols"] = sim_symbols;
            out["seed"] = sim_seed;
            out["analytic"] = {{"snr1", analytic.snr1}, {"snr2", analytic.snr2}};
            out["empirical"] = {{"snr1", empirical.snr1}, {"snr2", empirical.snr2}};
            out["relative_error"] = {
                {"snr1", analytic.snr1 > 0 ? std::abs(empirical.snr1 - analytic.snr1) / analytic.snr1 : empirical.snr1},
                {"snr2", analytic.snr2 > 0 ? std::abs(empirical.snr2 - analytic.snr2) / analytic.snr2 : empirical.snr2}};
            emit(out, sim_output);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
