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

#include "twrbeam/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace twr {

namespace {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw ParameterError("cannot open " + path);
    Json j;
    stream >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream stream(path, std::ios::trunc);
    if (!stream) throw ParameterError("cannot write " + path);
    stream << text;
}

Eigen::VectorXcd complex_vector_from_json(const Json& j, const std::string& what) {
    if (!j.is_array()) throw ParameterError(what + " must be an array of [re, im] pairs");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2)
            throw ParameterError(what + " entries must be [re, im] pairs");
        v(i++) = Complex{entry[0].get<double>(), entry[1].get<double>()};
    }
    return v;
}

Json complex_vector_to_json(const Eigen::VectorXcd& v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back({v(i).real(), v(i).imag()});
    return j;
}

Eigen::VectorXd real_vector_from_json(const Json& j, const std::string& what) {
    if (!j.is_array()) throw ParameterError(what + " must be an array of numbers");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const auto& entry : j) v(i++) = entry.get<double>();
    return v;
}

Json real_vector_to_json(const Eigen::VectorXd& v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ChannelInstance load_channel_instance(const std::string& path) {
    const Json j = read_json_file(path);
    ChannelInstance instance;
    instance.channels.reciprocal = j.value("reciprocal", false);
    instance.channels.h1 = complex_vector_from_json(j.at("h1"), "h1");
    instance.channels.h2 = complex_vector_from_json(j.at("h2"), "h2");
    if (instance.channels.reciprocal && !j.contains("h1r")) {
        instance.channels.h1r = instance.channels.h1;
        instance.channels.h2r = instance.channels.h2;
    } else {
        instance.channels.h1r = complex_vector_from_json(j.at("h1r"), "h1r");
        instance.channels.h2r = complex_vector_from_json(j.at("h2r"), "h2r");
    }
    instance.channels.validate();

    const Json& sys = j.at("system");
    instance.system.p_s1 = sys.at("p_s1").get<double>();
    instance.system.p_s2 = sys.at("p_s2").get<double>();
    instance.system.sigma_s1 = sys.at("sigma_s1").get<double>();
    instance.system.sigma_s2 = sys.at("sigma_s2").get<double>();
    instance.system.sigma_relay = real_vector_from_json(sys.at("sigma_relay"), "sigma_relay");
    const Json& rc = sys.at("relay_constraint");
    const std::string type = rc.at("type").get<std::string>();
    if (type == "sum") {
        instance.system.relay_constraint = SumPowerConstraint{rc.at("p_r").get<double>()};
    } else if (type == "individual") {
        instance.system.relay_constraint = IndividualPowerConstraint{real_vector_from_json(rc.at("p"), "p")};
    } else {
        throw ParameterError("relay_constraint type must be 'sum' or 'individual'");
    }
    instance.system.validate(instance.channels.size());
    return instance;
}

void save_channel_instance(const ChannelInstance& instance, const std::string& path) {
    Json j;
    j["reciprocal"] = instance.channels.reciprocal;
    j["h1"] = complex_vector_to_json(instance.channels.h1);
    j["h2"] = complex_vector_to_json(instance.channels.h2);
    j["h1r"] = complex_vector_to_json(instance.channels.h1r);
    j["h2r"] = complex_vector_to_json(instance.channels.h2r);
    Json sys;
    sys["p_s1"] = instance.system.p_s1;
    sys["p_s2"] = instance.system.p_s2;
    sys["sigma_s1"] = instance.system.sigma_s1;
    sys["sigma_s2"] = instance.system.sigma_s2;
    sys["sigma_relay"] = real_vector_to_json(instance.system.sigma_relay);
    Json rc;
    if (instance.system.has_sum_power()) {
        rc["type"] = "sum";
        rc["p_r"] = instance.system.sum_power();
    } else {
        rc["type"] = "individual";
        rc["p"] = real_vector_to_json(instance.system.individual_powers());
    }
    sys["relay_constraint"] = rc;
    j["system"] = sys;
    write_text_file(path, j.dump(2) + "\n");
}

BeamVector load_beam_vector(const std::string& path) {
    const Json j = read_json_file(path);
    if (j.is_array()) return complex_vector_from_json(j, "w");
    return complex_vector_from_json(j.at("w"), "w");
}

void save_beam_vector(const BeamVector& w, const std::string& path) {
    Json j;
    j["w"] = complex_vector_to_json(w);
    write_text_file(path, j.dump(2) + "\n");
}

ExperimentConfig load_experiment_config(const std::string& path) {
    const Json j = read_json_file(path);
    ExperimentConfig cfg;
    cfg.k_relays = j.value("k_relays", cfg.k_relays);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.n_realizations = j.value("n_realizations", cfg.n_realizations);
    cfg.reciprocal = j.value("reciprocal", cfg.reciprocal);
    const std::string profile = j.value("profile", std::string("symmetric"));
    if (profile == "symmetric")
        cfg.profile = VarianceProfile::Symmetric;
    else if (profile == "asymmetric")
        cfg.profile = VarianceProfile::Asymmetric;
    else
        throw ParameterError("profile must be 'symmetric' or 'asymmetric'");
    cfg.p_s1_db = j.value("p_s1_db", cfg.p_s1_db);
    cfg.p_s2_db = j.value("p_s2_db", cfg.p_s2_db);
    if (j.contains("relay_constraint")) {
        const Json& rc = j.at("relay_constraint");
        const std::string type = rc.at("type").get<std::string>();
        if (type == "sum") {
            cfg.sum_constraint = true;
            cfg.p_r_db = rc.at("p_r_db").get<double>();
        } else if (type == "individual") {
            cfg.sum_constraint = false;
            cfg.individual_powers = rc.at("p").get<std::vector<double>>();
        } else {
            throw ParameterError("relay_constraint type must be 'sum' or 'individual'");
        }
    }
    cfg.mu_grid = j.value("mu_grid", cfg.mu_grid);
    cfg.kappa_grid = j.value("kappa_grid", cfg.kappa_grid);
    cfg.bisection_epsilon = j.value("bisection_epsilon", cfg.bisection_epsilon);
    cfg.sdp_tolerance = j.value("sdp_tolerance", cfg.sdp_tolerance);
    cfg.randomization_candidates = j.value("randomization_candidates", cfg.randomization_candidates);
    cfg.per_realization_hulls = j.value("per_realization_hulls", cfg.per_realization_hulls);
    cfg.output_path = j.value("output_path", cfg.output_path);
    cfg.format = j.value("format", cfg.format);
    cfg.validate();
    return cfg;
}

namespace {

Json config_to_json_object(const ExperimentConfig& cfg) {
    Json j;
    j["k_relays"] = cfg.k_relays;
    j["seed"] = cfg.seed;
    j["n_realizations"] = cfg.n_realizations;
    j["reciprocal"] = cfg.reciprocal;
    j["profile"] = cfg.profile == VarianceProfile::Symmetric ? "symmetric" : "asymmetric";
    j["p_s1_db"] = cfg.p_s1_db;
    j["p_s2_db"] = cfg.p_s2_db;
    Json rc;
    if (cfg.sum_constraint) {
        rc["type"] = "sum";
        rc["p_r_db"] = cfg.p_r_db;
    } else {
        rc["type"] = "individual";
        rc["p"] = cfg.individual_powers;
    }
    j["relay_constraint"] = rc;
    j["mu_grid"] = cfg.mu_grid;
    j["kappa_grid"] = cfg.kappa_grid;
    j["bisection_epsilon"] = cfg.bisection_epsilon;
    j["sdp_tolerance"] = cfg.sdp_tolerance;
    j["randomization_candidates"] = cfg.randomization_candidates;
    j["per_realization_hulls"] = cfg.per_realization_hulls;
    j["output_path"] = cfg.output_path;
    j["format"] = cfg.format;
    return j;
}

} // namespace

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
    return config_to_json_object(cfg).dump(2) + "\n";
}

std::string dataset_to_csv(const Dataset& dataset) {
    std::ostringstream out;
    out << "mu_or_kappa,r1,r2,scheme,realization_count,seed\n";
    for (const auto& row : dataset.rows)
        out << format_double(row.mu_or_kappa) << ',' << format_double(row.r1) << ','
            << format_double(row.r2) << ',' << row.scheme << ',' << row.realization_count << ','
            << row.seed << '\n';
    return out.str();
}

std::string dataset_to_json(const Dataset& dataset) {
    Json j;
    j["config"] = config_to_json_object(dataset.config);
    Json rows = Json::array();
    for (const auto& row : dataset.rows) {
        Json r;
        r["mu_or_kappa"] = row.mu_or_kappa;
        r["r1"] = row.r1;
        r["r2"] = row.r2;
        r["scheme"] = row.scheme;
        r["realization_count"] = row.realization_count;
        r["seed"] = row.seed;
        rows.push_back(std::move(r));
    }
    j["rows"] = rows;
    Json hull = Json::array();
    for (const auto& v : dataset.averaged_hull) hull.push_back({v.r1, v.r2});
    j["averaged_hull"] = hull;
    j["failures"] = dataset.failures;
    return j.dump(2) + "\n";
}

void write_dataset(const Dataset& dataset, const std::string& stem) {
    const std::string& format = dataset.config.format;
    if (format == "csv" || format == "both") write_text_file(stem + ".csv", dataset_to_csv(dataset));
    if (format == "json" || format == "both") write_text_file(stem + ".json", dataset_to_json(dataset));
}

} // namespace twr
