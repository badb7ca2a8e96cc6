// Copyright 2026 The fluxctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "fluxctl/scenario_io.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

#include "fluxctl/errors.hpp"
#include "fluxctl/io.hpp"

namespace fluxctl::cli {

namespace {

using Setter = std::function<void(ScenarioFile &, double)>;

const std::vector<std::pair<std::string, Setter>> &setters() {
    static const std::vector<std::pair<std::string, Setter>> s = {
        {"e_j", [](ScenarioFile &f, double v) { f.scenario.qubit.e_j = v; }},
        {"e_c", [](ScenarioFile &f, double v) { f.scenario.qubit.e_c = v; }},
        {"e_l", [](ScenarioFile &f, double v) { f.scenario.qubit.e_l = v; }},
        {"phi_ext", [](ScenarioFile &f, double v) { f.scenario.qubit.phi_ext = v; }},
        {"basis_size", [](ScenarioFile &f, double v) { f.scenario.qubit.basis_size = int(v); }},
        {"mutual_inductance_h", [](ScenarioFile &f, double v) { f.scenario.line.mutual_inductance_h = v; }},
        {"impedance_ohm", [](ScenarioFile &f, double v) { f.scenario.line.impedance_ohm = v; }},
        {"attenuation_db", [](ScenarioFile &f, double v) { f.scenario.line.attenuation_db = v; }},
        {"awg_noise_dbm_per_hz", [](ScenarioFile &f, double v) { f.scenario.line.awg_noise_dbm_per_hz = v; }},
        {"awg_vmax", [](ScenarioFile &f, double v) { f.scenario.line.awg_vmax = v; }},
        {"channel_cutoff_ghz",
         [](ScenarioFile &f, double v) { f.scenario.channel = filters::gaussian_lowpass(v); }},
        {"levels", [](ScenarioFile &f, double v) { f.scenario.levels = int(v); }},
        {"spectrum_levels", [](ScenarioFile &f, double v) { f.scenario.spectrum_levels = int(v); }},
        {"time_step_ns", [](ScenarioFile &f, double v) { f.scenario.time_step_ns = v; }},
        {"pulse_ns", [](ScenarioFile &f, double v) { f.shape.duration_ns = v; }},
        {"margin_ns", [](ScenarioFile &f, double v) { f.shape.margin_ns = v; }},
        {"awg_rate_gsps", [](ScenarioFile &f, double v) { f.shape.awg_rate_gsps = v; }},
        {"g_max_db", [](ScenarioFile &f, double v) { f.shape.g_max_db = v; }},
        {"window_cutoff_ghz", [](ScenarioFile &f, double v) { f.shape.window_cutoff_ghz = v; }},
    };
    return s;
}

}  // namespace

const std::vector<std::string> &scenario_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto &[name, _] : setters()) k.push_back(name);
        return k;
    }();
    return keys;
}

ScenarioFile parse_scenario(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("scenario: ") + e.what());
    }
    if (!j.is_object()) throw InvalidArgument("scenario: expected a JSON object");
    ScenarioFile f;
    for (const auto &[key, value] : j.items()) {
        const auto &s = setters();
        const auto it = std::find_if(s.begin(), s.end(), [&](const auto &e) { return e.first == key; });
        if (it == s.end()) {
            std::string valid;
            for (const auto &k : scenario_keys()) valid += (valid.empty() ? "" : ", ") + k;
            throw InvalidArgument("scenario: unknown key '" + key + "'; valid keys: " + valid);
        }
        if (!value.is_number()) throw InvalidArgument("scenario: '" + key + "' must be a number");
        it->second(f, value.get<double>());
    }
    f.scenario.validate();
    return f;
}

ScenarioFile load_scenario(const std::string &path) { return parse_scenario(io::read_text(path)); }

}  // namespace fluxctl::cli
