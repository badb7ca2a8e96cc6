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


#include "fluxctl/devices.hpp"

#include <cmath>
#include <set>

#include "json.hpp"

#include "fluxctl/errors.hpp"
#include "fluxctl/io.hpp"

namespace fluxctl::devices {

using nlohmann::json;

namespace {

const char *const kRegistry = R"({
  "format": "fluxctl-devices/1",
  "devices": [
    {"name": "A", "fq_mhz": 208, "fidelity_pct": 99.990, "gate_ns": 20, "t1_us": 110, "t2r_us": 128, "t2echo_us": 133},
    {"name": "B", "fq_mhz": 205, "fidelity_pct": 99.974, "gate_ns": 20, "t1_us": 65, "t2r_us": 21, "t2echo_us": 34},
    {"name": "C", "fq_mhz": 232, "fidelity_pct": 99.986, "gate_ns": 20, "t1_us": 95, "t2r_us": 82, "t2echo_us": 118},
    {"name": "D", "fq_mhz": 285, "fidelity_pct": 99.970, "gate_ns": 40, "t1_us": 53, "t2r_us": 30, "t2echo_us": 34},
    {"name": "E", "fq_mhz": 267, "fidelity_pct": 99.974, "gate_ns": 30, "t1_us": 52, "t2r_us": 23, "t2echo_us": 46},
    {"name": "F", "fq_mhz": 233, "fidelity_pct": null, "gate_ns": 20, "t1_us": 140, "t2r_us": 28, "t2echo_us": 28},
    {"name": "G", "fq_mhz": 164, "fidelity_pct": null, "gate_ns": 20, "t1_us": 151, "t2r_us": 30, "t2echo_us": 79},
    {"name": "H", "fq_mhz": 378, "fidelity_pct": null, "gate_ns": 200, "t1_us": 214, "t2r_us": 68, "t2echo_us": 131}
  ],
  "noise": [
    {"device": "A", "flux_noise_1f_uphi0": 8.11, "flux_noise_1f_sigma": 0.09,
     "flux_noise_white_nphi0_rthz": 4.18, "flux_noise_white_sigma": 0.27, "loss_tangent": 13.7e-6,
     "provenance": "reported fit values; model formulas not bundled"}
  ]
}
)";

double positive(const json &j, const char *key, const std::string &who) {
    if (!j.contains(key) || !j[key].is_number())
        throw InvalidArgument("registry: " + who + " lacks numeric '" + key + "'");
    const double v = j[key].get<double>();
    if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidArgument("registry: " + who + " has non-positive '" + key + "'");
    return v;
}

}  // namespace

const DeviceRecord &Registry::find(const std::string &name) const {
    for (const auto &d : devices)
        if (d.name == name) return d;
    throw InvalidArgument("registry: unknown device '" + name + "'");
}

Registry parse_registry(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InvalidArgument(std::string("registry: ") + e.what());
    }
    if (!j.contains("devices") || !j["devices"].is_array())
        throw InvalidArgument("registry: missing 'devices' array");
    Registry r;
    std::set<std::string> names;
    for (const auto &d : j["devices"]) {
        DeviceRecord rec;
        if (!d.contains("name") || !d["name"].is_string()) throw InvalidArgument("registry: device without name");
        rec.name = d["name"].get<std::string>();
        if (!names.insert(rec.name).second) throw InvalidArgument("registry: duplicate device '" + rec.name + "'");
        rec.fq_mhz = positive(d, "fq_mhz", rec.name);
        if (d.contains("fidelity_pct") && !d["fidelity_pct"].is_null())
            rec.fidelity_pct = d["fidelity_pct"].get<double>();
        rec.gate_ns = positive(d, "gate_ns", rec.name);
        rec.t1_us = positive(d, "t1_us", rec.name);
        rec.t2r_us = positive(d, "t2r_us", rec.name);
        rec.t2echo_us = positive(d, "t2echo_us", rec.name);
        if (d.contains("circuit") && !d["circuit"].is_null()) {
            const auto &c = d["circuit"];
            fluxonium::Params p;
            p.e_j = c.value("e_j", p.e_j);
            p.e_c = c.value("e_c", p.e_c);
            p.e_l = c.value("e_l", p.e_l);
            p.phi_ext = c.value("phi_ext", p.phi_ext);
            fluxonium::validate(p);
            rec.circuit = p;
        }
        r.devices.push_back(std::move(rec));
    }
    if (j.contains("noise"))
        for (const auto &n : j["noise"]) {
            NoiseMetadata m;
            m.device = n.value("device", "");
            m.flux_noise_1f_uphi0 = n.value("flux_noise_1f_uphi0", 0.0);
            m.flux_noise_1f_sigma = n.value("flux_noise_1f_sigma", 0.0);
            m.flux_noise_white_nphi0_rthz = n.value("flux_noise_white_nphi0_rthz", 0.0);
            m.flux_noise_white_sigma = n.value("flux_noise_white_sigma", 0.0);
            m.loss_tangent = n.value("loss_tangent", 0.0);
            m.provenance = n.value("provenance", "");
            r.noise.push_back(std::move(m));
        }
    return r;
}

Registry load_registry(const std::string &path) { return parse_registry(io::read_text(path)); }

std::string to_json(const Registry &r) {
    json j;
    j["format"] = "fluxctl-devices/1";
    j["devices"] = json::array();
    for (const auto &d : r.devices) {
        json e{{"name", d.name},       {"fq_mhz", d.fq_mhz}, {"gate_ns", d.gate_ns},
               {"t1_us", d.t1_us},     {"t2r_us", d.t2r_us}, {"t2echo_us", d.t2echo_us}};
        e["fidelity_pct"] = d.fidelity_pct ? json(*d.fidelity_pct) : json(nullptr);
        if (d.circuit)
            e["circuit"] = {{"e_j", d.circuit->e_j}, {"e_c", d.circuit->e_c},
                            {"e_l", d.circuit->e_l}, {"phi_ext", d.circuit->phi_ext}};
        j["devices"].push_back(std::move(e));
    }
    j["noise"] = json::array();
    for (const auto &n : r.noise)
        j["noise"].push_back({{"device", n.device},
                              {"flux_noise_1f_uphi0", n.flux_noise_1f_uphi0},
                              {"flux_noise_1f_sigma", n.flux_noise_1f_sigma},
                              {"flux_noise_white_nphi0_rthz", n.flux_noise_white_nphi0_rthz},
                              {"flux_noise_white_sigma", n.flux_noise_white_sigma},
                              {"loss_tangent", n.loss_tangent},
                              {"provenance", n.provenance}});
    return j.dump(2);
}

const std::string &bundled_registry_json() {
    static const std::string text(kRegistry);
    return text;
}

const Registry &bundled_registry() {
    static const Registry r = parse_registry(bundled_registry_json());
    return r;
}

std::string bundled_registry_sha256() { return io::sha256_hex(bundled_registry_json()); }

fluxonium::Params reference_circuit() { return fluxonium::Params{}; }

}  // namespace fluxctl::devices
