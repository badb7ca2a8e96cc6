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


#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fluxctl/fluxonium.hpp"

namespace fluxctl::devices {

struct DeviceRecord {
    std::string name;
    double fq_mhz = 0.0;
    std::optional<double> fidelity_pct;  // absent when not benchmarked
    double gate_ns = 0.0;
    double t1_us = 0.0;
    double t2r_us = 0.0;
    double t2echo_us = 0.0;
    std::optional<fluxonium::Params> circuit;
};

/// Noise-model fit results carried as metadata only.
struct NoiseMetadata {
    std::string device;
    double flux_noise_1f_uphi0 = 0.0;
    double flux_noise_1f_sigma = 0.0;
    double flux_noise_white_nphi0_rthz = 0.0;
    double flux_noise_white_sigma = 0.0;
    double loss_tangent = 0.0;
    std::string provenance;
};

struct Registry {
    std::vector<DeviceRecord> devices;
    std::vector<NoiseMetadata> noise;

    const DeviceRecord &find(const std::string &name) const;
};

/// Bundled registry text (JSON) and its parsed form.
const std::string &bundled_registry_json();
const Registry &bundled_registry();

/// SHA-256 of the bundled registry text, hex.
std::string bundled_registry_sha256();

Registry parse_registry(const std::string &json_text);
Registry load_registry(const std::string &path);
std::string to_json(const Registry &r);

/// Circuit parameters used for the half-flux spectrum figure.
fluxonium::Params reference_circuit();

}  // namespace fluxctl::devices
