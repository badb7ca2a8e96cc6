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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fluxctl::cli {

/// Raised for argument combinations CLI11 cannot check by itself.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectrumArgs {
    double e_j = 4.5, e_c = 1.1, e_l = 0.5;
    int basis = 120;
    double from = 0.0, to = 1.0;
    int points = 101;
    int levels = 4;
    std::string registry, device;
    std::optional<double> reset_target_ghz;
};
void run_spectrum(const SpectrumArgs &a, std::ostream &out);

struct TradeoffArgs {
    double e_j = 4.5, e_c = 1.1, e_l = 0.5;
    double from_db = -80.0, to_db = -20.0, step_db = 1.0;
    double mutual_h = 2e-12, z0 = 50.0, noise_dbm = -130.0, vmax = 0.5;
    bool johnson = false;
    double temperature_k = 300.0;
};
void run_tradeoff(const TradeoffArgs &a, std::ostream &out);

struct DesignArgs {
    std::string kind;  // gauss | inverse | fir | iir
    double cutoff_ghz = 0.092;
    std::optional<double> qubit_ghz;
    double g_max_db = 50.0;
    double window_ghz = 1.0;
    std::optional<double> rate_gsps;
    int taps = 16;
    std::string target = "inverse";
    std::vector<std::string> exps;  // "A:tau_ns"
    int grid_points = 1024;
};
void run_design(const DesignArgs &a, std::ostream &out);

struct CompileArgs {
    std::string program;
    std::string fir, iir;
    std::string out;
    bool report_memory = false;
    int dac_bits = 16;
    double full_scale_v = 0.5;
};
void run_compile(const CompileArgs &a, std::ostream &out);

struct SimulateArgs {
    std::string kind;  // rabi | gate | rb
    std::string scenario;
    bool predistort = false;
    std::string sweep = "amplitude";
    std::optional<double> from, to;
    int points = 41;
    double amplitude_v = 0.0;
    std::uint64_t seed = 1;
    std::vector<int> lengths{1, 10, 25, 50, 100, 200};
    int sequences = 10;
    std::string mode = "ideal";
    double depolarizing_p = 1.0;
    std::optional<int> interleaved;
    std::string program_out;
};
void run_simulate(const SimulateArgs &a, std::ostream &out);

struct FitArgs {
    std::string model;  // t1 | dephasing | rb | reset | tail
    std::string data;
    std::optional<double> t1_de_us;
    std::string excited = "higher";
    int terms = 3;
    double window_ns = 20.0;
    bool single = false;
    double rad_per_unit = 1.0;
};
void run_fit(const FitArgs &a, std::ostream &out);

struct DevicesArgs {
    std::string registry;
    bool csv = false;
};
void run_devices(const DevicesArgs &a, std::ostream &out);

}  // namespace fluxctl::cli
