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
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fluxctl/clifford.hpp"
#include "fluxctl/dynamics.hpp"
#include "fluxctl/pulse_program.hpp"

namespace fluxctl::rb {

/// How logical X90 pulses map onto the drive. The simulated rotation axis of
/// a pulse with program phase phi is sign * phi + axis_offset.
struct GateCalibration {
    dynamics::Calibration x90;
    double axis_offset = 0.0;
    int sign = 1;
    double dac_full_scale_v = 0.5;

    /// PlayXY amplitude in DAC full-scale units.
    double amplitude_fraction() const { return x90.amplitude_v / dac_full_scale_v; }
};

/// Nominal calibration for program construction without a simulator.
GateCalibration ideal_calibration(double drive_ghz);

/// Measures axis offset and sign of a calibrated half-pi pulse.
GateCalibration calibrate_gates(const dynamics::Simulator &sim, const dynamics::Calibration &x90,
                                double dac_full_scale_v = 0.5);

inline constexpr const char *kX90Primitive = "x90";

/// Clifford indices -> program. Each Z becomes a frame update; every X90
/// is one play of the shared half-pi envelope.
pulsec::PulseProgram build_rb_program(std::span<const int> cliffords, const GateCalibration &cal);

/// Logical unitary realised by an ideal interpretation of the program.
Eigen::Matrix2cd ideal_program_unitary(const pulsec::PulseProgram &program,
                                       const GateCalibration &cal);

/// Random Clifford sequence with optional interleaved gate; recovery appended.
std::vector<int> random_sequence(int length, std::mt19937_64 &rng,
                                 std::optional<int> interleaved = std::nullopt);

enum class RbMode { IdealGates, Pulse };

struct RbOptions {
    std::vector<int> lengths;
    int sequences_per_length = 10;
    std::uint64_t seed = 0;
    std::optional<int> interleaved;  // Clifford index
    RbMode mode = RbMode::IdealGates;
    /// Depolarizing parameter per random Clifford (ideal-gates mode).
    double depolarizing_p = 1.0;
};

struct RbPoint {
    int length = 0;
    int seq_index = 0;
    double survival = 0.0;
};

struct RbResult {
    std::vector<RbPoint> points;
    /// Program of the first sequence at the longest length.
    pulsec::PulseProgram program;
};

/// Pulse mode needs `sim`; ideal-gates mode ignores it.
RbResult run_rb(const RbOptions &opt, const GateCalibration &cal,
                const dynamics::Simulator *sim = nullptr);

/// Mean survival per length, in order of first appearance.
std::vector<std::pair<int, double>> mean_survival(std::span<const RbPoint> points);

}  // namespace fluxctl::rb
