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
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace fluxctl::pulsec {

enum class PrimitiveKind { Envelope, Edge };

const char *to_string(PrimitiveKind k);
PrimitiveKind primitive_kind_from(const std::string &s);

struct PulsePrimitive {
    std::string id;
    PrimitiveKind kind = PrimitiveKind::Envelope;
    std::vector<double> samples;  // normalised, |v| <= 1
    double sample_rate_gsps = 2.0;

    double duration_ns() const { return double(samples.size()) / sample_rate_gsps; }
    bool operator==(const PulsePrimitive &) const = default;
};

struct Instruction;

struct PlayXY {
    std::string primitive;
    double amplitude = 1.0;
    double phase = 0.0;  // rad
    bool operator==(const PlayXY &) const = default;
};

/// rise edge, flat hold, fall edge on the baseband path. Instructions in
/// body run on the XY path while the hold is active (from the end of the
/// rise); they must finish before the fall starts.
struct PlayZ {
    std::string rise;
    double hold_amplitude = 0.0;
    double hold_ns = 0.0;
    std::string fall;
    std::vector<Instruction> body;
    bool operator==(const PlayZ &) const;
};

struct VirtualZ {
    double phase = 0.0;  // rad
    bool operator==(const VirtualZ &) const = default;
};

struct SetCarrier {
    double frequency_ghz = 0.0;
    bool operator==(const SetCarrier &) const = default;
};

struct Delay {
    double duration_ns = 0.0;
    bool operator==(const Delay &) const = default;
};

struct Repeat {
    std::int64_t count = 1;
    std::vector<Instruction> body;
    bool operator==(const Repeat &) const;
};

struct Instruction {
    std::variant<PlayXY, PlayZ, VirtualZ, SetCarrier, Delay, Repeat> op;
    bool operator==(const Instruction &) const = default;
};

struct PulseProgram {
    double sample_rate_gsps = 2.0;
    double initial_carrier_ghz = 0.0;
    std::map<std::string, PulsePrimitive> primitives;
    std::vector<Instruction> instructions;

    /// Throws InvalidArgument / ScheduleError for unresolved ids, samples out
    /// of range, non-integer sample durations, bad counts.
    void validate() const;
    /// Total timeline length in samples (without compiling).
    std::int64_t total_samples() const;
    double total_duration_ns() const { return double(total_samples()) / sample_rate_gsps; }
    bool operator==(const PulseProgram &) const = default;
};

/// ns -> whole samples; throws if ns * rate is not an integer within 1e-9.
std::int64_t samples_for(double ns, double sample_rate_gsps, const char *what);

}  // namespace fluxctl::pulsec
