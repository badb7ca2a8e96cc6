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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fluxctl/fir.hpp"
#include "fluxctl/iir.hpp"
#include "fluxctl/pulse_program.hpp"
#include "fluxctl/waveform.hpp"

namespace fluxctl::pulsec {

struct SynthesisConfig {
    double sample_rate_gsps = 2.0;
    std::optional<filters::FirFilter> xy_fir;
    std::optional<filters::IirCorrector> z_iir;
    int dac_bits = 16;
    double dac_full_scale_v = 0.5;

    void validate() const;
    std::int32_t dac_max_code() const { return (std::int32_t(1) << (dac_bits - 1)) - 1; }
};

/// Frame state after each instruction that touched it.
struct FrameEvent {
    std::int64_t sample = 0;
    double carrier_ghz = 0.0;
    double frame_phase = 0.0;  // reported modulo 2 pi
    std::string op;
};

struct CompiledProgram {
    double sample_rate_gsps = 2.0;
    std::vector<std::complex<double>> xy_envelope;
    /// Accumulated carrier phase per sample in [0, 2 pi).
    std::vector<double> carrier_phase;
    std::vector<double> z_baseband;
    std::vector<FrameEvent> frame_trace;

    std::size_t size() const { return z_baseband.size(); }
    double duration_ns() const { return double(size()) / sample_rate_gsps; }
};

CompiledProgram compile(const PulseProgram &program, const SynthesisConfig &config);

/// Re{env[n] exp(-i theta[n])}, before any filtering.
Waveform modulate(const CompiledProgram &c);

/// Filters each path (FIR after modulation on XY, IIR on Z) and sums them.
/// Throws SaturationError if any sample exceeds normalised full scale.
Waveform synthesize(const CompiledProgram &c, const SynthesisConfig &config);

std::vector<std::int16_t> dac_quantize(const Waveform &w, const SynthesisConfig &config);
Waveform dac_dequantize(std::span<const std::int16_t> codes, const SynthesisConfig &config);

struct MemoryReport {
    double stored_ns = 0.0;
    double sequence_ns = 0.0;
    std::optional<double> ratio;  // empty when nothing is stored
    std::size_t unique_primitives = 0;
};

MemoryReport memory_report(const PulseProgram &program, const SynthesisConfig &config);

}  // namespace fluxctl::pulsec
