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

#include <span>
#include <vector>

#include "fluxctl/waveform.hpp"

namespace fluxctl::filters {

/// One settling term: after a falling edge the line carries
/// amplitude * exp(-t / tau_ns) (fraction of the step height).
struct ExponentialTerm {
    double amplitude = 0.0;
    double tau_ns = 1.0;
    bool operator==(const ExponentialTerm &) const = default;
};

/// y[n] = b0 x[n] + b1 x[n-1] - a1 y[n-1]
struct IirSection {
    double b0 = 1.0;
    double b1 = 0.0;
    double a1 = 0.0;
    double dc_gain() const { return (b0 + b1) / (1.0 + a1); }
    bool operator==(const IirSection &) const = default;
};

struct IirCorrector {
    double sample_rate_gsps = 2.0;
    std::vector<IirSection> sections;
    std::vector<ExponentialTerm> source_exponentials;
    bool operator==(const IirCorrector &) const = default;
};

/// Exact discrete inverse of the sampled multi-exponential line: the step
/// response 1 - sum A_k exp(-t/tau_k) is discretised step-invariantly and
/// its reciprocal factored into one first-order section per term, each with
/// unit dc gain. Zeros sit at exp(-T/tau_k).
IirCorrector design_iir_corrector(std::span<const ExponentialTerm> terms,
                                  double sample_rate_gsps);

enum class InitialState {
    Zero,     // x[-1] = y[-1] = 0
    Settled,  // steady state for a constant input equal to x[0]
};

Waveform apply_iir(const Waveform &w, const IirCorrector &c,
                   InitialState init = InitialState::Zero);

/// Cascade multiplied out into one direct-form filter
/// sum_k a[k] y[n-k] = sum_k b[k] x[n-k] with a[0] = 1.
struct DirectForm {
    std::vector<double> b;
    std::vector<double> a;
    /// Free coefficients: all of b plus a[1..].
    std::size_t coefficient_count() const { return b.size() + (a.empty() ? 0 : a.size() - 1); }
};

DirectForm collapse(const IirCorrector &c);

Waveform apply_direct_form(const Waveform &w, const DirectForm &df);

}  // namespace fluxctl::filters
