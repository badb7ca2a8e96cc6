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

#include <cstddef>
#include <vector>

namespace fluxctl {

/// Uniformly sampled real signal. Sample n sits at t = n / sample_rate_gsps ns.
struct Waveform {
    double sample_rate_gsps = 1.0;
    std::vector<double> samples;

    double period_ns() const { return 1.0 / sample_rate_gsps; }
    double duration_ns() const { return static_cast<double>(samples.size()) / sample_rate_gsps; }
    std::size_t size() const { return samples.size(); }
    double time_ns(std::size_t n) const { return static_cast<double>(n) / sample_rate_gsps; }

    bool operator==(const Waveform &) const = default;
};

}  // namespace fluxctl
