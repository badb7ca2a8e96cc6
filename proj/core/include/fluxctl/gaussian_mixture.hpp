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
#include <span>

namespace fluxctl::analysis {

enum class ExcitedCenter { Higher, Lower };

struct ResetOptions {
    /// Which mixture component is |e>.
    ExcitedCenter excited = ExcitedCenter::Higher;
    int restarts = 16;
    std::uint64_t seed = 0x5eed;
    int bins = 512;
    int max_iterations = 2000;
    double tolerance = 1e-10;  // log-likelihood change per sample
    /// Width floor as a fraction of the sample standard deviation.
    double sigma_floor = 1e-3;
};

struct ResetEstimate {
    double mu_g = 0.0;
    double mu_e = 0.0;
    double sigma_g = 0.0;
    double sigma_e = 0.0;
    double weight_e = 0.0;
    double fidelity = 1.0;
    bool converged = false;
    bool sigma_floored = false;
    /// A single Gaussian was preferred by BIC; weight_e is then 0.
    bool single_component = false;
    double bic_single = 0.0;
    double bic_mixture = 0.0;
    int iterations = 0;
};

ResetEstimate estimate_reset_fidelity(std::span<const double> samples, const ResetOptions &opt = {});

}  // namespace fluxctl::analysis
