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
#include <vector>

#include "fluxctl/transfer_function.hpp"

namespace fluxctl::filters {

inline constexpr std::int32_t kTapFullScale = 32767;

struct FirFilter {
    std::vector<double> taps_float;
    std::vector<std::int16_t> taps_int16;  // empty until quantized
    double sample_rate_gsps = 2.0;

    std::size_t size() const { return taps_float.empty() ? taps_int16.size() : taps_float.size(); }
    bool quantized() const { return !taps_int16.empty(); }
    /// Taps used for filtering: int16 / 32767 when quantized, else float.
    std::vector<double> effective_taps() const;
    bool operator==(const FirFilter &) const = default;
};

struct FirDesignOptions {
    int grid_points = 1024;
};

/// Linear-phase Type-II design: least-squares fit of the symmetric half taps
/// to |target| sampled from dc to Nyquist, with the Nyquist target set to 0.
FirFilter synthesize_fir(const TransferFunction &target, int n_taps, double sample_rate_gsps,
                         const FirDesignOptions &opt = {});

/// round(h / max|h| * 32767), half away from zero.
FirFilter quantize_taps(const FirFilter &f);

enum class TapSet { Auto, Float, Int16 };

/// sum_k h[k] exp(-i 2 pi f k / fs) on the grid, with the taps filtering uses.
TransferFunction fir_response(const FirFilter &f, std::span<const double> grid_ghz,
                              TapSet which = TapSet::Auto);

struct FirInvariants {
    std::int32_t max_abs = 0;
    int max_asymmetry = 0;       // max |h[i] - h[n-1-i]|
    double nyquist_ratio = 0.0;  // |H(fs/2)| / max_f |H(f)|
    bool ok() const { return max_abs == kTapFullScale && max_asymmetry <= 1 && nyquist_ratio < 1e-3; }
};

FirInvariants check_invariants(std::span<const std::int16_t> taps);

/// Normalised correlation <a,b> / (|a| |b|).
double normalized_correlation(std::span<const double> a, std::span<const double> b);

/// Causal convolution, output length equal to the input length.
std::vector<double> apply_fir(std::span<const double> x, std::span<const double> taps);

}  // namespace fluxctl::filters
