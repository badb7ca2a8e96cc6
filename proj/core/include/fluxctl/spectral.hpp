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
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fluxctl::spectral {

using cplx = std::complex<double>;

/// Smallest 2^a 3^b 5^c >= n, so mixed-radix transforms stay fast.
std::size_t next_fast_size(std::size_t n);

std::vector<cplx> fft(std::span<const cplx> x);
/// Inverse transform including the 1/N normalisation.
std::vector<cplx> ifft(std::span<const cplx> x);
std::vector<cplx> rfft_full(std::span<const double> x);

struct FilterOptions {
    /// Transform length as a multiple of the input length; 1 means periodic.
    std::size_t pad_factor = 4;
    /// Output samples per input sample (band-limited interpolation).
    std::size_t upsample = 1;
    /// Delay applied to the output, ns (positive shifts later).
    double delay_ns = 0.0;
};

/// Multiplies the spectrum of x by h(f) (f in GHz, may be negative) and
/// returns the real output trimmed to x.size() * upsample samples. The
/// response is evaluated on non-negative frequencies only and mirrored as its
/// conjugate, so the output is real by construction; the Nyquist bin takes
/// the real part of h.
std::vector<double> filter_real(std::span<const double> x, double sample_rate_gsps,
                                const std::function<cplx(double)> &h,
                                const FilterOptions &opt = {});

}  // namespace fluxctl::spectral
