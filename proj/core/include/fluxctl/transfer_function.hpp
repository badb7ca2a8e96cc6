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
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "fluxctl/spectral.hpp"
#include "fluxctl/waveform.hpp"

namespace fluxctl::filters {

using cplx = std::complex<double>;

inline constexpr double kDefaultWindowCutoffGhz = 1.0;

struct Identity {
    bool operator==(const Identity &) const = default;
};

/// exp(-(f sigma)^2 / 2) with sigma = sqrt(ln 2) / f_c, so |H(f_c)|^2 = 1/2.
struct GaussianLowpass {
    double cutoff_ghz = 0.092;
    double sigma() const;
    double operator()(double f_ghz) const;
    bool operator==(const GaussianLowpass &) const = default;
};

/// H_q / max(H_g(f), 10^(-G/20)) * W(f), H_q = H_g(f_q), W a Gaussian window.
/// g_max_db may be +infinity to remove the cap.
struct BoundedInverse {
    GaussianLowpass channel;
    double qubit_ghz = 0.208;
    double g_max_db = 50.0;
    double window_cutoff_ghz = kDefaultWindowCutoffGhz;

    double floor() const;
    double h_qubit() const { return channel(qubit_ghz); }
    /// 1 / max(H_g, floor), before the qubit normalisation and window.
    double inverse_factor(double f_ghz) const;
    double operator()(double f_ghz) const;
    /// Lowest frequency at which the cap engages, GHz (infinite without cap).
    double floor_frequency() const;
    bool operator==(const BoundedInverse &) const = default;
};

/// Complex response tabulated on an increasing grid of non-negative
/// frequencies; evaluated by linear interpolation, conjugated for f < 0,
/// zero outside the grid.
struct Sampled {
    std::vector<double> freq_ghz;
    std::vector<cplx> values;
    bool operator==(const Sampled &) const = default;
};

class TransferFunction;

struct Product {
    std::vector<TransferFunction> factors;
    bool operator==(const Product &) const;
};

class TransferFunction {
  public:
    using Kind = std::variant<Identity, GaussianLowpass, BoundedInverse, Sampled, Product>;

    TransferFunction() = default;
    TransferFunction(Kind k) : kind_(std::move(k)) {}  // NOLINT: implicit by design
    template <typename T>
        requires std::is_constructible_v<Kind, T> && (!std::is_same_v<std::decay_t<T>, Kind>) &&
                 (!std::is_same_v<std::decay_t<T>, TransferFunction>)
    TransferFunction(T &&alt) : kind_(std::forward<T>(alt)) {}  // NOLINT

    const Kind &kind() const { return kind_; }
    std::string kind_name() const;

    cplx operator()(double f_ghz) const;
    double magnitude(double f_ghz) const { return std::abs((*this)(f_ghz)); }
    std::vector<cplx> evaluate(std::span<const double> grid) const;

    /// True if this is (or contains) a bounded inverse.
    bool is_predistortion() const;

    bool operator==(const TransferFunction &) const = default;

  private:
    Kind kind_ = Identity{};
};

TransferFunction gaussian_lowpass(double cutoff_ghz);
TransferFunction bounded_inverse(const TransferFunction &gauss, double qubit_ghz,
                                 double g_max_db = 50.0,
                                 double window_cutoff_ghz = kDefaultWindowCutoffGhz);
TransferFunction sampled(std::vector<double> freq_ghz, std::vector<cplx> values);
TransferFunction compose(const TransferFunction &a, const TransferFunction &b);

enum class ApplyMode { Filter, Predistort };

struct ApplyOptions {
    /// Zero-pad to >= 4x the input (linear convolution). Periodic treats the
    /// waveform as one period of a periodic signal.
    bool periodic = false;
};

Waveform apply_transfer(const Waveform &w, const TransferFunction &h,
                        ApplyMode mode = ApplyMode::Filter, const ApplyOptions &opt = {});

}  // namespace fluxctl::filters
