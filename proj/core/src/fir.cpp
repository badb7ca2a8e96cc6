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


#include "fluxctl/fir.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "fluxctl/errors.hpp"
#include "fluxctl/units.hpp"

namespace fluxctl::filters {

std::vector<double> FirFilter::effective_taps() const {
    if (!quantized()) return taps_float;
    std::vector<double> h(taps_int16.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = taps_int16[i] / double(kTapFullScale);
    return h;
}

namespace {

double qubit_frequency_of(const TransferFunction &t) {
    if (const auto *b = std::get_if<BoundedInverse>(&t.kind())) return b->qubit_ghz;
    if (const auto *p = std::get_if<Product>(&t.kind()))
        for (const auto &f : p->factors)
            if (double q = qubit_frequency_of(f); q > 0) return q;
    return 0.0;
}

}  // namespace

FirFilter synthesize_fir(const TransferFunction &target, int n_taps, double fs,
                         const FirDesignOptions &opt) {
    if (n_taps < 2 || n_taps % 2 != 0)
        throw InvalidArgument("synthesize_fir: n_taps must be even and >= 2 (Type-II linear phase)");
    if (!(fs > 0.0)) throw InvalidArgument("synthesize_fir: sample rate must be positive");
    if (opt.grid_points < 512) throw InvalidArgument("synthesize_fir: grid needs >= 512 points");
    if (double fq = qubit_frequency_of(target); fq > 0 && !(fs > 2.0 * fq))
        throw InvalidArgument("synthesize_fir: sample rate must exceed twice the qubit frequency");

    const int half = n_taps / 2;
    const int g = opt.grid_points;
    Eigen::MatrixXd a(g, half);
    Eigen::VectorXd d(g);
    const double centre = 0.5 * (n_taps - 1);
    for (int j = 0; j < g; ++j) {
        const double f = 0.5 * fs * j / (g - 1);
        const double w = units::two_pi * f / fs;
        d(j) = (j == g - 1) ? 0.0 : std::abs(target(f));
        for (int k = 0; k < half; ++k) a(j, k) = 2.0 * std::cos(w * (centre - k));
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(d);

    FirFilter out;
    out.sample_rate_gsps = fs;
    out.taps_float.assign(n_taps, 0.0);
    for (int k = 0; k < half; ++k) out.taps_float[k] = out.taps_float[n_taps - 1 - k] = c(k);
    return out;
}

FirFilter quantize_taps(const FirFilter &f) {
    if (f.taps_float.empty()) throw InvalidArgument("quantize_taps: no float taps");
    double peak = 0.0;
    for (double v : f.taps_float) {
        if (!std::isfinite(v)) throw InvalidArgument("quantize_taps: non-finite tap");
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) throw InvalidArgument("quantize_taps: all taps are zero");
    FirFilter out = f;
    out.taps_int16.resize(f.taps_float.size());
    for (std::size_t i = 0; i < f.taps_float.size(); ++i)
        out.taps_int16[i] =
            static_cast<std::int16_t>(std::round(f.taps_float[i] / peak * kTapFullScale));
    return out;
}

TransferFunction fir_response(const FirFilter &f, std::span<const double> grid, TapSet which) {
    if (!(f.sample_rate_gsps > 0.0)) throw InvalidArgument("fir_response: sample rate not set");
    std::vector<double> h;
    if (which == TapSet::Int16 || (which == TapSet::Auto && f.quantized())) {
        if (!f.quantized()) throw InvalidArgument("fir_response: filter is not quantized");
        for (auto v : f.taps_int16) h.push_back(double(v) / kTapFullScale);
    } else {
        h = f.taps_float;
    }
    std::vector<cplx> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < h.size(); ++k)
            acc += h[k] * std::polar(1.0, -units::two_pi * grid[j] * double(k) / f.sample_rate_gsps);
        values[j] = acc;
    }
    return Sampled{std::vector<double>(grid.begin(), grid.end()), std::move(values)};
}

FirInvariants check_invariants(std::span<const std::int16_t> taps) {
    FirInvariants inv;
    const std::size_t n = taps.size();
    for (std::size_t i = 0; i < n; ++i) {
        inv.max_abs = std::max<std::int32_t>(inv.max_abs, std::abs(std::int32_t(taps[i])));
        inv.max_asymmetry =
            std::max(inv.max_asymmetry, std::abs(int(taps[i]) - int(taps[n - 1 - i])));
    }
    // Normalised frequency, fs = 1.
    const auto mag = [&](double f) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += double(taps[k]) * std::polar(1.0, -units::two_pi * f * double(k));
        return std::abs(acc);
    };
    double peak = 0.0;
    constexpr int kGrid = 4096;
    for (int j = 0; j <= kGrid; ++j) peak = std::max(peak, mag(0.5 * j / kGrid));
    inv.nyquist_ratio = peak > 0 ? mag(0.5) / peak : 0.0;
    return inv;
}

double normalized_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty())
        throw InvalidArgument("normalized_correlation: length mismatch");
    const double ab = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    const double aa = std::inner_product(a.begin(), a.end(), a.begin(), 0.0);
    const double bb = std::inner_product(b.begin(), b.end(), b.begin(), 0.0);
    if (aa == 0.0 || bb == 0.0) return 0.0;
    return ab / std::sqrt(aa * bb);
}

std::vector<double> apply_fir(std::span<const double> x, std::span<const double> taps) {
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t n = 0; n < x.size(); ++n) {
        double acc = 0.0;
        const std::size_t kmax = std::min(taps.size(), n + 1);
        for (std::size_t k = 0; k < kmax; ++k) acc += taps[k] * x[n - k];
        y[n] = acc;
    }
    return y;
}

}  // namespace fluxctl::filters
