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


#include "fluxctl/spectral.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

#include "fluxctl/errors.hpp"
#include "fluxctl/units.hpp"

namespace fluxctl::spectral {

std::size_t next_fast_size(std::size_t n) {
    if (n <= 1) return 1;
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2u, 3u, 5u})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

std::vector<cplx> fft(std::span<const cplx> x) {
    Eigen::FFT<double> engine;
    std::vector<cplx> in(x.begin(), x.end()), out;
    engine.fwd(out, in);
    return out;
}

std::vector<cplx> ifft(std::span<const cplx> x) {
    Eigen::FFT<double> engine;
    std::vector<cplx> in(x.begin(), x.end()), out;
    engine.inv(out, in);
    return out;
}

std::vector<cplx> rfft_full(std::span<const double> x) {
    std::vector<cplx> c(x.begin(), x.end());
    return fft(c);
}

std::vector<double> filter_real(std::span<const double> x, double fs,
                                const std::function<cplx(double)> &h,
                                const FilterOptions &opt) {
    if (x.size() < 2) throw InvalidArgument("filter: waveform needs at least 2 samples");
    if (!(fs > 0.0)) throw InvalidArgument("filter: sample rate must be positive");
    if (opt.pad_factor < 1 || opt.upsample < 1)
        throw InvalidArgument("filter: pad_factor and upsample must be >= 1");

    const std::size_t n = x.size();
    const std::size_t m = opt.pad_factor == 1 ? n : next_fast_size(opt.pad_factor * n);
    const std::size_t u = opt.upsample;
    const std::size_t mu = m * u;

    std::vector<cplx> buf(m, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i) buf[i] = x[i];
    const std::vector<cplx> spec = fft(buf);

    std::vector<cplx> out(mu, cplx(0.0));
    const double scale = static_cast<double>(u);
    const auto shifted = [&](double f) {
        cplx v = h(f);
        if (opt.delay_ns != 0.0) v *= std::polar(1.0, -units::two_pi * f * opt.delay_ns);
        return v;
    };
    const std::size_t half = m / 2;
    for (std::size_t k = 0; k <= half; ++k) {
        const double f = static_cast<double>(k) * fs / static_cast<double>(m);
        const bool nyquist = (m % 2 == 0) && k == half && k != 0;
        if (k == 0) {
            out[0] = scale * spec[0] * cplx(shifted(0.0).real(), 0.0);
        } else if (nyquist) {
            const cplx v = scale * spec[k] * shifted(f).real();
            if (u == 1) {
                out[k] = v;
            } else {
                out[k] = 0.5 * v;
                out[mu - k] = 0.5 * v;
            }
        } else {
            const cplx hv = shifted(f);
            out[k] = scale * spec[k] * hv;
            out[mu - k] = scale * spec[m - k] * std::conj(hv);
        }
    }
    const std::vector<cplx> y = ifft(out);
    std::vector<double> result(n * u);
    for (std::size_t i = 0; i < result.size(); ++i) result[i] = y[i].real();
    return result;
}

}  // namespace fluxctl::spectral
