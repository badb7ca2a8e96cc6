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


#include "fluxctl/iir.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "fluxctl/errors.hpp"

namespace fluxctl::filters {
namespace {

using Poly = std::vector<double>;  // coefficients in ascending powers of z^-1

Poly multiply(const Poly &p, const Poly &q) {
    Poly r(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

double horner_z(const Poly &c, double z) {
    // c in ascending powers of w = 1/z; evaluate z^n * sum c_i z^-i.
    double acc = 0.0;
    for (double v : c) acc = acc * z + v;
    return acc;
}

double horner_z_deriv(const Poly &c, double z) {
    const std::size_t n = c.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc = acc * z + c[i] * double(n - i);
    return acc;
}

}  // namespace

IirCorrector design_iir_corrector(std::span<const ExponentialTerm> terms, double fs) {
    if (!(fs > 0.0)) throw InvalidArgument("design_iir_corrector: sample rate must be positive");
    IirCorrector out;
    out.sample_rate_gsps = fs;
    out.source_exponentials.assign(terms.begin(), terms.end());
    if (terms.empty()) return out;

    double sum = 0.0;
    for (const auto &t : terms) {
        if (!(t.tau_ns > 0.0) || !std::isfinite(t.tau_ns))
            throw InvalidArgument("design_iir_corrector: tau must be positive");
        if (!(std::abs(t.amplitude) < 1.0))
            throw InvalidArgument("design_iir_corrector: non-invertible distortion, |A| >= 1");
        sum += t.amplitude;
    }
    if (!(sum < 1.0))
        throw InvalidArgument("design_iir_corrector: non-invertible distortion, sum of A >= 1");

    const std::size_t n = terms.size();
    const double period = 1.0 / fs;
    std::vector<double> lambda(n);
    for (std::size_t k = 0; k < n; ++k) lambda[k] = std::exp(-period / terms[k].tau_ns);

    // N(w) = prod_j (1 - l_j w) - sum_k A_k (1 - w) prod_{j != k} (1 - l_j w)
    Poly num{1.0};
    for (double l : lambda) num = multiply(num, {1.0, -l});
    for (std::size_t k = 0; k < n; ++k) {
        Poly t{terms[k].amplitude, -terms[k].amplitude};
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) t = multiply(t, {1.0, -lambda[j]});
        for (std::size_t i = 0; i < t.size(); ++i) num[i] -= t[i];
    }

    // Poles are the roots in z of z^n N(1/z) = num[0] z^n + ... + num[n].
    std::vector<double> poles(n);
    if (n == 1) {
        poles[0] = -num[1] / num[0];
    } else {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t i = 0; i < n; ++i) comp(0, i) = -num[i + 1] / num[0];
        for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        if (es.info() != Eigen::Success)
            throw NumericalFailure("design_iir_corrector: pole extraction failed");
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = es.eigenvalues()(i);
            if (std::abs(r.imag()) > 1e-9 * std::max(1.0, std::abs(r)))
                throw NumericalFailure("design_iir_corrector: complex pole pair, terms too close");
            double z = r.real();
            for (int it = 0; it < 8; ++it) {
                const double d = horner_z_deriv(num, z);
                if (d == 0.0) break;
                z -= horner_z(num, z) / d;
            }
            poles[i] = z;
        }
    }
    for (double p : poles)
        if (!(std::abs(p) < 1.0))
            throw InvalidArgument("design_iir_corrector: non-invertible distortion, unstable pole");

    // Pair by rank: the k-th largest zero with the k-th largest pole.
    std::vector<std::size_t> by_lambda(n);
    std::iota(by_lambda.begin(), by_lambda.end(), 0);
    std::sort(by_lambda.begin(), by_lambda.end(),
              [&](std::size_t a, std::size_t b) { return lambda[a] > lambda[b]; });
    std::sort(poles.begin(), poles.end(), std::greater<>());

    out.sections.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t k = by_lambda[r];
        const double p = poles[r];
        const double g = (1.0 - p) / (1.0 - lambda[k]);
        out.sections[k] = IirSection{g, -g * lambda[k], -p};
    }
    return out;
}

Waveform apply_iir(const Waveform &w, const IirCorrector &c, InitialState init) {
    if (std::abs(w.sample_rate_gsps - c.sample_rate_gsps) > 1e-12 * c.sample_rate_gsps)
        throw InvalidArgument("apply_iir: sample-rate mismatch");
    Waveform out = w;
    if (w.samples.empty()) return out;
    double level = w.samples.front();
    for (const auto &s : c.sections) {
        double x1 = 0.0, y1 = 0.0;
        if (init == InitialState::Settled) {
            x1 = level;
            level *= s.dc_gain();
            y1 = level;
        }
        for (double &v : out.samples) {
            const double y = s.b0 * v + s.b1 * x1 - s.a1 * y1;
            x1 = v;
            y1 = y;
            v = y;
        }
    }
    return out;
}

DirectForm collapse(const IirCorrector &c) {
    DirectForm df{{1.0}, {1.0}};
    for (const auto &s : c.sections) {
        df.b = multiply(df.b, {s.b0, s.b1});
        df.a = multiply(df.a, {1.0, s.a1});
    }
    return df;
}

Waveform apply_direct_form(const Waveform &w, const DirectForm &df) {
    Waveform out = w;
    const auto &x = w.samples;
    auto &y = out.samples;
    for (std::size_t n = 0; n < x.size(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < df.b.size() && k <= n; ++k) acc += df.b[k] * x[n - k];
        for (std::size_t k = 1; k < df.a.size() && k <= n; ++k) acc -= df.a[k] * y[n - k];
        y[n] = acc / df.a[0];
    }
    return out;
}

}  // namespace fluxctl::filters
