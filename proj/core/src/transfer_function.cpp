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


#include "fluxctl/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fluxctl/errors.hpp"

namespace fluxctl::filters {

double GaussianLowpass::sigma() const { return std::sqrt(std::log(2.0)) / cutoff_ghz; }

double GaussianLowpass::operator()(double f) const {
    const double x = f * sigma();
    return std::exp(-0.5 * x * x);
}

double BoundedInverse::floor() const {
    if (std::isinf(g_max_db) && g_max_db > 0) return 0.0;
    return std::pow(10.0, -g_max_db / 20.0);
}

double BoundedInverse::inverse_factor(double f) const {
    return 1.0 / std::max(channel(f), floor());
}

double BoundedInverse::operator()(double f) const {
    const GaussianLowpass window{window_cutoff_ghz};
    return h_qubit() * inverse_factor(f) * window(f);
}

double BoundedInverse::floor_frequency() const {
    const double fl = floor();
    if (fl <= 0.0) return std::numeric_limits<double>::infinity();
    // exp(-(f sigma)^2/2) = fl
    return std::sqrt(-2.0 * std::log(fl)) / channel.sigma();
}

bool Product::operator==(const Product &o) const { return factors == o.factors; }

namespace {

cplx eval_sampled(const Sampled &s, double f) {
    const double af = std::abs(f);
    const auto &g = s.freq_ghz;
    if (g.empty() || af < g.front() || af > g.back()) return cplx(0.0);
    auto it = std::upper_bound(g.begin(), g.end(), af);
    std::size_t hi = static_cast<std::size_t>(it - g.begin());
    cplx v;
    if (hi >= g.size()) {
        v = s.values.back();
    } else if (hi == 0) {
        v = s.values.front();
    } else {
        const std::size_t lo = hi - 1;
        const double t = (af - g[lo]) / (g[hi] - g[lo]);
        v = s.values[lo] * (1.0 - t) + s.values[hi] * t;
    }
    return f < 0 ? std::conj(v) : v;
}

struct Evaluator {
    double f;
    cplx operator()(const Identity &) const { return 1.0; }
    cplx operator()(const GaussianLowpass &g) const { return g(f); }
    cplx operator()(const BoundedInverse &b) const { return b(f); }
    cplx operator()(const Sampled &s) const { return eval_sampled(s, f); }
    cplx operator()(const Product &p) const {
        cplx v = 1.0;
        for (const auto &t : p.factors) v *= t(f);
        return v;
    }
};

}  // namespace

cplx TransferFunction::operator()(double f) const { return std::visit(Evaluator{f}, kind_); }

std::vector<cplx> TransferFunction::evaluate(std::span<const double> grid) const {
    std::vector<cplx> out(grid.size());
    std::transform(grid.begin(), grid.end(), out.begin(), [&](double f) { return (*this)(f); });
    return out;
}

std::string TransferFunction::kind_name() const {
    static const char *names[] = {"identity", "gaussian-lowpass", "bounded-inverse", "sampled",
                                  "product"};
    return names[kind_.index()];
}

bool TransferFunction::is_predistortion() const {
    if (std::holds_alternative<BoundedInverse>(kind_)) return true;
    if (const auto *p = std::get_if<Product>(&kind_))
        return std::any_of(p->factors.begin(), p->factors.end(),
                           [](const TransferFunction &t) { return t.is_predistortion(); });
    return false;
}

TransferFunction gaussian_lowpass(double cutoff_ghz) {
    if (!(cutoff_ghz > 0.0) || !std::isfinite(cutoff_ghz))
        throw InvalidArgument("gaussian_lowpass: cutoff must be positive");
    return GaussianLowpass{cutoff_ghz};
}

TransferFunction bounded_inverse(const TransferFunction &gauss, double qubit_ghz, double g_max_db,
                                 double window_cutoff_ghz) {
    const auto *g = std::get_if<GaussianLowpass>(&gauss.kind());
    if (!g) throw InvalidArgument("bounded_inverse: channel must be a Gaussian low-pass");
    if (!(qubit_ghz > 0.0)) throw InvalidArgument("bounded_inverse: f_q must be positive");
    if (!(g_max_db > 0.0)) throw InvalidArgument("bounded_inverse: g_max_db must be positive");
    if (!(window_cutoff_ghz > 0.0))
        throw InvalidArgument("bounded_inverse: window cutoff must be positive");
    return BoundedInverse{*g, qubit_ghz, g_max_db, window_cutoff_ghz};
}

TransferFunction sampled(std::vector<double> freq_ghz, std::vector<cplx> values) {
    if (freq_ghz.size() != values.size() || freq_ghz.empty())
        throw InvalidArgument("sampled: grid and values must be non-empty and equal length");
    for (std::size_t i = 0; i < freq_ghz.size(); ++i) {
        if (freq_ghz[i] < 0.0) throw InvalidArgument("sampled: frequencies must be >= 0");
        if (i > 0 && !(freq_ghz[i] > freq_ghz[i - 1]))
            throw InvalidArgument("sampled: frequencies must be strictly increasing");
    }
    return Sampled{std::move(freq_ghz), std::move(values)};
}

TransferFunction compose(const TransferFunction &a, const TransferFunction &b) {
    if (std::holds_alternative<Identity>(a.kind())) return b;
    if (std::holds_alternative<Identity>(b.kind())) return a;
    const auto *sa = std::get_if<Sampled>(&a.kind());
    const auto *sb = std::get_if<Sampled>(&b.kind());
    if (sa && sb) {
        if (sa->freq_ghz != sb->freq_ghz)
            throw InvalidArgument("compose: sampled grids do not match");
        Sampled s{sa->freq_ghz, sa->values};
        for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] *= sb->values[i];
        return s;
    }
    Product p;
    for (const TransferFunction *t : {&a, &b}) {
        if (const auto *inner = std::get_if<Product>(&t->kind()))
            p.factors.insert(p.factors.end(), inner->factors.begin(), inner->factors.end());
        else
            p.factors.push_back(*t);
    }
    return p;
}

Waveform apply_transfer(const Waveform &w, const TransferFunction &h, ApplyMode mode,
                        const ApplyOptions &opt) {
    if (w.size() < 2) throw InvalidArgument("apply_transfer: waveform needs at least 2 samples");
    if (mode == ApplyMode::Predistort && !h.is_predistortion())
        throw InvalidArgument("apply_transfer: predistort mode needs a bounded-inverse response");
    spectral::FilterOptions fo;
    fo.pad_factor = opt.periodic ? 1 : 4;
    Waveform out{w.sample_rate_gsps, {}};
    out.samples = spectral::filter_real(w.samples, w.sample_rate_gsps,
                                        [&](double f) { return h(f); }, fo);
    return out;
}

}  // namespace fluxctl::filters
