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


#include "fluxctl/gaussian_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "fluxctl/errors.hpp"
#include "fluxctl/units.hpp"

namespace fluxctl::analysis {

namespace {

struct Histogram {
    std::vector<double> center;
    std::vector<double> count;
    double width = 0.0;
    double total = 0.0;
};

struct Mixture {
    double w[2];
    double mu[2];
    double var[2];
    double ll = -std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
    bool floored = false;
};

double log_normal(double x, double mu, double var) {
    return -0.5 * (std::log(units::two_pi * var) + (x - mu) * (x - mu) / var);
}

// Binned log-likelihood of a weighted sum of normals.
double log_likelihood(const Histogram &h, std::span<const double> w, std::span<const double> mu,
                      std::span<const double> var) {
    double ll = 0.0;
    for (std::size_t k = 0; k < h.center.size(); ++k) {
        if (h.count[k] == 0) continue;
        double p = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) p += w[j] * std::exp(log_normal(h.center[k], mu[j], var[j]));
        ll += h.count[k] * std::log(std::max(p * h.width, 1e-300));
    }
    return ll;
}

// Weighted 1-D k-means with two centers.
void kmeans(const Histogram &h, double &c0, double &c1) {
    for (int it = 0; it < 100; ++it) {
        double s[2] = {0, 0}, n[2] = {0, 0};
        for (std::size_t k = 0; k < h.center.size(); ++k) {
            const int j = std::abs(h.center[k] - c0) <= std::abs(h.center[k] - c1) ? 0 : 1;
            s[j] += h.count[k] * h.center[k];
            n[j] += h.count[k];
        }
        const double n0 = n[0] > 0 ? s[0] / n[0] : c0, n1 = n[1] > 0 ? s[1] / n[1] : c1;
        if (n0 == c0 && n1 == c1) break;
        c0 = n0, c1 = n1;
    }
}

Mixture em(const Histogram &h, double c0, double c1, double var_floor, const ResetOptions &opt) {
    Mixture m;
    // Initialise from the hard k-means partition.
    double n[2] = {0, 0}, s[2] = {0, 0}, ss[2] = {0, 0};
    for (std::size_t k = 0; k < h.center.size(); ++k) {
        const int j = std::abs(h.center[k] - c0) <= std::abs(h.center[k] - c1) ? 0 : 1;
        n[j] += h.count[k];
        s[j] += h.count[k] * h.center[k];
        ss[j] += h.count[k] * h.center[k] * h.center[k];
    }
    for (int j = 0; j < 2; ++j) {
        const double nj = std::max(n[j], 1.0);
        m.w[j] = std::max(n[j], 1.0) / (h.total + 2.0);
        m.mu[j] = n[j] > 0 ? s[j] / nj : (j ? c1 : c0);
        m.var[j] = std::max(ss[j] / nj - m.mu[j] * m.mu[j], var_floor);
    }
    std::vector<double> r(h.center.size());
    double prev = -std::numeric_limits<double>::infinity();
    for (m.iterations = 0; m.iterations < opt.max_iterations; ++m.iterations) {
        double nw[2] = {0, 0}, sm[2] = {0, 0};
        for (std::size_t k = 0; k < h.center.size(); ++k) {
            const double a = std::log(m.w[0]) + log_normal(h.center[k], m.mu[0], m.var[0]);
            const double b = std::log(m.w[1]) + log_normal(h.center[k], m.mu[1], m.var[1]);
            r[k] = 1.0 / (1.0 + std::exp(a - b));  // responsibility of component 1
            nw[0] += h.count[k] * (1 - r[k]);
            nw[1] += h.count[k] * r[k];
            sm[0] += h.count[k] * (1 - r[k]) * h.center[k];
            sm[1] += h.count[k] * r[k] * h.center[k];
        }
        for (int j = 0; j < 2; ++j) {
            if (nw[j] <= 0) nw[j] = 1e-300;
            m.mu[j] = sm[j] / nw[j];
            m.w[j] = nw[j] / h.total;
        }
        double sv[2] = {0, 0};
        for (std::size_t k = 0; k < h.center.size(); ++k) {
            const double d0 = h.center[k] - m.mu[0], d1 = h.center[k] - m.mu[1];
            sv[0] += h.count[k] * (1 - r[k]) * d0 * d0;
            sv[1] += h.count[k] * r[k] * d1 * d1;
        }
        m.floored = false;
        for (int j = 0; j < 2; ++j) {
            m.var[j] = sv[j] / nw[j];
            if (!(m.var[j] >= var_floor)) m.var[j] = var_floor, m.floored = true;
            m.w[j] = std::clamp(m.w[j], 1e-12, 1.0 - 1e-12);
        }
        m.ll = log_likelihood(h, m.w, m.mu, m.var);
        if (std::abs(m.ll - prev) < opt.tolerance * h.total) {
            m.converged = true;
            break;
        }
        prev = m.ll;
    }
    return m;
}

}  // namespace

ResetEstimate estimate_reset_fidelity(std::span<const double> x, const ResetOptions &opt) {
    if (x.size() < 1000) throw InvalidArgument("reset estimate: need at least 1000 samples");
    if (opt.bins < 16 || opt.restarts < 1) throw InvalidArgument("reset estimate: bad options");
    double mean = 0.0;
    for (double v : x) {
        if (!std::isfinite(v)) throw InvalidArgument("reset estimate: non-finite sample");
        mean += v;
    }
    mean /= double(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= double(x.size());
    if (!(var > 0.0)) throw InvalidArgument("reset estimate: samples have zero spread");

    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    Histogram h;
    h.width = (*hi_it - *lo_it) / opt.bins;
    h.center.resize(opt.bins);
    h.count.assign(opt.bins, 0.0);
    for (int k = 0; k < opt.bins; ++k) h.center[k] = *lo_it + (k + 0.5) * h.width;
    for (double v : x) {
        const int k = std::min(opt.bins - 1, static_cast<int>((v - *lo_it) / h.width));
        h.count[k] += 1.0;
    }
    h.total = double(x.size());
    const double var_floor = std::pow(opt.sigma_floor, 2) * var;

    // Restarts seed k-means from random pairs of samples.
    Mixture best;
    std::vector<double> cdf(h.count.size());
    std::partial_sum(h.count.begin(), h.count.end(), cdf.begin());
    for (int rs = 0; rs < opt.restarts; ++rs) {
        std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(rs));
        std::uniform_real_distribution<double> u(0.0, h.total);
        const auto draw = [&] {
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u(rng));
            return h.center[std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1)];
        };
        double c0 = draw(), c1 = draw();
        for (int tries = 0; c0 == c1 && tries < 32; ++tries) c1 = draw();
        if (c0 == c1) continue;
        kmeans(h, c0, c1);
        const Mixture m = em(h, c0, c1, var_floor, opt);
        if (m.ll > best.ll) best = m;
    }
    if (!std::isfinite(best.ll)) throw NumericalFailure("reset estimate: every restart collapsed");

    ResetEstimate e;
    const double logn = std::log(h.total);
    const double w1[1] = {1.0}, mu1[1] = {mean}, var1[1] = {var};
    e.bic_single = 2 * logn - 2 * log_likelihood(h, w1, mu1, var1);
    e.bic_mixture = 5 * logn - 2 * best.ll;
    e.converged = best.converged;
    e.iterations = best.iterations;
    e.sigma_floored = best.floored;
    if (e.bic_single <= e.bic_mixture) {
        e.single_component = true;
        e.mu_g = e.mu_e = mean;
        e.sigma_g = e.sigma_e = std::sqrt(var);
        e.weight_e = 0.0;
    } else {
        const int high = best.mu[1] >= best.mu[0] ? 1 : 0;
        const int ex = opt.excited == ExcitedCenter::Higher ? high : 1 - high;
        e.mu_e = best.mu[ex], e.sigma_e = std::sqrt(best.var[ex]);
        e.mu_g = best.mu[1 - ex], e.sigma_g = std::sqrt(best.var[1 - ex]);
        e.weight_e = best.w[ex];
        if (opt.excited == ExcitedCenter::Lower) e.weight_e = 1.0 - best.w[1 - ex];
    }
    e.fidelity = 1.0 - e.weight_e;
    return e;
}

}  // namespace fluxctl::analysis
