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


#include "fluxctl/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "fluxctl/errors.hpp"
#include "fluxctl/least_squares.hpp"

namespace fluxctl::distortion {

void ExponentialTailModel::validate() const {
    double total = 0.0;
    for (const auto &t : terms) {
        if (!(t.tau_ns > 0.0) || !std::isfinite(t.tau_ns))
            throw InvalidArgument("tail model: tau must be positive");
        if (!std::isfinite(t.amplitude)) throw InvalidArgument("tail model: non-finite amplitude");
        total += std::abs(t.amplitude);
    }
    if (!(total < 1.0)) throw InvalidArgument("tail model: sum of |A| must be below 1");
}

ExponentialTailModel ExponentialTailModel::canonical() const {
    ExponentialTailModel m = *this;
    std::stable_sort(m.terms.begin(), m.terms.end(),
                     [](const auto &a, const auto &b) { return a.tau_ns < b.tau_ns; });
    return m;
}

double ExponentialTailModel::residual(double t) const {
    double r = 0.0;
    for (const auto &k : terms) r += k.amplitude * std::exp(-t / k.tau_ns);
    return r;
}

double ExponentialTailModel::window_average(double d, double w) const {
    if (w == 0.0) return residual(d);
    double r = 0.0;
    for (const auto &k : terms)
        r += k.amplitude * k.tau_ns / w * (std::exp(-d / k.tau_ns) - std::exp(-(d + w) / k.tau_ns));
    return r;
}

double ExponentialTailModel::edge_residual() const { return residual(0.0); }

ExponentialTailModel reference_flux_line_tail() {
    return ExponentialTailModel{{{-0.0174, 34.0}, {-0.0189, 170.0}, {-0.0158, 996.0}}};
}

namespace {

double uniform_rate(std::span<const double> t) {
    if (t.size() < 2) throw InvalidArgument("time grid needs at least 2 points");
    const double dt = (t.back() - t.front()) / double(t.size() - 1);
    if (!(dt > 0.0)) throw InvalidArgument("time grid must be increasing");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * std::max(1.0, dt))
            throw InvalidArgument("time grid must be uniform");
    return 1.0 / dt;
}

}  // namespace

Waveform distorted_step(const ExponentialTailModel &model, std::span<const double> t_grid,
                        double edge_ns) {
    model.validate();
    Waveform w{uniform_rate(t_grid), std::vector<double>(t_grid.size())};
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        w.samples[i] = t_grid[i] < edge_ns ? 1.0 : model.residual(t_grid[i] - edge_ns);
    return w;
}

Waveform distort(const Waveform &input, const ExponentialTailModel &model, InitialState init) {
    model.validate();
    Waveform out = input;
    if (input.samples.empty()) return out;
    const double period = input.period_ns();
    const std::size_t n = model.terms.size();
    std::vector<double> lambda(n), state(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) lambda[k] = std::exp(-period / model.terms[k].tau_ns);
    double prev = init == InitialState::Settled ? input.samples.front() : 0.0;
    for (double &v : out.samples) {
        const double x = v;
        double y = x;
        for (std::size_t k = 0; k < n; ++k) {
            state[k] = lambda[k] * state[k] + (x - prev);
            y -= model.terms[k].amplitude * state[k];
        }
        prev = x;
        v = y;
    }
    return out;
}

std::vector<TailProbeRecord> simulate_tail_probe(const ExponentialTailModel &model,
                                                 std::span<const double> delays,
                                                 double window) {
    if (!(window > 0.0)) throw InvalidArgument("simulate_tail_probe: probe window must be > 0");
    model.validate();
    std::vector<TailProbeRecord> out(delays.size());
    for (std::size_t i = 0; i < delays.size(); ++i)
        out[i] = {delays[i], model.window_average(delays[i], window)};
    return out;
}

std::vector<TailProbeRecord> phase_to_tail(std::span<const double> delays,
                                           std::span<const double> phase, double scale) {
    if (delays.size() != phase.size()) throw InvalidArgument("phase_to_tail: length mismatch");
    if (!(scale != 0.0) || !std::isfinite(scale))
        throw InvalidArgument("phase_to_tail: scale must be finite and non-zero");
    std::vector<TailProbeRecord> out(delays.size());
    for (std::size_t i = 0; i < delays.size(); ++i) out[i] = {delays[i], phase[i] / scale};
    return out;
}

namespace {

// Basis function for one term and its derivative with respect to ln(tau).
struct Basis {
    double g, dg_dlogtau;
};

Basis basis(double d, double tau, double w) {
    const double e0 = std::exp(-d / tau);
    if (w == 0.0) return {e0, d / tau * e0};
    const double e1 = std::exp(-(d + w) / tau);
    const double g = tau / w * (e0 - e1);
    return {g, g + (d * e0 - (d + w) * e1) / w};
}

// Amplitudes by linear least squares for fixed taus.
Eigen::VectorXd linear_amplitudes(std::span<const TailProbeRecord> data,
                                  const std::vector<double> &taus, double w) {
    const auto n = static_cast<Eigen::Index>(data.size());
    const auto m = static_cast<Eigen::Index>(taus.size());
    Eigen::MatrixXd a(n, m);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        y(i) = data[i].tail_over_ref;
        for (Eigen::Index k = 0; k < m; ++k) a(i, k) = basis(data[i].delay_ns, taus[k], w).g;
    }
    return a.colPivHouseholderQr().solve(y);
}

}  // namespace

MultiExpFit fit_multi_exponential(std::span<const TailProbeRecord> data, int n_terms,
                                  const MultiExpOptions &opt) {
    if (n_terms < 1 || n_terms > 4)
        throw InvalidArgument("fit_multi_exponential: n_terms must be in [1, 4]");
    if (data.size() < 4u * static_cast<std::size_t>(n_terms))
        throw InvalidArgument("fit_multi_exponential: need at least 4 points per term");
    if (opt.probe_window_ns < 0.0) throw InvalidArgument("fit_multi_exponential: window < 0");
    for (std::size_t i = 1; i < data.size(); ++i)
        if (!(data[i].delay_ns > data[i - 1].delay_ns))
            throw InvalidArgument("fit_multi_exponential: delays must be strictly increasing");

    const double w = opt.probe_window_ns;
    const double d_lo = data.front().delay_ns, d_hi = data.back().delay_ns;
    const double spacing = (d_hi - d_lo) / double(data.size() - 1);
    const double tau_lo = std::max({d_lo, spacing, 1e-3});
    const double tau_hi = std::max(d_hi, 2.0 * tau_lo);

    const int p = 2 * n_terms;
    lsq::Problem prob;
    prob.n_params = p;
    prob.n_residuals = static_cast<Eigen::Index>(data.size());
    // x = (A_0, ln tau_0, A_1, ln tau_1, ...)
    prob.residual = [&](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
        r.resize(prob.n_residuals);
        for (Eigen::Index i = 0; i < r.size(); ++i) {
            double m = 0.0;
            for (int k = 0; k < n_terms; ++k)
                m += x(2 * k) * basis(data[i].delay_ns, std::exp(x(2 * k + 1)), w).g;
            r(i) = m - data[i].tail_over_ref;
        }
    };
    prob.jacobian = [&](const Eigen::VectorXd &x, Eigen::MatrixXd &jac) {
        jac.resize(prob.n_residuals, p);
        for (Eigen::Index i = 0; i < jac.rows(); ++i)
            for (int k = 0; k < n_terms; ++k) {
                const Basis b = basis(data[i].delay_ns, std::exp(x(2 * k + 1)), w);
                jac(i, 2 * k) = b.g;
                jac(i, 2 * k + 1) = x(2 * k) * b.dg_dlogtau;
            }
    };

    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_lo = std::log(tau_lo), log_hi = std::log(tau_hi);

    lsq::Result best;
    double best_rss = std::numeric_limits<double>::infinity();
    int successes = 0;
    for (int s = 0; s < std::max(1, opt.starts); ++s) {
        std::vector<double> taus(n_terms);
        for (int k = 0; k < n_terms; ++k) {
            const double frac = s == 0 ? (k + 0.5) / n_terms : unit(rng);
            taus[k] = std::exp(log_lo + frac * (log_hi - log_lo));
        }
        std::sort(taus.begin(), taus.end());
        const Eigen::VectorXd amps = linear_amplitudes(data, taus, w);
        Eigen::VectorXd x0(p);
        for (int k = 0; k < n_terms; ++k) {
            x0(2 * k) = std::isfinite(amps(k)) ? amps(k) : 0.0;
            x0(2 * k + 1) = std::log(taus[k]);
        }
        lsq::Result r;
        try {
            r = lsq::solve(prob, x0);
        } catch (const Error &) {
            continue;
        }
        if (!r.converged) continue;
        ++successes;
        if (r.rss < best_rss) {
            best_rss = r.rss;
            best = r;
        }
    }
    if (successes == 0)
        throw FitFailure("fit_multi_exponential: no start converged",
                         std::numeric_limits<double>::infinity());

    MultiExpFit out;
    out.successful_starts = successes;
    out.residual_norm = std::sqrt(best.rss);
    std::vector<std::size_t> order(n_terms);
    for (int k = 0; k < n_terms; ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return best.x(2 * a + 1) < best.x(2 * b + 1); });
    for (std::size_t k : order) {
        const double tau = std::exp(best.x(2 * k + 1));
        out.model.terms.push_back({best.x(2 * k), tau});
        const bool have_cov = best.covariance.size() > 0;
        const auto i = static_cast<Eigen::Index>(2 * k);
        out.amplitude_sigma.push_back(have_cov ? std::sqrt(std::max(0.0, best.covariance(i, i))) : 0.0);
        out.tau_sigma.push_back(
            have_cov ? tau * std::sqrt(std::max(0.0, best.covariance(i + 1, i + 1))) : 0.0);
    }
    for (std::size_t k = 1; k < out.model.terms.size(); ++k)
        if (out.model.terms[k].tau_ns / out.model.terms[k - 1].tau_ns < 1.5) out.degenerate = true;
    return out;
}

SingleExpFit fit_single_exponential(std::span<const double> delays, std::span<const double> phase,
                                    double negligible_below_ns) {
    if (delays.size() != phase.size())
        throw InvalidArgument("fit_single_exponential: length mismatch");
    if (delays.size() < 6) throw InvalidArgument("fit_single_exponential: need at least 6 points");

    SingleExpFit out;
    if (std::all_of(phase.begin(), phase.end(), [](double v) { return v == 0.0; })) {
        out.tau_identifiable = false;
        out.tau_ns = std::numeric_limits<double>::quiet_NaN();
        out.negligible = true;
        return out;
    }

    std::vector<TailProbeRecord> data(delays.size());
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = {delays[i], phase[i]};
    std::sort(data.begin(), data.end(),
              [](const auto &a, const auto &b) { return a.delay_ns < b.delay_ns; });
    MultiExpFit fit;
    try {
        fit = fit_multi_exponential(data, 1, {});
    } catch (const FitFailure &e) {
        throw FitFailure(std::string("fit_single_exponential: ") + e.what(), e.best_residual);
    }
    out.amplitude = fit.model.terms[0].amplitude;
    out.tau_ns = fit.model.terms[0].tau_ns;
    out.amplitude_sigma = fit.amplitude_sigma[0];
    out.tau_sigma = fit.tau_sigma[0];
    out.residual_norm = fit.residual_norm;
    out.negligible = out.tau_ns < negligible_below_ns;
    return out;
}

}  // namespace fluxctl::distortion
