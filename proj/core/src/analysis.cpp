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


#include "fluxctl/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "fluxctl/errors.hpp"
#include "fluxctl/least_squares.hpp"

namespace fluxctl::analysis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_series(std::span<const double> t, std::span<const double> y, std::size_t min_points,
                  const char *what) {
    if (t.size() != y.size()) throw InvalidArgument(std::string(what) + ": t and value lengths differ");
    if (t.size() < min_points)
        throw InvalidArgument(std::string(what) + ": need at least " + std::to_string(min_points) +
                              " points");
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!std::isfinite(t[i]) || !std::isfinite(y[i]))
            throw InvalidArgument(std::string(what) + ": non-finite sample at index " + std::to_string(i));
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw InvalidArgument(std::string(what) + ": times must increase");
}

// First time the data fall to 1/e of their initial height above the last value.
double crude_decay_time(std::span<const double> t, std::span<const double> y) {
    const double base = y.back();
    const double h = y.front() - base;
    if (!(std::abs(h) > 0)) return std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double u0 = (y[i - 1] - base) / h, u1 = (y[i] - base) / h;
        if (u1 <= 1.0 / std::exp(1.0)) {
            const double f = (u0 - 1.0 / std::exp(1.0)) / (u0 - u1);
            return t[i - 1] + std::clamp(f, 0.0, 1.0) * (t[i] - t[i - 1]) - t.front();
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double t1_shape(const RelaxationParams &p, double t) {
    return std::exp(-t / p.t_exp_us + p.n_qp * std::expm1(-t / p.t_qp_us));
}

}  // namespace

double relaxation_model(const RelaxationParams &p, double t) { return p.a * t1_shape(p, t) + p.b; }

double one_over_e_time(const RelaxationParams &p, double limit) {
    // t/T_exp + n_qp (1 - e^{-t/T_qp}) = 1; the left side increases with t.
    const auto h = [&](double t) { return t / p.t_exp_us - p.n_qp * std::expm1(-t / p.t_qp_us) - 1.0; };
    double lo = 0.0, hi = limit;
    if (!(h(hi) >= 0.0)) return std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

RelaxationFit fit_t1_double_exponential(std::span<const double> t, std::span<const double> y) {
    check_series(t, y, 10, "t1 fit");
    const double tc = crude_decay_time(t, y);
    if (!std::isfinite(tc) || tc <= 0.0)
        throw InvalidArgument("t1 fit: data never fall to 1/e of their initial height");
    if (t.back() - t.front() < std::log(100.0) * tc)
        throw InvalidArgument("t1 fit: time span covers less than two decades of decay");

    const Eigen::Index n = static_cast<Eigen::Index>(t.size());
    const double b0 = y.back(), a0 = y.front() - y.back();

    // x = (A, B, ln T_exp, ln T_qp, n_qp); the reduced problem drops the last two.
    const auto unpack = [](const Eigen::VectorXd &x) {
        RelaxationParams p;
        p.a = x(0), p.b = x(1), p.t_exp_us = std::exp(x(2));
        if (x.size() == 5) p.t_qp_us = std::exp(x(3)), p.n_qp = x(4);
        else p.t_qp_us = 1.0, p.n_qp = 0.0;
        return p;
    };
    const auto make = [&](Eigen::Index np) {
        lsq::Problem pr;
        pr.n_params = np;
        pr.n_residuals = n;
        pr.residual = [&, unpack](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
            const auto p = unpack(x);
            for (Eigen::Index i = 0; i < n; ++i) r(i) = relaxation_model(p, t[i]) - y[i];
        };
        pr.jacobian = [&, unpack](const Eigen::VectorXd &x, Eigen::MatrixXd &j) {
            const auto p = unpack(x);
            for (Eigen::Index i = 0; i < n; ++i) {
                const double g = t1_shape(p, t[i]);
                j(i, 0) = g;
                j(i, 1) = 1.0;
                j(i, 2) = p.a * g * t[i] / p.t_exp_us;
                if (x.size() == 5) {
                    const double e = std::exp(-t[i] / p.t_qp_us);
                    j(i, 3) = p.a * g * p.n_qp * e * t[i] / p.t_qp_us;
                    j(i, 4) = p.a * g * (e - 1.0);
                }
            }
        };
        return pr;
    };

    RelaxationFit fit;
    lsq::Result best;
    best.rss = kInf;
    bool full = false;

    const lsq::Problem p5 = make(5);
    for (double fe : {1.0, 2.0, 4.0})
        for (double fq : {0.1, 0.3, 1.0})
            for (double nq : {0.3, 1.0, 3.0}) {
                Eigen::VectorXd x0(5);
                x0 << a0, b0, std::log(fe * tc), std::log(fq * tc), nq;
                lsq::Result r;
                try {
                    r = lsq::solve(p5, x0);
                } catch (const Error &) {
                    continue;
                }
                if (!r.converged || r.x(4) < 0.0) continue;
                ++fit.successful_starts;
                if (r.rss < best.rss) best = r, full = true;
            }

    const lsq::Problem p3 = make(3);
    for (double fe : {1.0, 2.0}) {
        Eigen::VectorXd x0(3);
        x0 << a0, b0, std::log(fe * tc);
        lsq::Result r;
        try {
            r = lsq::solve(p3, x0);
        } catch (const Error &) {
            continue;
        }
        if (!r.converged) continue;
        ++fit.successful_starts;
        // Prefer the bound solution unless the free one is strictly better.
        if (r.rss <= best.rss * (1.0 + 1e-9) + 1e-300) best = r, full = false;
    }
    if (!std::isfinite(best.rss)) throw FitFailure("t1 fit: no start converged", kInf);

    fit.params = unpack(best.x);
    fit.rss = best.rss;
    fit.n_qp_at_bound = !full;
    fit.covariance = Eigen::MatrixXd::Zero(5, 5);
    if (best.covariance.size()) {
        Eigen::VectorXd d = Eigen::VectorXd::Ones(best.x.size());
        d(2) = fit.params.t_exp_us;
        if (full) d(3) = fit.params.t_qp_us;
        const Eigen::MatrixXd c = d.asDiagonal() * best.covariance * d.asDiagonal();
        fit.covariance.topLeftCorner(c.rows(), c.cols()) = c;
    }
    fit.t1_eff_us = one_over_e_time(fit.params, 10.0 * (t.back() - t.front()));
    fit.t1_eff_found = std::isfinite(fit.t1_eff_us);
    return fit;
}

double dephasing_model(const DephasingParams &p, double t) {
    const double re = std::isinf(p.t_phi_exp_us) ? 0.0 : 1.0 / p.t_phi_exp_us;
    const double rg = std::isinf(p.t_phi_g_us) ? 0.0 : 1.0 / (p.t_phi_g_us * p.t_phi_g_us);
    return p.c * std::exp(-t / (2.0 * p.t1_de_us) - re * t - rg * t * t) + p.d;
}

DephasingFit fit_dephasing_envelope(std::span<const double> t, std::span<const double> y,
                                    double t1_de) {
    if (!(t1_de > 0.0) || !std::isfinite(t1_de))
        throw InvalidArgument("dephasing fit: T1_DE must be positive and finite");
    check_series(t, y, 6, "dephasing fit");
    const double tc = crude_decay_time(t, y);
    if (!std::isfinite(tc) || tc <= 0.0)
        throw InvalidArgument("dephasing fit: envelope never falls to 1/e of its initial height");
    const Eigen::Index n = static_cast<Eigen::Index>(t.size());
    const double c0 = y.front() - y.back(), d0 = y.back();
    const double rate = std::max(1.0 / tc - 0.5 / t1_de, 1e-3 / tc);

    // x = (C, D, r_exp, r_g) or (C, D, r_g) with r_exp held at zero.
    const auto make = [&](bool with_exp) {
        lsq::Problem pr;
        pr.n_params = with_exp ? 4 : 3;
        pr.n_residuals = n;
        const auto rates = [with_exp](const Eigen::VectorXd &x) {
            return std::pair{with_exp ? x(2) : 0.0, with_exp ? x(3) : x(2)};
        };
        pr.residual = [&, rates](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
            const auto [re, rg] = rates(x);
            for (Eigen::Index i = 0; i < n; ++i)
                r(i) = x(0) * std::exp(-t[i] / (2 * t1_de) - re * t[i] - rg * t[i] * t[i]) + x(1) - y[i];
        };
        pr.jacobian = [&, rates, with_exp](const Eigen::VectorXd &x, Eigen::MatrixXd &j) {
            const auto [re, rg] = rates(x);
            for (Eigen::Index i = 0; i < n; ++i) {
                const double g = std::exp(-t[i] / (2 * t1_de) - re * t[i] - rg * t[i] * t[i]);
                j(i, 0) = g;
                j(i, 1) = 1.0;
                if (with_exp) {
                    j(i, 2) = -x(0) * g * t[i];
                    j(i, 3) = -x(0) * g * t[i] * t[i];
                } else {
                    j(i, 2) = -x(0) * g * t[i] * t[i];
                }
            }
        };
        return pr;
    };

    lsq::Result best;
    best.rss = kInf;
    bool with_exp = true;
    const lsq::Problem p4 = make(true);
    for (auto [fe, fg] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}, {0.2, 0.8}, {0.8, 0.2}}) {
        Eigen::VectorXd x0(4);
        x0 << c0, d0, fe * rate, fg * rate * rate;
        try {
            auto r = lsq::solve(p4, x0);
            if (r.converged && r.x(2) >= 0.0 && r.x(3) > 0.0 && r.rss < best.rss) best = r;
        } catch (const Error &) {
        }
    }
    const lsq::Problem p3 = make(false);
    {
        Eigen::VectorXd x0(3);
        x0 << c0, d0, rate * rate;
        try {
            auto r = lsq::solve(p3, x0);
            if (r.converged && r.x(2) > 0.0 && r.rss <= best.rss * (1.0 + 1e-9) + 1e-300)
                best = r, with_exp = false;
        } catch (const Error &) {
        }
    }
    if (!std::isfinite(best.rss))
        throw FitFailure("dephasing fit: no start converged with a positive Gaussian rate", kInf);

    DephasingFit fit;
    fit.rss = best.rss;
    fit.exp_rate_at_bound = !with_exp;
    const double re = with_exp ? best.x(2) : 0.0;
    const double rg = with_exp ? best.x(3) : best.x(2);
    fit.params = {best.x(0), best.x(1), t1_de, re > 0 ? 1.0 / re : kInf, 1.0 / std::sqrt(rg)};
    fit.covariance = Eigen::MatrixXd::Zero(4, 4);
    if (best.covariance.size()) {
        if (with_exp) {
            fit.covariance = best.covariance;
        } else {
            const std::array<int, 3> map{0, 1, 3};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) fit.covariance(map[i], map[j]) = best.covariance(i, j);
        }
        const double vg = fit.covariance(3, 3), ve = fit.covariance(2, 2);
        fit.t_phi_g_sigma_us = 0.5 * std::pow(rg, -1.5) * std::sqrt(std::max(vg, 0.0));
        fit.t_phi_exp_sigma_us = re > 0 ? std::sqrt(std::max(ve, 0.0)) / (re * re) : kInf;
        if (with_exp && ve > 0 && vg > 0) {
            fit.rate_correlation = fit.covariance(2, 3) / std::sqrt(ve * vg);
            fit.exchange_degenerate = std::abs(fit.rate_correlation) > 0.95;
        }
    }
    return fit;
}

RbFit fit_rb_decay(std::span<const double> m, std::span<const double> s) {
    if (m.size() != s.size()) throw InvalidArgument("rb fit: lengths and survivals differ in size");
    std::set<double> distinct(m.begin(), m.end());
    if (distinct.size() < 3) throw InvalidArgument("rb fit: need at least 3 distinct lengths");
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!(m[i] >= 0) || !std::isfinite(s[i])) throw InvalidArgument("rb fit: invalid data point");

    RbFit fit;
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    if (*hi - *lo < 1e-12) {
        if (std::abs(*lo - 1.0) > 1e-9)
            throw FitFailure("rb fit: survival is constant; decay parameter is unidentifiable", 0.0);
        fit.a = 0.5, fit.b = 0.5, fit.p = 1.0, fit.f_avg = 1.0;
        fit.amplitude_unidentifiable = true;
        return fit;
    }

    // For fixed p the model is linear in (A, B).
    struct Lin {
        double a, b, rss;
    };
    const auto linear = [&](double p) {
        Eigen::MatrixXd x(m.size(), 2);
        Eigen::VectorXd y(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) x(i, 0) = std::pow(p, m[i]), x(i, 1) = 1.0, y(i) = s[i];
        const Eigen::Vector2d c = x.colPivHouseholderQr().solve(y);
        return Lin{c(0), c(1), (x * c - y).squaredNorm()};
    };
    // Scan q = -ln p logarithmically.
    constexpr int kGrid = 400;
    const double qlo = std::log(1e-9), qhi = std::log(20.0);
    const auto q_at = [&](double u) { return std::exp(qlo + (qhi - qlo) * u); };
    int best_i = 0;
    double best_rss = kInf;
    for (int i = 0; i <= kGrid; ++i) {
        const double r = linear(std::exp(-q_at(double(i) / kGrid))).rss;
        if (r < best_rss) best_rss = r, best_i = i;
    }
    double ua = double(std::max(best_i - 1, 0)) / kGrid, ub = double(std::min(best_i + 1, kGrid)) / kGrid;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    const auto cost = [&](double u) { return linear(std::exp(-q_at(u))).rss; };
    for (int it = 0; it < 100 && ub - ua > 1e-15; ++it) {
        const double u1 = ub - g * (ub - ua), u2 = ua + g * (ub - ua);
        if (cost(u1) < cost(u2)) ub = u2;
        else ua = u1;
    }
    double p = std::exp(-q_at(0.5 * (ua + ub)));
    Lin l = linear(p);

    // Joint polish and covariance.
    lsq::Problem pr;
    pr.n_params = 3;
    pr.n_residuals = static_cast<Eigen::Index>(m.size());
    pr.residual = [&](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
        for (std::size_t i = 0; i < m.size(); ++i) r(i) = x(0) * std::pow(x(2), m[i]) + x(1) - s[i];
    };
    pr.jacobian = [&](const Eigen::VectorXd &x, Eigen::MatrixXd &j) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            j(i, 0) = std::pow(x(2), m[i]);
            j(i, 1) = 1.0;
            j(i, 2) = m[i] > 0 ? x(0) * m[i] * std::pow(x(2), m[i] - 1) : 0.0;
        }
    };
    Eigen::VectorXd x(3);
    x << l.a, l.b, p;
    try {
        const auto r = lsq::solve(pr, x);
        if (r.converged && r.x(2) > 0 && r.x(2) <= 1.0 && r.rss < l.rss) x = r.x, l.rss = r.rss;
    } catch (const Error &) {
    }
    if (!(x(2) > 0.0 && x(2) <= 1.0)) throw FitFailure("rb fit: p outside (0, 1]", l.rss);
    fit.a = x(0), fit.b = x(1), fit.p = x(2), fit.rss = l.rss;
    const Eigen::MatrixXd cov = lsq::covariance_at(pr, x);
    fit.p_sigma = cov.size() ? std::sqrt(std::max(cov(2, 2), 0.0)) : 0.0;
    fit.f_avg = 1.0 - (1.0 - fit.p) / 2.0;
    return fit;
}

InterleavedEstimate interleaved_fidelity(double p_ref, double p_int) {
    if (!(p_ref > 0.0 && p_ref <= 1.0)) throw InvalidArgument("interleaved: p_ref must lie in (0, 1]");
    if (!(p_int >= 0.0 && p_int <= 1.0)) throw InvalidArgument("interleaved: p_int must lie in [0, 1]");
    InterleavedEstimate e;
    e.error = (1.0 - p_int / p_ref) / 2.0;
    e.fidelity = 1.0 - e.error;
    if (p_int > p_ref) {
        e.consistent = false;
        e.warning = "p_int exceeds p_ref; the interleaved gate error is negative";
    }
    return e;
}

}  // namespace fluxctl::analysis
