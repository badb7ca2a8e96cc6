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

#include <span>
#include <string>

#include <Eigen/Dense>

namespace fluxctl::analysis {

// Times in microseconds throughout.

struct RelaxationParams {
    double a = 1.0;
    double b = 0.0;
    double t_exp_us = 100.0;
    double t_qp_us = 10.0;
    double n_qp = 0.0;
};

double relaxation_model(const RelaxationParams &p, double t_us);

/// 1/e crossing of the fitted curve above baseline, by bisection on
/// [0, limit_us]. Returns NaN when the curve does not get there.
double one_over_e_time(const RelaxationParams &p, double limit_us);

struct RelaxationFit {
    RelaxationParams params;
    double t1_eff_us = 0.0;
    bool t1_eff_found = false;
    /// n_qp held at zero (T_qp then carries no information).
    bool n_qp_at_bound = false;
    /// Order: A, B, T_exp, T_qp, n_qp.
    Eigen::MatrixXd covariance;
    double rss = 0.0;
    int successful_starts = 0;
};

RelaxationFit fit_t1_double_exponential(std::span<const double> t_us, std::span<const double> p_e);

struct DephasingParams {
    double c = 1.0;
    double d = 0.0;
    double t1_de_us = 100.0;
    double t_phi_exp_us = 100.0;  // may be +inf
    double t_phi_g_us = 100.0;
};

double dephasing_model(const DephasingParams &p, double t_us);

struct DephasingFit {
    DephasingParams params;
    double t_phi_g_sigma_us = 0.0;
    double t_phi_exp_sigma_us = 0.0;
    bool exp_rate_at_bound = false;
    /// |corr(exp rate, Gaussian rate)| > 0.95.
    bool exchange_degenerate = false;
    double rate_correlation = 0.0;
    /// Order: C, D, 1/T_phi_exp, 1/T_phi_g^2.
    Eigen::MatrixXd covariance;
    double rss = 0.0;
};

DephasingFit fit_dephasing_envelope(std::span<const double> t_us, std::span<const double> env,
                                    double t1_de_us);

struct RbFit {
    double a = 0.0;
    double b = 0.0;
    double p = 1.0;
    double p_sigma = 0.0;
    double f_avg = 1.0;
    /// Constant unit survival: p = 1 with A, B split by convention.
    bool amplitude_unidentifiable = false;
    double rss = 0.0;
};

/// Fits survival = A p^m + B over all (m, survival) pairs.
RbFit fit_rb_decay(std::span<const double> lengths, std::span<const double> survivals);

struct InterleavedEstimate {
    double fidelity = 1.0;
    double error = 0.0;
    /// False when p_int > p_ref; error is then negative and reported as is.
    bool consistent = true;
    std::string warning;
};

InterleavedEstimate interleaved_fidelity(double p_ref, double p_int);

}  // namespace fluxctl::analysis
