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

#include <functional>

#include <Eigen/Dense>

namespace fluxctl::lsq {

/// r(x) and its Jacobian dr/dx. Either callback may throw to abort.
struct Problem {
    Eigen::Index n_params = 0;
    Eigen::Index n_residuals = 0;
    std::function<void(const Eigen::VectorXd &x, Eigen::VectorXd &r)> residual;
    std::function<void(const Eigen::VectorXd &x, Eigen::MatrixXd &jac)> jacobian;
};

struct Options {
    int max_iterations = 500;
    double xtol = 1e-12;
    double gtol = 1e-12;
    double ftol = 0.0;
};

struct Result {
    Eigen::VectorXd x;
    Eigen::VectorXd residual;
    double rss = 0.0;
    /// s^2 (J^T J)^{-1}, s^2 = rss / (n - p); empty if n <= p.
    Eigen::MatrixXd covariance;
    bool converged = false;
    int iterations = 0;
};

/// Trust-region Levenberg-Marquardt (GSL multifit_nlinear).
Result solve(const Problem &problem, const Eigen::VectorXd &x0, const Options &opt = {});

/// Covariance estimate at x without iterating.
Eigen::MatrixXd covariance_at(const Problem &problem, const Eigen::VectorXd &x);

}  // namespace fluxctl::lsq
