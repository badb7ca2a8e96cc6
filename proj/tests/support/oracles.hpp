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
#include <vector>

#include <Eigen/Dense>

namespace fluxctl::oracle {

/// Composite Simpson rule with n (even) intervals.
double simpson(const std::function<double(double)> &f, double a, double b, int n = 2000);

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)> &f, double lo, double hi, double tol = 1e-13);

/// Classical RK4 on i d/dt psi = 2 pi H(t) psi with H in GHz and t in ns.
Eigen::VectorXcd rk4_schrodinger(const std::function<Eigen::MatrixXcd(double)> &h,
                                 Eigen::VectorXcd psi, double t0, double t1, int steps);

/// Dense real-symmetric eigenvalues in ascending order (Jacobi sweeps).
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, int sweeps = 100);

}  // namespace fluxctl::oracle
