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


#include "fluxctl/fluxonium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fluxctl/errors.hpp"
#include "fluxctl/parallel.hpp"
#include "fluxctl/units.hpp"

namespace fluxctl::fluxonium {
namespace {

double reduced_flux(double phi_ext) { return phi_ext - std::floor(phi_ext); }

// cos(x phi_hat) and sin(x phi_hat) with phi_hat = a + a^dagger, from the
// displacement operator D(i x) = exp(i x phi_hat):
//   <m|D|n> = sqrt(n!/m!) (i x)^(m-n) exp(-x^2/2) L_n^(m-n)(x^2),  m >= n.
// D is symmetric, so cos = Re D and sin = Im D are real symmetric matrices.
void displacement_parts(int n_basis, double x, Eigen::MatrixXd &cos_part,
                        Eigen::MatrixXd &sin_part) {
    cos_part.setZero(n_basis, n_basis);
    sin_part.setZero(n_basis, n_basis);
    const double y = x * x;
    const double log_x = std::log(std::abs(x));
    std::vector<double> lag(n_basis);
    for (int k = 0; k < n_basis; ++k) {
        // Generalized Laguerre L_n^(k)(y) for n = 0 .. n_basis-1-k.
        const int count = n_basis - k;
        lag[0] = 1.0;
        if (count > 1) lag[1] = 1.0 + k - y;
        for (int n = 1; n + 1 < count; ++n)
            lag[n + 1] = ((2.0 * n + 1.0 + k - y) * lag[n] - (n + k) * lag[n - 1]) / (n + 1.0);

        // i^k cycles through 1, i, -1, -i.
        const int phase = k % 4;
        for (int n = 0; n < count; ++n) {
            const int m = n + k;
            double log_pref = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)) - 0.5 * y;
            if (k > 0) log_pref += k * log_x;
            const double v = std::exp(log_pref) * lag[n];
            double re = 0.0, im = 0.0;
            switch (phase) {
                case 0: re = v; break;
                case 1: im = v; break;
                case 2: re = -v; break;
                default: im = -v; break;
            }
            cos_part(m, n) = cos_part(n, m) = re;
            sin_part(m, n) = sin_part(n, m) = im;
        }
    }
}

}  // namespace

void validate(const Params &p) {
    if (!(p.e_j >= 0.0) || !std::isfinite(p.e_j))
        throw InvalidArgument("fluxonium: e_j must be finite and non-negative");
    if (!(p.e_c > 0.0) || !std::isfinite(p.e_c))
        throw InvalidArgument("fluxonium: e_c must be positive");
    if (!(p.e_l > 0.0) || !std::isfinite(p.e_l))
        throw InvalidArgument("fluxonium: e_l must be positive");
    if (!std::isfinite(p.phi_ext)) throw InvalidArgument("fluxonium: phi_ext must be finite");
    if (p.basis_size < kMinBasisSize)
        throw InvalidArgument("fluxonium: basis_size " + std::to_string(p.basis_size) +
                              " is below the minimum of " + std::to_string(kMinBasisSize));
}

double plasma_frequency(const Params &p) { return std::sqrt(8.0 * p.e_l * p.e_c); }

double phase_zpf(const Params &p) { return std::pow(8.0 * p.e_c / p.e_l, 0.25) / std::sqrt(2.0); }

Eigen::MatrixXd build_hamiltonian(const Params &p) {
    validate(p);
    const int n = p.basis_size;
    const double omega = plasma_frequency(p);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) h(k, k) = omega * (k + 0.5);
    if (p.e_j == 0.0) return h;

    // cos(phi' + phi_e) = cos(phi') cos(phi_e) - sin(phi') sin(phi_e)
    Eigen::MatrixXd c, s;
    displacement_parts(n, phase_zpf(p), c, s);
    const double phi_e = units::two_pi * reduced_flux(p.phi_ext);
    h -= p.e_j * (std::cos(phi_e) * c - std::sin(phi_e) * s);
    return 0.5 * (h + h.transpose());
}

Eigen::MatrixXd phase_operator(const Params &p) {
    validate(p);
    const int n = p.basis_size;
    const double z = phase_zpf(p);
    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) phi(k, k + 1) = phi(k + 1, k) = z * std::sqrt(k + 1.0);
    return phi;
}

Eigensystem eigensystem(const Eigen::MatrixXd &h, int n_levels) {
    const auto dim = h.rows();
    if (h.cols() != dim || dim == 0) throw InvalidArgument("eigensystem: matrix must be square");
    if (n_levels < 1 || n_levels > dim / 3)
        throw InvalidArgument("eigensystem: n_levels " + std::to_string(n_levels) +
                              " exceeds basis_size/3 = " + std::to_string(dim / 3));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "eigensystem: solver did not converge (dimension " << dim
            << ", max |h| = " << h.cwiseAbs().maxCoeff() << ")";
        throw NumericalFailure(msg.str());
    }
    Eigensystem out;
    const auto &evals = solver.eigenvalues();
    out.ground_energy = evals(0);
    out.levels.resize(n_levels);
    for (int k = 0; k < n_levels; ++k) out.levels[k] = evals(k) - evals(0);
    out.levels[0] = 0.0;
    out.vectors = solver.eigenvectors().leftCols(n_levels);
    for (int k = 0; k < n_levels; ++k) {
        Eigen::Index idx = 0;
        out.vectors.col(k).cwiseAbs().maxCoeff(&idx);
        if (out.vectors(idx, k) < 0.0) out.vectors.col(k) *= -1.0;
    }
    return out;
}

double EnergySpectrum::matrix_element(int i, int j) const {
    const int n = static_cast<int>(levels.size());
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw InvalidArgument("matrix_element: level index out of range");
    return std::abs(phase_matrix(i, j));
}

EnergySpectrum spectrum(const Params &p, int n_levels) {
    const Eigensystem es = eigensystem(build_hamiltonian(p), n_levels);
    EnergySpectrum out;
    out.levels = es.levels;
    const Eigen::MatrixXd phi = phase_operator(p);
    out.phase_matrix = es.vectors.transpose() * phi * es.vectors;
    out.phase_matrix = 0.5 * (out.phase_matrix + out.phase_matrix.transpose()).eval();
    return out;
}

double phase_matrix_element(const Params &p, int i, int j, int n_levels) {
    if (i == j) throw InvalidArgument("phase_matrix_element: requires i != j");
    if (i < 0 || j < 0 || i >= n_levels || j >= n_levels)
        throw InvalidArgument("phase_matrix_element: level index out of range");
    return spectrum(p, n_levels).matrix_element(i, j);
}

std::vector<SweepRow> spectrum_sweep(const Params &p, std::span<const double> flux_grid,
                                     int n_levels) {
    if (flux_grid.empty()) throw InvalidArgument("spectrum_sweep: empty flux grid");
    validate(p);
    std::vector<SweepRow> rows(flux_grid.size());
    parallel_for(flux_grid.size(), [&](std::size_t i) {
        Params q = p;
        q.phi_ext = flux_grid[i];
        try {
            rows[i] = SweepRow{flux_grid[i], spectrum(q, n_levels)};
        } catch (const NumericalFailure &e) {
            throw NumericalFailure("spectrum_sweep row " + std::to_string(i) + ": " + e.what());
        }
    });
    return rows;
}

namespace {

double f01_at(const Params &p, double flux) {
    Params q = p;
    q.phi_ext = flux;
    return eigensystem(build_hamiltonian(q), 2).levels[1];
}

constexpr int kScanPoints = 200;

}  // namespace

std::pair<double, double> reset_band(const Params &p) {
    validate(p);
    const double lo = f01_at(p, 0.5);
    double hi = lo;
    double best = 0.5;
    for (int k = 0; k < kScanPoints; ++k) {
        const double flux = 0.5 * (kScanPoints - k) / kScanPoints;
        const double f = f01_at(p, flux);
        if (f > hi) {
            hi = f;
            best = flux;
        }
    }
    // Golden-section polish of the maximum around the best scan point.
    const double step = 0.5 / kScanPoints;
    double a = std::max(best - step, 1e-12), b = std::min(best + step, 0.5);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f01_at(p, c), fd = f01_at(p, d);
    for (int it = 0; it < 60 && b - a > 1e-10; ++it) {
        if (fc > fd) {
            b = d, d = c, fd = fc;
            c = b - g * (b - a);
            fc = f01_at(p, c);
        } else {
            a = c, c = d, fc = fd;
            d = a + g * (b - a);
            fd = f01_at(p, d);
        }
    }
    hi = std::max({hi, fc, fd});
    return {lo, hi};
}

ResetFlux find_reset_flux(const Params &p, double f_target_ghz) {
    validate(p);
    const auto [lo, hi] = reset_band(p);
    if (!(f_target_ghz >= lo - 1e-9 && f_target_ghz <= hi + 1e-9)) {
        std::ostringstream msg;
        msg.precision(9);
        msg << "find_reset_flux: target " << f_target_ghz << " GHz outside attainable band ["
            << lo << ", " << hi << "] GHz";
        throw NoSolution(msg.str(), lo, hi);
    }
    if (std::abs(f_target_ghz - lo) <= 1e-9) return ResetFlux{0.5, 0.0, lo};

    // Walk away from the sweet spot to the first bracketing interval.
    double prev_flux = 0.5, prev_f = lo;
    for (int k = 1; k <= kScanPoints; ++k) {
        const double flux = 0.5 * (kScanPoints - k) / kScanPoints;
        const double f = (k == kScanPoints) ? f01_at(p, 1e-9) : f01_at(p, flux);
        if ((prev_f - f_target_ghz) * (f - f_target_ghz) <= 0.0) {
            double a = flux, b = prev_flux, fa = f - f_target_ghz;
            for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = f01_at(p, m) - f_target_ghz;
                if (fm * fa <= 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            const double root = 0.5 * (a + b);
            return ResetFlux{root, 0.5 - root, f01_at(p, root)};
        }
        prev_flux = flux;
        prev_f = f;
    }
    // The target lies in the band but only touches the maximum tangentially.
    throw NoSolution("find_reset_flux: no bracketing interval found", lo, hi);
}

}  // namespace fluxctl::fluxonium
