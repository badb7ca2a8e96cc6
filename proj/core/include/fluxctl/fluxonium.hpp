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
#include <vector>

#include <Eigen/Dense>

namespace fluxctl::fluxonium {

/// Circuit energies as frequencies (E/h, GHz) and the external flux in
/// units of the flux quantum.
struct Params {
    double e_j = 4.5;
    double e_c = 1.1;
    double e_l = 0.5;
    double phi_ext = 0.5;
    int basis_size = 120;

    bool operator==(const Params &) const = default;
};

inline constexpr int kMinBasisSize = 20;
inline constexpr int kDefaultLevels = 6;

void validate(const Params &p);

/// Oscillator frequency sqrt(8 E_L E_C) of the LC part, GHz.
double plasma_frequency(const Params &p);

/// Zero-point phase amplitude (8 E_C / E_L)^{1/4} / sqrt(2).
double phase_zpf(const Params &p);

/// H0 = 4E_C n^2 + E_L/2 (phi - phi_ext)^2 - E_J cos(phi) in the oscillator
/// basis of the LC part, centred on phi_ext. Real symmetric.
Eigen::MatrixXd build_hamiltonian(const Params &p);

/// (phi - phi_ext) in the same basis; tridiagonal.
Eigen::MatrixXd phase_operator(const Params &p);

struct Eigensystem {
    double ground_energy = 0.0;  // absolute, GHz
    std::vector<double> levels;  // relative to ground, levels[0] == 0
    Eigen::MatrixXd vectors;     // basis_size x n_levels, columns normalised
};

/// Lowest n_levels eigenpairs. Each eigenvector's largest-magnitude
/// component is made positive so downstream matrix elements are reproducible.
Eigensystem eigensystem(const Eigen::MatrixXd &h, int n_levels);

struct EnergySpectrum {
    std::vector<double> levels;   // GHz relative to ground
    Eigen::MatrixXd phase_matrix; // <i|phi|j> between retained levels, signed

    double f01() const { return levels.at(1); }
    double transition(int i, int j) const { return levels.at(j) - levels.at(i); }
    /// |<i|phi|j>|
    double matrix_element(int i, int j) const;
};

EnergySpectrum spectrum(const Params &p, int n_levels = kDefaultLevels);

/// |<i|phi|j>| for i != j, both below n_levels.
double phase_matrix_element(const Params &p, int i, int j, int n_levels = kDefaultLevels);

struct SweepRow {
    double flux = 0.0;
    EnergySpectrum spectrum;
};

/// One spectrum per flux point, evaluated in parallel, returned in grid order.
std::vector<SweepRow> spectrum_sweep(const Params &p, std::span<const double> flux_grid,
                                     int n_levels = kDefaultLevels);

struct ResetFlux {
    double flux = 0.5;      // Phi0
    double excursion = 0.0; // 0.5 - flux
    double f01 = 0.0;       // at the returned flux
};

/// Attainable f01 band on (0, 0.5]: [f01(0.5), max f01].
std::pair<double, double> reset_band(const Params &p);

/// Flux in (0, 0.5] closest to the sweet spot where f01 equals f_target.
ResetFlux find_reset_flux(const Params &p, double f_target_ghz);

}  // namespace fluxctl::fluxonium
