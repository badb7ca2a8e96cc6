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

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fluxctl/fluxonium.hpp"
#include "fluxctl/line_budget.hpp"
#include "fluxctl/transfer_function.hpp"
#include "fluxctl/waveform.hpp"

namespace fluxctl::dynamics {

/// The default is the reference qubit at half flux behind a -30 dB line and
/// a 92 MHz Gaussian channel.
struct DriveScenario {
    fluxonium::Params qubit{};
    line::LineModel line{2e-12, 50.0, -30.0, -130.0, 0.5};
    filters::TransferFunction channel = filters::GaussianLowpass{0.092};
    int levels = 4;
    double time_step_ns = 0.01;
    int spectrum_levels = fluxonium::kDefaultLevels;

    void validate() const;
    std::uint64_t hash() const;
};

struct EvolveOptions {
    /// Record populations every this many integration steps (0: final only).
    std::size_t record_every = 0;
    /// Propagate the full retained-level unitary instead of |0>.
    bool unitary = true;
};

struct SimOutcome {
    std::vector<double> times_ns;
    std::vector<std::vector<double>> populations;  // [record][level]
    Eigen::MatrixXcd final_unitary;                // empty unless requested
    Eigen::VectorXcd final_state;                  // evolved |0>
    double duration_ns = 0.0;
    std::uint64_t scenario_hash = 0;
    std::uint64_t seed = 0;
};

/// Closed-system propagation in the qubit eigenbasis with
/// H(t) = diag(E) - E_L dphi(t) Phi, by Strang splitting. The AWG waveform is
/// reconstructed band-limited on the integration grid, sampled at step
/// midpoints, after the line scale and channel response.
class Simulator {
  public:
    explicit Simulator(DriveScenario scenario);

    const DriveScenario &scenario() const { return sc_; }
    const fluxonium::EnergySpectrum &spectrum() const { return spec_; }
    double f01() const { return spec_.f01(); }
    double m01() const { return spec_.matrix_element(0, 1); }
    /// Integration steps per AWG sample; throws unless it is an integer.
    std::size_t steps_per_sample(double awg_rate_gsps) const;

    /// Phase drop at the qubit on step midpoints, radians.
    std::vector<double> qubit_flux(const Waveform &awg_volts) const;

    SimOutcome evolve(const Waveform &awg_volts, const EvolveOptions &opt = {}) const;
    SimOutcome evolve_flux(std::span<const double> dphi, const EvolveOptions &opt = {}) const;

    /// {0,1} block of u in the frame rotating at drive_ghz, t from waveform start.
    Eigen::Matrix2cd rotating_block(const Eigen::MatrixXcd &u, double drive_ghz,
                                    double duration_ns) const;

  private:
    DriveScenario sc_;
    fluxonium::EnergySpectrum spec_;
    Eigen::VectorXd energies_;   // retained levels, GHz
    Eigen::MatrixXd phi_vecs_;   // eigenvectors of the retained phase matrix
    Eigen::VectorXd phi_vals_;
};

struct GateFidelity {
    double fidelity = 0.0;
    double leakage = 0.0;
};

/// Average fidelity of the {0,1} block of `achieved` against `target`,
/// (Tr(M M^dagger) + |Tr M|^2) / 6 with M = target^dagger block, which is
/// (|Tr(U^dagger V)|^2 + 2)/6 for a unitary block. Leakage is
/// 1 - Tr(block^dagger block)/2. Throws if `achieved` is not unitary.
GateFidelity gate_fidelity(const Eigen::MatrixXcd &achieved, const Eigen::Matrix2cd &target);

/// As gate_fidelity after the best Z(a) block Z(b) correction, i.e. with
/// the phases a virtual-Z frame update absorbs.
GateFidelity frame_corrected_fidelity(const Eigen::MatrixXcd &achieved,
                                      const Eigen::Matrix2cd &target);

struct PulseShape {
    double duration_ns = 20.0;
    double margin_ns = 40.0;     // idle time before and after
    double awg_rate_gsps = 2.0;
    double g_max_db = 50.0;
    double window_cutoff_ghz = filters::kDefaultWindowCutoffGhz;
};

/// (1 - cos(2 pi t / T)) / 2 on [0, T], sampled at n / rate.
std::vector<double> cosine_envelope(double duration_ns, double rate_gsps);

/// amplitude * env(t - margin) * cos(2 pi f t - phase) for `pulses`
/// back-to-back copies, optionally pre-distorted with the bounded inverse
/// of the scenario channel at f_q = f01.
Waveform cosine_pulse(const Simulator &sim, double amplitude_v, double drive_ghz, double phase,
                      const PulseShape &shape, bool predistort, int pulses = 1);

/// Pre-distorts an AWG waveform for the scenario channel.
Waveform predistort(const Simulator &sim, const Waveform &w, const PulseShape &shape);

/// Peak voltage of a rotation by `angle` in the rotating-wave limit.
double rwa_amplitude(const Simulator &sim, double angle, const PulseShape &shape, bool predistort);

enum class Sweep { Amplitude, Duration };

struct RabiSpec {
    PulseShape shape;
    double amplitude_v = 0.0;  // used for duration sweeps
    double drive_ghz = 0.0;    // 0 selects f01
    double phase = 0.0;
};

struct RabiCurve {
    std::vector<double> grid;
    std::vector<double> excited_population;
};

RabiCurve rabi_experiment(const Simulator &sim, const RabiSpec &spec, std::span<const double> grid,
                          Sweep sweep, bool predistort);

struct CalibrationOptions {
    bool tune_frequency = true;
    int rounds = 3;
    double population_tol = 1e-5;
    /// Half-width of the drive-frequency search, GHz.
    double frequency_span_ghz = 0.008;
};

struct Calibration {
    double amplitude_v = 0.0;
    double drive_ghz = 0.0;
    double population = 0.0;  // excited population at the optimum
    PulseShape shape;
    bool predistort = true;
    int evaluations = 0;
};

/// Golden-section maximisation of the excited population after one pulse
/// (pi) or two back-to-back pulses (pi/2), alternating amplitude and drive
/// frequency so the Bloch-Siegert shift is absorbed.
Calibration calibrate_pi(const Simulator &sim, const PulseShape &shape, bool predistort,
                         const CalibrationOptions &opt = {});
Calibration calibrate_half_pi(const Simulator &sim, const PulseShape &shape, bool predistort,
                              const CalibrationOptions &opt = {});

/// Full retained-level unitary of one calibrated pulse with the given phase.
Eigen::MatrixXcd pulse_unitary(const Simulator &sim, const Calibration &cal, double phase);

}  // namespace fluxctl::dynamics
