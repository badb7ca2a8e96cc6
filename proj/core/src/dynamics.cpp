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


#include "fluxctl/dynamics.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fluxctl/errors.hpp"
#include "fluxctl/parallel.hpp"
#include "fluxctl/pulse_program.hpp"
#include "fluxctl/spectral.hpp"
#include "fluxctl/units.hpp"

namespace fluxctl::dynamics {

using cplx = std::complex<double>;

void DriveScenario::validate() const {
    fluxonium::validate(qubit);
    line.validate();
    if (levels < 2) throw InvalidArgument("scenario: levels must be >= 2");
    if (spectrum_levels < levels) throw InvalidArgument("scenario: levels exceed spectrum_levels");
    if (!(time_step_ns > 0.0) || !std::isfinite(time_step_ns))
        throw InvalidArgument("scenario: time_step must be positive");
}

std::uint64_t DriveScenario::hash() const {
    // FNV-1a over the numeric fields.
    std::uint64_t h = 1469598103934665603ull;
    const auto mix = [&](double v) {
        unsigned char b[sizeof v];
        std::memcpy(b, &v, sizeof v);
        for (unsigned char c : b) h = (h ^ c) * 1099511628211ull;
    };
    for (double v : {qubit.e_j, qubit.e_c, qubit.e_l, qubit.phi_ext, double(qubit.basis_size),
                     line.mutual_inductance_h, line.impedance_ohm, line.attenuation_db,
                     line.awg_noise_dbm_per_hz, line.awg_vmax, double(levels), time_step_ns,
                     double(spectrum_levels), double(channel.kind().index())})
        mix(v);
    for (double f : {0.0, 0.05, 0.1, 0.2, 0.5, 1.0}) {
        const cplx v = channel(f);
        mix(v.real());
        mix(v.imag());
    }
    return h;
}

Simulator::Simulator(DriveScenario scenario) : sc_(std::move(scenario)) {
    sc_.validate();
    spec_ = fluxonium::spectrum(sc_.qubit, sc_.spectrum_levels);
    const double f01 = spec_.f01();
    if (sc_.time_step_ns > 1.0 / (20.0 * f01)) {
        std::ostringstream msg;
        msg << "scenario: time_step " << sc_.time_step_ns << " ns exceeds 1/(20 f01) = "
            << 1.0 / (20.0 * f01) << " ns; use a smaller step";
        throw NumericalFailure(msg.str());
    }
    const int l = sc_.levels;
    energies_.resize(l);
    for (int k = 0; k < l; ++k) energies_(k) = spec_.levels[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec_.phase_matrix.topLeftCorner(l, l));
    if (es.info() != Eigen::Success) throw NumericalFailure("simulator: phase operator eigensolve failed");
    phi_vals_ = es.eigenvalues();
    phi_vecs_ = es.eigenvectors();
}

std::size_t Simulator::steps_per_sample(double rate) const {
    if (!(rate > 0.0)) throw InvalidArgument("simulator: AWG sample rate must be positive");
    const double r = 1.0 / (rate * sc_.time_step_ns);
    const double n = std::round(r);
    if (n < 1 || std::abs(r - n) > 1e-9 * n)
        throw InvalidArgument("simulator: AWG sample period is not a whole number of time steps");
    return static_cast<std::size_t>(n);
}

std::vector<double> Simulator::qubit_flux(const Waveform &awg) const {
    const std::size_t up = steps_per_sample(awg.sample_rate_gsps);
    const double scale = sc_.line.phase_per_volt();
    std::vector<double> x(awg.samples);
    for (double &v : x) v *= scale;
    spectral::FilterOptions fo;
    fo.pad_factor = 4;
    fo.upsample = up;
    fo.delay_ns = -0.5 * sc_.time_step_ns;
    const auto &ch = sc_.channel;
    return spectral::filter_real(x, awg.sample_rate_gsps, [&](double f) { return ch(f); }, fo);
}

SimOutcome Simulator::evolve(const Waveform &awg, const EvolveOptions &opt) const {
    return evolve_flux(qubit_flux(awg), opt);
}

SimOutcome Simulator::evolve_flux(std::span<const double> dphi, const EvolveOptions &opt) const {
    const int l = sc_.levels;
    const double dt = sc_.time_step_ns;
    const double el = sc_.qubit.e_l;

    Eigen::VectorXcd half(l), full(l);
    for (int k = 0; k < l; ++k) {
        half(k) = std::polar(1.0, -units::pi * energies_(k) * dt);
        full(k) = half(k) * half(k);
    }
    const Eigen::MatrixXcd q = phi_vecs_.cast<cplx>();
    const Eigen::MatrixXcd m = q.adjoint() * full.asDiagonal() * q;

    // Work in the phase-operator eigenbasis: state = Q^T Hh psi0.
    const int cols = opt.unitary ? l : 1;
    Eigen::MatrixXcd st(l, cols);
    if (opt.unitary)
        st = q.adjoint() * half.asDiagonal();
    else
        st = q.adjoint().col(0) * half(0);

    SimOutcome out;
    out.scenario_hash = sc_.hash();
    out.duration_ns = double(dphi.size()) * dt;

    const auto record = [&](std::size_t step) {
        const Eigen::VectorXcd psi = q * st.col(0);
        std::vector<double> pops(l);
        for (int k = 0; k < l; ++k) pops[k] = std::norm(psi(k));
        out.times_ns.push_back(double(step) * dt);
        out.populations.push_back(std::move(pops));
    };

    Eigen::VectorXcd lam(l);
    Eigen::MatrixXcd tmp(l, cols);
    for (std::size_t j = 0; j < dphi.size(); ++j) {
        if (j > 0) {
            tmp.noalias() = m * st;
            st.swap(tmp);
        }
        const double w = units::two_pi * el * dphi[j] * dt;
        for (int k = 0; k < l; ++k) lam(k) = std::polar(1.0, w * phi_vals_(k));
        st = lam.asDiagonal() * st;
        if (opt.record_every && (j + 1) % opt.record_every == 0) {
            // Populations are blind to the pending diagonal half step.
            record(j + 1);
        }
    }
    const Eigen::MatrixXcd final_state = half.asDiagonal() * (q * st);
    if (opt.unitary) {
        // With no steps the product above still carries a full free step.
        out.final_unitary = dphi.empty() ? Eigen::MatrixXcd::Identity(l, l) : final_state;
        const double err = (out.final_unitary.adjoint() * out.final_unitary -
                            Eigen::MatrixXcd::Identity(l, l)).cwiseAbs().maxCoeff();
        if (err > 1e-8)
            throw NumericalFailure("evolve: propagator lost unitarity (" + std::to_string(err) +
                                   "); reduce time_step");
        out.final_state = out.final_unitary.col(0);
    } else {
        out.final_state = dphi.empty() ? Eigen::VectorXcd(Eigen::VectorXcd::Unit(l, 0))
                                       : Eigen::VectorXcd(final_state.col(0));
        const double drift = std::abs(out.final_state.squaredNorm() - 1.0);
        if (drift > 1e-8)
            throw NumericalFailure("evolve: norm drift " + std::to_string(drift) + "; reduce time_step");
    }
    if (out.populations.empty() || out.times_ns.back() != out.duration_ns) {
        std::vector<double> pops(l);
        for (int k = 0; k < l; ++k) pops[k] = std::norm(out.final_state(k));
        out.times_ns.push_back(out.duration_ns);
        out.populations.push_back(std::move(pops));
    }
    return out;
}

Eigen::Matrix2cd Simulator::rotating_block(const Eigen::MatrixXcd &u, double f, double t) const {
    Eigen::Matrix2cd b = u.topLeftCorner(2, 2);
    b.row(1) *= std::polar(1.0, units::two_pi * f * t);
    return b;
}

namespace {

void check_unitary(const Eigen::MatrixXcd &u) {
    if (u.rows() != u.cols() || u.rows() < 2)
        throw InvalidArgument("gate_fidelity: achieved must be square with dimension >= 2");
    const double err =
        (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (err > 1e-6)
        throw NumericalFailure("gate_fidelity: achieved operator is not unitary (" +
                               std::to_string(err) + ")");
}

GateFidelity block_fidelity(const Eigen::Matrix2cd &b, const Eigen::Matrix2cd &target) {
    const Eigen::Matrix2cd m = target.adjoint() * b;
    GateFidelity g;
    g.fidelity = ((m * m.adjoint()).trace().real() + std::norm(m.trace())) / 6.0;
    g.leakage = std::max(0.0, 1.0 - (b.adjoint() * b).trace().real() / 2.0);
    return g;
}

}  // namespace

GateFidelity gate_fidelity(const Eigen::MatrixXcd &achieved, const Eigen::Matrix2cd &target) {
    check_unitary(achieved);
    return block_fidelity(achieved.topLeftCorner(2, 2), target);
}

GateFidelity frame_corrected_fidelity(const Eigen::MatrixXcd &achieved,
                                      const Eigen::Matrix2cd &target) {
    check_unitary(achieved);
    const Eigen::Matrix2cd b = achieved.topLeftCorner(2, 2);
    // Tr(T^dag Z(a) B Z(b)) = c00 + c01 e^{ib} + e^{ia} (c10 + c11 e^{ib})
    const cplx c00 = std::conj(target(0, 0)) * b(0, 0), c01 = std::conj(target(0, 1)) * b(0, 1);
    const cplx c10 = std::conj(target(1, 0)) * b(1, 0), c11 = std::conj(target(1, 1)) * b(1, 1);
    const auto score = [&](double bb) {
        const cplx e = std::polar(1.0, bb);
        return std::abs(c00 + c01 * e) + std::abs(c10 + c11 * e);
    };
    constexpr int kGrid = 720;
    double best_b = 0.0, best = -1.0;
    for (int i = 0; i < kGrid; ++i) {
        const double x = units::two_pi * i / kGrid;
        if (double s = score(x); s > best) best = s, best_b = x;
    }
    double lo = best_b - units::two_pi / kGrid, hi = best_b + units::two_pi / kGrid;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        if (score(x1) > score(x2)) hi = x2;
        else lo = x1;
    }
    const double bz = 0.5 * (lo + hi);
    const cplx e = std::polar(1.0, bz);
    const double az = std::arg(c00 + c01 * e) - std::arg(c10 + c11 * e);
    Eigen::Matrix2cd zb = Eigen::Matrix2cd::Identity(), za = Eigen::Matrix2cd::Identity();
    zb(1, 1) = e;
    za(1, 1) = std::polar(1.0, az);
    GateFidelity corrected = block_fidelity(za * b * zb, target);
    const GateFidelity plain = block_fidelity(b, target);
    return corrected.fidelity >= plain.fidelity ? corrected : plain;
}

std::vector<double> cosine_envelope(double duration_ns, double rate) {
    const auto n = pulsec::samples_for(duration_ns, rate, "cosine envelope");
    if (n < 4) throw InvalidArgument("cosine envelope: duration must span at least 4 samples");
    std::vector<double> env(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k)
        env[k] = 0.5 * (1.0 - std::cos(units::two_pi * double(k) / double(n)));
    return env;
}

namespace {

filters::TransferFunction inverse_for(const Simulator &sim, const PulseShape &shape) {
    return filters::bounded_inverse(sim.scenario().channel, sim.f01(), shape.g_max_db,
                                    shape.window_cutoff_ghz);
}

}  // namespace

Waveform predistort(const Simulator &sim, const Waveform &w, const PulseShape &shape) {
    return filters::apply_transfer(w, inverse_for(sim, shape), filters::ApplyMode::Predistort);
}

Waveform cosine_pulse(const Simulator &sim, double amplitude, double drive, double phase,
                      const PulseShape &shape, bool pre, int pulses) {
    if (pulses < 1) throw InvalidArgument("cosine_pulse: need at least one pulse");
    const double rate = shape.awg_rate_gsps;
    const auto env = cosine_envelope(shape.duration_ns, rate);
    const auto margin = pulsec::samples_for(shape.margin_ns, rate, "pulse margin");
    const auto len = static_cast<std::int64_t>(env.size());
    Waveform w{rate, std::vector<double>(static_cast<std::size_t>(2 * margin + pulses * len), 0.0)};
    for (int p = 0; p < pulses; ++p)
        for (std::int64_t k = 0; k < len; ++k) {
            const std::int64_t n = margin + p * len + k;
            const double t = double(n) / rate;
            w.samples[n] = amplitude * env[k] * std::cos(units::two_pi * drive * t - phase);
        }
    return pre ? predistort(sim, w, shape) : w;
}

double rwa_amplitude(const Simulator &sim, double angle, const PulseShape &shape, bool pre) {
    const double f = sim.f01();
    cplx h = sim.scenario().channel(f);
    if (pre) h *= inverse_for(sim, shape)(f);
    const double dphi = angle / (units::pi * sim.scenario().qubit.e_l * sim.m01() * shape.duration_ns);
    return dphi / (sim.scenario().line.phase_per_volt() * std::abs(h));
}

RabiCurve rabi_experiment(const Simulator &sim, const RabiSpec &spec, std::span<const double> grid,
                          Sweep sweep, bool pre) {
    if (grid.empty()) throw InvalidArgument("rabi_experiment: empty grid");
    const double drive = spec.drive_ghz > 0 ? spec.drive_ghz : sim.f01();
    RabiCurve curve{std::vector<double>(grid.begin(), grid.end()), std::vector<double>(grid.size())};
    parallel_for(grid.size(), [&](std::size_t i) {
        PulseShape shape = spec.shape;
        double amp = spec.amplitude_v;
        if (sweep == Sweep::Amplitude)
            amp = grid[i];
        else
            shape.duration_ns = grid[i];
        const Waveform w = cosine_pulse(sim, amp, drive, spec.phase, shape, pre);
        const SimOutcome o = sim.evolve(w, {0, false});
        curve.excited_population[i] = std::norm(o.final_state(1));
    });
    return curve;
}

namespace {

// Coarse scan then golden-section refinement of a maximum on [lo, hi].
template <typename F>
std::pair<double, double> maximise(F &&f, double lo, double hi, double xtol, bool require_interior,
                                   int &evals, const char *what) {
    constexpr int kScan = 11;
    double best_x = lo, best_y = -1.0;
    int best_i = 0;
    for (int i = 0; i < kScan; ++i) {
        const double x = lo + (hi - lo) * i / (kScan - 1);
        const double y = f(x);
        ++evals;
        if (y > best_y) best_y = y, best_x = x, best_i = i;
    }
    if (require_interior && (best_i == 0 || best_i == kScan - 1))
        throw NoSolution(std::string("calibration: ") + what +
                             " response is monotone over the search bracket",
                         lo, hi);
    const double step = (hi - lo) / (kScan - 1);
    double a = best_x - step, b = best_x + step;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    evals += 2;
    while (b - a > xtol) {
        if (fc > fd) {
            b = d, d = c, fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    if (fc > fd) return {c, fc};
    return {d, fd};
}

Calibration calibrate(const Simulator &sim, const PulseShape &shape, bool pre,
                      const CalibrationOptions &opt, double angle, int pulses) {
    Calibration cal;
    cal.shape = shape;
    cal.predistort = pre;
    cal.drive_ghz = sim.f01();
    const double a0 = rwa_amplitude(sim, angle, shape, pre);
    cal.amplitude_v = a0;
    const auto population = [&](double amp, double drive) {
        const Waveform w = cosine_pulse(sim, amp, drive, 0.0, shape, pre, pulses);
        return std::norm(sim.evolve(w, {0, false}).final_state(1));
    };
    double a_lo = 0.5 * a0, a_hi = 1.5 * a0;
    double f_lo = cal.drive_ghz - opt.frequency_span_ghz, f_hi = cal.drive_ghz + opt.frequency_span_ghz;
    double prev = -1.0;
    for (int r = 0; r < std::max(1, opt.rounds); ++r) {
        const auto amp_at = [&](double a) { return population(a, cal.drive_ghz); };
        std::pair<double, double> found;
        // Later rounds start from a narrow bracket; widen it if the drive
        // frequency update moved the optimum outside.
        for (int widen = 0;; ++widen) {
            try {
                found = maximise(amp_at, a_lo, a_hi, 1e-8 * a0, true, cal.evaluations, "amplitude");
                break;
            } catch (const NoSolution &) {
                if (r == 0 || widen == 3) throw;
                const double mid = 0.5 * (a_lo + a_hi), half = a_hi - a_lo;
                a_lo = std::max(0.0, mid - half), a_hi = mid + half;
            }
        }
        auto [amp, pop] = found;
        cal.amplitude_v = amp;
        cal.population = pop;
        if (opt.tune_frequency) {
            auto [fd, popf] = maximise([&](double f) { return population(cal.amplitude_v, f); },
                                       f_lo, f_hi, 1e-8, false, cal.evaluations, "frequency");
            cal.drive_ghz = fd;
            cal.population = popf;
        } else {
            break;
        }
        if (std::abs(cal.population - prev) < 0.1 * opt.population_tol) break;
        prev = cal.population;
        const double da = 0.05 * cal.amplitude_v, df = 0.25 * (f_hi - f_lo) / 2;
        a_lo = cal.amplitude_v - da, a_hi = cal.amplitude_v + da;
        f_lo = cal.drive_ghz - df, f_hi = cal.drive_ghz + df;
    }
    if (cal.population < 1.0 - 0.5 && angle > 0)
        throw NoSolution("calibration: population transfer stays below one half", 0.0, 1.0);
    return cal;
}

}  // namespace

Calibration calibrate_pi(const Simulator &sim, const PulseShape &shape, bool pre,
                         const CalibrationOptions &opt) {
    return calibrate(sim, shape, pre, opt, units::pi, 1);
}

Calibration calibrate_half_pi(const Simulator &sim, const PulseShape &shape, bool pre,
                              const CalibrationOptions &opt) {
    return calibrate(sim, shape, pre, opt, units::pi / 2, 2);
}

Eigen::MatrixXcd pulse_unitary(const Simulator &sim, const Calibration &cal, double phase) {
    const Waveform w = cosine_pulse(sim, cal.amplitude_v, cal.drive_ghz, phase, cal.shape, cal.predistort);
    return sim.evolve(w, {0, true}).final_unitary;
}

}  // namespace fluxctl::dynamics
