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


// One line per acceptance criterion: PASS/FAIL, measured values, runtime.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "charge_basis.hpp"
#include "oracles.hpp"
#include "fluxctl/analysis.hpp"
#include "fluxctl/clifford.hpp"
#include "fluxctl/devices.hpp"
#include "fluxctl/distortion.hpp"
#include "fluxctl/dynamics.hpp"
#include "fluxctl/fir.hpp"
#include "fluxctl/fluxonium.hpp"
#include "fluxctl/gaussian_mixture.hpp"
#include "fluxctl/iir.hpp"
#include "fluxctl/io.hpp"
#include "fluxctl/line_budget.hpp"
#include "fluxctl/pulse_compiler.hpp"
#include "fluxctl/rb.hpp"

using namespace fluxctl;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const char *name, double budget_s, const std::function<void(Outcome &)> &body) {
    Outcome o;
    o.detail.precision(6);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception &e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && s > budget_s) {
        o.pass = false;
        o.detail << " [failed: runtime over " << budget_s << " s]";
    }
    if (!o.pass) ++failures;
    std::printf("%s C%-2d %-32s %7.2fs %s\n", o.pass ? "PASS" : "FAIL", id, name, s, o.detail.str().c_str());
    std::fflush(stdout);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string read_golden(const char *name) {
    std::ifstream in(std::string(FLUXCTL_TEST_DIR "/golden/") + name);
    std::string s;
    in >> s;
    return s;
}

std::string file_sha(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return io::sha256_hex(ss.str());
}

std::vector<double> mixture(std::uint64_t seed, int n, double w, double sep) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n);
    for (auto &v : x) v = g(rng) + (u(rng) < w ? sep : 0.0);
    return x;
}

}  // namespace

int main() {
    criterion(1, "spectrum oracle equivalence", 5.0, [](Outcome &o) {
        std::vector<fluxonium::Params> sets{devices::reference_circuit()};
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> ej(2, 8), ec(0.8, 1.5), el(0.3, 1.0), phi(0, 1);
        for (int i = 0; i < 10; ++i) sets.push_back({ej(rng), ec(rng), el(rng), phi(rng), 120});
        double worst = 0.0;
        for (const auto &p : sets) {
            const auto a = fluxonium::spectrum(p, 4);
            const auto b = oracle::charge_basis_spectrum(p.e_j, p.e_c, p.e_l, p.phi_ext);
            worst = std::max({worst, rel(a.f01(), b.levels[1]), rel(a.matrix_element(0, 1), b.phi01)});
        }
        const double f = fluxonium::spectrum(devices::reference_circuit()).f01();
        o.detail << "max rel diff " << worst << " over " << sets.size() << " sets; f01(0.5)=" << f << " GHz";
        o.check(worst < 1e-4, "agreement 1e-4");
        o.check(f >= 0.2 && f <= 0.4, "f01 in 0.2-0.4 GHz");
    });

    criterion(2, "harmonic limit", 0, [](Outcome &o) {
        fluxonium::Params p;
        p.e_j = 0.0;
        const auto s = fluxonium::spectrum(p, 4);
        const double w = std::sqrt(8 * p.e_c * p.e_l);
        double worst = 0.0;
        for (int k = 1; k < 4; ++k) worst = std::max(worst, rel(s.levels[k] - s.levels[k - 1], w));
        o.detail << "spacing " << s.levels[1] << " GHz vs " << w << ", max rel " << worst;
        o.check(worst < 1e-6, "1e-6 relative");
        o.check(std::abs(w - 2.0976) < 5e-5, "2.0976 GHz");
    });

    criterion(3, "tradeoff regimes", 1.0, [](Outcome &o) {
        std::vector<double> grid;
        for (int a = -80; a <= -20; ++a) grid.push_back(a);
        const auto table = line::tradeoff_sweep(fluxonium::Params{}, line::LineModel{}, grid);
        std::vector<double> rabi, t1;
        double min_t1 = INFINITY, crossover = NAN, best_dc = 0.0;
        for (const auto &pt : table.points) {
            rabi.push_back(pt.rabi_mhz);
            t1.push_back(pt.t1_line.t1_us);
            if (pt.attenuation_db <= -50) min_t1 = std::min(min_t1, pt.t1_line.t1_us);
            if (pt.attenuation_db >= -30) best_dc = std::max(best_dc, pt.max_dc_excursion_phi0);
        }
        // Attenuation at which T1_line = 100 us; T1 scales as alpha^-2.
        const auto &ref = table.points[30];
        crossover = ref.attenuation_db + 10.0 * std::log10(ref.t1_line.t1_us / 100.0);
        const double s_rabi = line::loglog_slope(grid, rabi), s_t1 = line::loglog_slope(grid, t1);
        o.detail << "min T1_line on [-80,-50] dB " << min_t1 << " us (100 us crossover at " << crossover
                 << " dB); max dc on [-30,-20] dB " << best_dc << " Phi0; slopes " << s_rabi << ", " << s_t1;
        o.check(min_t1 > 100.0, "T1_line > 100 us on [-80,-50] dB");
        o.check(best_dc >= 0.3, "dc excursion >= 0.3");
        o.check(std::abs(s_rabi - 1.0) < 1e-6 && std::abs(s_t1 + 2.0) < 1e-6, "slopes");
    });

    criterion(4, "flat-band identity", 0, [](Outcome &o) {
        const filters::BoundedInverse inv{filters::GaussianLowpass{0.092}, 0.208, 50.0, 1.0};
        const filters::GaussianLowpass w{1.0};
        double worst = 0.0;
        for (int i = 0; i < 4096; ++i) {
            const double f = 2.0 * i / 4095.0;
            if (inv.channel(f) >= inv.floor())
                worst = std::max(worst, std::abs(inv.channel(f) * inv(f) - inv.h_qubit() * w(f)));
        }
        o.detail << "max deviation " << worst << "; floor at " << inv.floor_frequency() << " GHz";
        o.check(worst < 1e-12, "identity 1e-12");
        o.check(std::abs(inv.floor_frequency() - 0.375) <= 1e-3, "0.375 GHz +- 1 MHz");
    });

    criterion(5, "FIR invariants", 0, [](Outcome &o) {
        const std::vector<std::int16_t> published{-300,  145,    977,   3351, -682, -9355, -25925, 32767,
                                                  32766, -25925, -9355, -682, 3351, 977,   145,    -300};
        const auto pub = filters::check_invariants(published);
        o.check(pub.ok(), "published taps");
        const auto target = filters::bounded_inverse(filters::gaussian_lowpass(0.092), 0.208);
        std::vector<double> pub_d(published.begin(), published.end());
        double best_corr = -1, best_rate = 0;
        bool all_ok = true;
        std::ostringstream table;
        for (double rate : {0.5, 0.6, 0.8, 1.0, 1.2, 1.5, 1.8, 2.0, 2.4, 2.5, 3.0, 3.6, 4.0, 5.0}) {
            const auto fir = filters::quantize_taps(filters::synthesize_fir(target, 16, rate));
            all_ok = all_ok && filters::check_invariants(fir.taps_int16).ok();
            std::vector<double> t(fir.taps_int16.begin(), fir.taps_int16.end());
            const double c = filters::normalized_correlation(t, pub_d);
            table << ' ' << rate << ':' << std::setprecision(3) << c << std::setprecision(6);
            if (c > best_corr) {
                best_corr = c;
                best_rate = rate;
            }
        }
        o.check(all_ok, "synthesized taps");
        o.detail << "published: max " << pub.max_abs << ", asym " << pub.max_asymmetry << ", nyq "
                 << pub.nyquist_ratio << "; best correlation " << best_corr << " at " << best_rate
                 << " GS/s (target 0.9, informational" << (best_corr >= 0.9 ? ", met" : ", not met")
                 << "); by rate" << table.str();
    });

    criterion(6, "IIR correction", 1.0, [](Outcome &o) {
        const auto model = distortion::reference_flux_line_tail();
        const auto c = filters::design_iir_corrector(model.terms, 2.0);
        Waveform step{2.0, std::vector<double>(8000, 1.0)};
        std::fill(step.samples.begin(), step.samples.begin() + 40, 0.0);
        const auto fixed = distortion::distort(filters::apply_iir(step, c), model);
        double worst = 0.0;
        for (std::size_t i = 40 + 100; i < step.size(); ++i) worst = std::max(worst, std::abs(fixed.samples[i] - 1.0));
        o.detail << "corrected residual beyond 50 ns " << worst << "; edge residual " << model.edge_residual();
        o.check(worst < 1e-3, "< 0.1%");
        o.check(std::abs(model.edge_residual() + 0.0521) < 1e-12, "-5.21% sum");
    });

    criterion(7, "pre-distortion Rabi contrast", 30.0, [](Outcome &o) {
        const dynamics::Simulator sim{dynamics::DriveScenario{}};
        const dynamics::PulseShape shape;
        const auto cal = dynamics::calibrate_pi(sim, shape, true);
        const auto raw = dynamics::cosine_pulse(sim, cal.amplitude_v, cal.drive_ghz, 0.0, shape, false);
        const double p_raw = std::norm(sim.evolve(raw, {0, false}).final_state(1));
        o.detail << "with " << cal.population << ", without " << p_raw << " at " << cal.amplitude_v << " V";
        o.check(cal.population >= 0.999, "with >= 0.999");
        o.check(p_raw < 0.95, "without < 0.95");
    });

    criterion(8, "coherent gate bound", 10.0, [](Outcome &o) {
        const dynamics::Simulator sim{dynamics::DriveScenario{}};
        const auto cal = dynamics::calibrate_pi(sim, dynamics::PulseShape{}, true);
        Eigen::Matrix2cd x;
        x << 0, 1, 1, 0;
        const auto g = dynamics::frame_corrected_fidelity(dynamics::pulse_unitary(sim, cal, 0.0), x);
        o.detail << "F_avg " << std::setprecision(12) << g.fidelity << std::setprecision(6) << ", leakage "
                 << g.leakage << " (" << sim.scenario().levels << " levels)";
        o.check(g.fidelity >= 0.9999, "F >= 0.9999");
        o.check(g.leakage < 1e-4, "leakage < 1e-4");
    });

    criterion(9, "RB pipeline oracle", 0, [](Outcome &o) {
        const auto &t = rb::cayley_table();
        bool closed = true;
        for (int a = 0; a < rb::kCliffordCount; ++a)
            for (int b = 0; b < rb::kCliffordCount; ++b) {
                Eigen::Matrix2cd u = rb::clifford_unitary(b) * rb::clifford_unitary(a);
                closed = closed && rb::find_clifford(u) == t[a][b];
            }
        o.check(closed, "closure");
        auto fit_p = [](const rb::RbResult &r) {
            std::vector<double> m, s;
            for (const auto &p : r.points) {
                m.push_back(p.length);
                s.push_back(p.survival);
            }
            return analysis::fit_rb_decay(m, s).p;
        };
        const auto cal = rb::ideal_calibration(0.208);
        rb::RbOptions ref;
        ref.lengths = {1, 5, 10, 25, 50, 100, 200, 400, 800};
        ref.depolarizing_p = 0.999;
        ref.seed = 21;
        const double p = fit_p(rb::run_rb(ref, cal));
        auto inter = ref;
        inter.interleaved = 7;
        const auto est = analysis::interleaved_fidelity(p, fit_p(rb::run_rb(inter, cal)));
        o.detail << "closure " << (closed ? "ok" : "broken") << "; fitted p " << p << " (injected 0.999); iRB F "
                 << std::setprecision(10) << est.fidelity;
        o.check(std::abs(p - 0.999) < 1e-3, "p within 1e-3");
        o.check(std::abs(est.fidelity - 1.0) < 1e-6, "iRB 1 +- 1e-6");
    });

    criterion(10, "memory claim", 0, [](Outcome &o) {
        std::mt19937_64 rng(10);
        const auto seq = rb::random_sequence(3000, rng);
        const auto prog = rb::build_rb_program(seq, rb::ideal_calibration(0.208));
        const auto r = pulsec::memory_report(prog, pulsec::SynthesisConfig{});
        o.detail << "sequence " << r.sequence_ns << " ns, stored " << r.stored_ns << " ns, ratio "
                 << r.ratio.value_or(0.0);
        o.check(r.sequence_ns > 50000.0, "> 50 us");
        o.check(r.stored_ns < 100.0, "stored < 100 ns");
        o.check(r.ratio.value_or(0.0) > 500.0, "ratio > 500");
    });

    criterion(11, "fit recovery", 60.0, [](Outcome &o) {
        std::vector<double> t, y;
        for (int i = 0; i <= 100; ++i) {
            t.push_back(10.0 * i);
            y.push_back(0.9 * std::exp(-t.back() / 150.0 + 1.0 * std::expm1(-t.back() / 30.0)) + 0.05);
        }
        const auto f1 = analysis::fit_t1_double_exponential(t, y);
        const auto &p = f1.params;
        double worst = std::max({rel(p.a, 0.9), rel(p.b, 0.05), rel(p.t_exp_us, 150), rel(p.t_qp_us, 30),
                                 rel(p.n_qp, 1.0)});
        const double target = p.a / std::exp(1.0) + p.b;
        const double bis = oracle::bisect(
            [&](double x) { return analysis::relaxation_model(p, x) - target; }, 0.0, 1000.0);
        const double t1_err = rel(f1.t1_eff_us, bis);

        std::vector<double> td, env;
        for (int i = 0; i <= 75; ++i) {
            td.push_back(2.0 * i);
            env.push_back(analysis::dephasing_model({0.48, 0.5, 120, 90, 60}, td.back()));
        }
        const auto fd = analysis::fit_dephasing_envelope(td, env, 120);
        worst = std::max({worst, rel(fd.params.c, 0.48), rel(fd.params.d, 0.5), rel(fd.params.t_phi_exp_us, 90),
                          rel(fd.params.t_phi_g_us, 60)});

        std::vector<double> m, s;
        for (int len : {1, 3, 10, 30, 100, 300, 1000}) {
            m.push_back(len);
            s.push_back(0.48 * std::pow(0.998, len) + 0.5);
        }
        const auto fr = analysis::fit_rb_decay(m, s);
        worst = std::max({worst, rel(fr.p, 0.998), rel(fr.a, 0.48), rel(fr.b, 0.5)});

        double worst_w = 0.0, mean_w = 0.0;
        for (int seed = 0; seed < 100; ++seed) {
            const auto r = analysis::estimate_reset_fidelity(mixture(1000 + seed, 50000, 0.02, 4.0));
            worst_w = std::max(worst_w, std::abs(r.weight_e - 0.02));
            mean_w += r.weight_e / 100;
        }
        o.detail << "max param rel err " << worst << "; T1_eff vs bisection " << t1_err
                 << "; reset weight mean " << mean_w << ", max |dev| " << worst_w << " over 100 seeds";
        o.check(worst < 0.02, "round trip 2%");
        o.check(t1_err < 1e-3, "T1_eff 0.1%");
        o.check(worst_w <= 0.003, "reset +-0.3%");
    });

    criterion(12, "determinism", 0, [](Outcome &o) {
        const std::string exe = FLUXCTL_EXE, dir = FLUXCTL_WORK_DIR;
        const std::string wf = dir + "/acc_demo.bin", csv = dir + "/acc_rb.csv";
        std::vector<std::string> wf_sha, csv_sha;
        for (int run = 0; run < 2; ++run) {
            const std::string c1 = exe + " compile " FLUXCTL_DOCS_DIR "/programs/demo.pasm --out " + wf + " > /dev/null";
            const std::string c2 = exe + " -o " + csv +
                                   " simulate rb --seed 7 --lengths 1,5,20,50 --sequences 4 --depolarizing 0.995";
            o.check(std::system(c1.c_str()) == 0 && std::system(c2.c_str()) == 0, "CLI run");
            wf_sha.push_back(file_sha(wf));
            csv_sha.push_back(file_sha(csv));
        }
        const auto g_wf = read_golden("demo_waveform.sha256"), g_rb = read_golden("rb_seed7.sha256");
        o.detail << "waveform " << wf_sha[0].substr(0, 12) << ", rb csv " << csv_sha[0].substr(0, 12);
        o.check(wf_sha[0] == g_wf && wf_sha[1] == g_wf, "waveform golden");
        o.check(csv_sha[0] == g_rb && csv_sha[1] == g_rb, "rb golden");
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
