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


#include "fluxctl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "fluxctl/analysis.hpp"
#include "fluxctl/design_io.hpp"
#include "fluxctl/devices.hpp"
#include "fluxctl/distortion.hpp"
#include "fluxctl/dynamics.hpp"
#include "fluxctl/errors.hpp"
#include "fluxctl/fir.hpp"
#include "fluxctl/fluxonium.hpp"
#include "fluxctl/gaussian_mixture.hpp"
#include "fluxctl/iir.hpp"
#include "fluxctl/io.hpp"
#include "fluxctl/line_budget.hpp"
#include "fluxctl/pulse_asm.hpp"
#include "fluxctl/pulse_compiler.hpp"
#include "fluxctl/rb.hpp"
#include "fluxctl/scenario_io.hpp"

namespace fluxctl::cli {

namespace {

ojson matrix_json(const Eigen::MatrixXd &m) {
    ojson a = ojson::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        a.push_back(std::move(row));
    }
    return a;
}

// JSON has no infinity; unbounded values become null.
ojson finite_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = n == 1 ? a : (a * (n - 1 - i) + b * i) / (n - 1);
    return g;
}

}  // namespace

void run_spectrum(const SpectrumArgs &a, std::ostream &out) {
    if (a.from > a.to) throw UsageError("spectrum: --from must not exceed --to");
    if (a.points < 1) throw UsageError("spectrum: -n must be positive");
    if (a.points == 1 && a.from != a.to) throw UsageError("spectrum: -n 1 needs --from == --to");
    if (a.levels < 2) throw UsageError("spectrum: --levels must be >= 2");
    fluxonium::Params p{a.e_j, a.e_c, a.e_l, 0.5, a.basis};
    if (!a.device.empty()) {
        const auto reg = a.registry.empty() ? devices::bundled_registry() : devices::load_registry(a.registry);
        const auto &d = reg.find(a.device);
        if (!d.circuit) throw UsageError("spectrum: device '" + a.device + "' has no circuit parameters");
        p = *d.circuit;
        p.basis_size = a.basis;
    }
    if (a.reset_target_ghz) {
        const auto r = fluxonium::find_reset_flux(p, *a.reset_target_ghz);
        ojson j{{"target_ghz", *a.reset_target_ghz}, {"flux_phi0", r.flux},
                {"excursion_phi0", r.excursion}, {"f01_ghz", r.f01}};
        out << j.dump(2) << '\n';
        return;
    }
    const auto grid = linspace(a.from, a.to, a.points);
    const auto rows = fluxonium::spectrum_sweep(p, grid, std::max(a.levels, fluxonium::kDefaultLevels));
    std::vector<std::string> header{"flux_phi0"};
    for (int k = 1; k < a.levels; ++k) header.push_back("f0" + std::to_string(k) + "_ghz");
    header.push_back("phi01_abs");
    std::vector<std::vector<double>> table;
    for (const auto &r : rows) {
        std::vector<double> row{r.flux};
        for (int k = 1; k < a.levels; ++k) row.push_back(r.spectrum.levels[k]);
        row.push_back(r.spectrum.matrix_element(0, 1));
        table.push_back(std::move(row));
    }
    io::write_csv(out, header, table);
}

void run_tradeoff(const TradeoffArgs &a, std::ostream &out) {
    if (!(a.step_db > 0)) throw UsageError("tradeoff: --step must be positive");
    if (a.from_db > a.to_db) throw UsageError("tradeoff: empty attenuation grid (--from > --to)");
    std::vector<double> grid;
    for (double x = a.from_db; x <= a.to_db + 1e-9 * a.step_db; x += a.step_db) grid.push_back(x);
    if (grid.empty()) throw UsageError("tradeoff: empty attenuation grid");
    line::LineModel lm{a.mutual_h, a.z0, a.from_db, a.noise_dbm, a.vmax};
    line::TradeoffOptions opt{a.johnson, a.temperature_k};
    const auto table = line::tradeoff_sweep(fluxonium::Params{a.e_j, a.e_c, a.e_l}, lm, grid, opt);
    std::vector<std::vector<double>> rows;
    std::vector<double> rabi, t1;
    for (const auto &pt : table.points) {
        const double t = pt.t1_line.unlimited ? INFINITY : pt.t1_line.t1_us;
        rows.push_back({pt.attenuation_db, pt.rabi_mhz, t, pt.max_dc_excursion_phi0});
        rabi.push_back(pt.rabi_mhz);
        t1.push_back(t);
    }
    const std::vector<std::string> header{"attenuation_db", "rabi_mhz", "t1_line_us", "max_dc_excursion_phi0"};
    io::write_csv(out, header, rows);
    out << "# f01_ghz=" << io::format_double(table.f01_ghz) << " m01=" << io::format_double(table.m01) << '\n';
    if (grid.size() >= 2) {
        out << "# slope_rabi=" << io::format_double(line::loglog_slope(grid, rabi));
        if (!a.johnson && std::all_of(t1.begin(), t1.end(), [](double v) { return std::isfinite(v); }))
            out << " slope_t1=" << io::format_double(line::loglog_slope(grid, t1));
        out << '\n';
    }
}

void run_design(const DesignArgs &a, std::ostream &out) {
    const auto gauss = filters::gaussian_lowpass(a.cutoff_ghz);
    const auto need_fq = [&]() {
        if (!a.qubit_ghz) throw UsageError("design " + a.kind + ": --fq is required");
        return *a.qubit_ghz;
    };
    ojson j;
    if (a.kind == "gauss") {
        j = to_json(gauss, 2.0, a.grid_points);
    } else if (a.kind == "inverse") {
        j = to_json(filters::bounded_inverse(gauss, need_fq(), a.g_max_db, a.window_ghz), 2.0, a.grid_points);
    } else if (a.kind == "fir") {
        if (!a.rate_gsps) throw UsageError("design fir: --rate is required");
        filters::TransferFunction target = gauss;
        if (a.target == "inverse") target = filters::bounded_inverse(gauss, need_fq(), a.g_max_db, a.window_ghz);
        else if (a.target != "gauss") throw UsageError("design fir: --target must be gauss or inverse");
        j = to_json(filters::quantize_taps(filters::synthesize_fir(target, a.taps, *a.rate_gsps)));
        j["target"] = a.target;
    } else if (a.kind == "iir") {
        if (!a.rate_gsps) throw UsageError("design iir: --rate is required");
        std::vector<filters::ExponentialTerm> terms;
        for (const auto &e : a.exps) {
            const auto colon = e.find(':');
            if (colon == std::string::npos) throw UsageError("design iir: --exp expects A:tau_ns, got '" + e + "'");
            try {
                terms.push_back({std::stod(e.substr(0, colon)), std::stod(e.substr(colon + 1))});
            } catch (const std::exception &) {
                throw UsageError("design iir: cannot parse --exp '" + e + "'");
            }
        }
        j = to_json(filters::design_iir_corrector(terms, *a.rate_gsps));
    } else {
        throw UsageError("design: unknown kind '" + a.kind + "'");
    }
    out << j.dump(2) << '\n';
}

void run_compile(const CompileArgs &a, std::ostream &out) {
    const auto program = pulsec::load_program(a.program);
    pulsec::SynthesisConfig cfg;
    cfg.sample_rate_gsps = program.sample_rate_gsps;
    cfg.dac_bits = a.dac_bits;
    cfg.dac_full_scale_v = a.full_scale_v;
    if (!a.fir.empty()) cfg.xy_fir = load_fir(a.fir);
    if (!a.iir.empty()) cfg.z_iir = load_iir(a.iir);
    const auto compiled = pulsec::compile(program, cfg);
    const auto wave = pulsec::synthesize(compiled, cfg);
    io::WaveformFile wf{wave.sample_rate_gsps, cfg.dac_bits, cfg.dac_full_scale_v, pulsec::dac_quantize(wave, cfg)};
    ojson j;
    j["samples"] = wf.codes.size();
    j["duration_ns"] = compiled.duration_ns();
    j["sha256"] = a.out.empty() ? io::sha256_hex(io::encode_int16le(wf.codes)) : io::write_waveform(a.out, wf);
    if (!a.out.empty()) j["output"] = a.out;
    if (a.report_memory) {
        const auto m = pulsec::memory_report(program, cfg);
        j["memory"] = {{"stored_ns", m.stored_ns},
                       {"sequence_ns", m.sequence_ns},
                       {"ratio", m.ratio ? ojson(*m.ratio) : ojson(nullptr)},
                       {"unique_primitives", m.unique_primitives}};
    }
    out << j.dump(2) << '\n';
}

void run_simulate(const SimulateArgs &a, std::ostream &out) {
    const ScenarioFile sf = a.scenario.empty() ? ScenarioFile{} : load_scenario(a.scenario);
    const dynamics::Simulator sim(sf.scenario);
    const auto &shape = sf.shape;
    if (a.kind == "rabi") {
        dynamics::RabiSpec spec;
        spec.shape = shape;
        const double a_pi = dynamics::rwa_amplitude(sim, M_PI, shape, a.predistort);
        spec.amplitude_v = a.amplitude_v > 0 ? a.amplitude_v : a_pi;
        const bool amp = a.sweep == "amplitude";
        if (!amp && a.sweep != "duration") throw UsageError("simulate rabi: --sweep must be amplitude or duration");
        if (a.points < 1) throw UsageError("simulate rabi: -n must be positive");
        const double lo = a.from.value_or(amp ? 0.0 : 2.0), hi = a.to.value_or(amp ? 2.0 * a_pi : 80.0);
        if (lo > hi) throw UsageError("simulate rabi: --from must not exceed --to");
        const auto grid = linspace(lo, hi, a.points);
        const auto curve = dynamics::rabi_experiment(sim, spec, grid,
                                                     amp ? dynamics::Sweep::Amplitude : dynamics::Sweep::Duration,
                                                     a.predistort);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back({grid[i], curve.excited_population[i]});
        const std::vector<std::string> header{amp ? "amplitude_v" : "duration_ns", "p1"};
        io::write_csv(out, header, rows);
    } else if (a.kind == "gate") {
        const auto cal = dynamics::calibrate_pi(sim, shape, a.predistort);
        const auto u = dynamics::pulse_unitary(sim, cal, 0.0);
        Eigen::Matrix2cd x;
        x << 0, 1, 1, 0;
        const auto g = dynamics::frame_corrected_fidelity(u, x);
        ojson j{{"gate", "X180"},
                {"predistort", a.predistort},
                {"f01_ghz", sim.f01()},
                {"m01", sim.m01()},
                {"amplitude_v", cal.amplitude_v},
                {"drive_ghz", cal.drive_ghz},
                {"population", cal.population},
                {"fidelity", g.fidelity},
                {"leakage", g.leakage},
                {"evaluations", cal.evaluations},
                {"scenario_hash", sf.scenario.hash()}};
        out << j.dump(2) << '\n';
    } else if (a.kind == "rb") {
        rb::RbOptions opt;
        opt.lengths = a.lengths;
        opt.sequences_per_length = a.sequences;
        opt.seed = a.seed;
        opt.interleaved = a.interleaved;
        opt.depolarizing_p = a.depolarizing_p;
        rb::GateCalibration gc;
        if (a.mode == "ideal") {
            opt.mode = rb::RbMode::IdealGates;
            gc = rb::ideal_calibration(sim.f01());
        } else if (a.mode == "pulse") {
            opt.mode = rb::RbMode::Pulse;
            const auto half = dynamics::calibrate_half_pi(sim, shape, a.predistort);
            gc = rb::calibrate_gates(sim, half, sf.scenario.line.awg_vmax);
        } else {
            throw UsageError("simulate rb: --mode must be ideal or pulse");
        }
        const auto res = rb::run_rb(opt, gc, &sim);
        std::vector<std::vector<double>> rows;
        for (const auto &p : res.points) rows.push_back({double(p.length), double(p.seq_index), p.survival});
        const std::vector<std::string> header{"length", "seq_index", "survival"};
        io::write_csv(out, header, rows);
        if (!a.program_out.empty()) io::write_text(a.program_out, pulsec::serialize(res.program));
    } else {
        throw UsageError("simulate: unknown experiment '" + a.kind + "'");
    }
}

void run_fit(const FitArgs &a, std::ostream &out) {
    const auto table = io::read_csv(a.data);
    ojson j;
    j["model"] = a.model;
    if (a.model == "t1") {
        const auto f = analysis::fit_t1_double_exponential(table.column("t_us"), table.column("value"));
        j["A"] = f.params.a;
        j["B"] = f.params.b;
        j["T_exp_us"] = f.params.t_exp_us;
        j["T_qp_us"] = f.params.t_qp_us;
        j["n_qp"] = f.params.n_qp;
        j["n_qp_at_bound"] = f.n_qp_at_bound;
        j["t1_eff_us"] = finite_or_null(f.t1_eff_us);
        j["t1_eff_found"] = f.t1_eff_found;
        j["covariance"] = matrix_json(f.covariance);
        j["covariance_order"] = {"A", "B", "T_exp_us", "T_qp_us", "n_qp"};
        j["rss"] = f.rss;
        j["successful_starts"] = f.successful_starts;
    } else if (a.model == "dephasing") {
        if (!a.t1_de_us) throw UsageError("fit dephasing: --t1-de is required");
        const auto f = analysis::fit_dephasing_envelope(table.column("t_us"), table.column("value"), *a.t1_de_us);
        j["C"] = f.params.c;
        j["D"] = f.params.d;
        j["T1_DE_us"] = f.params.t1_de_us;
        j["T_phi_exp_us"] = finite_or_null(f.params.t_phi_exp_us);
        j["T_phi_g_us"] = f.params.t_phi_g_us;
        j["T_phi_g_sigma_us"] = f.t_phi_g_sigma_us;
        j["exp_rate_at_bound"] = f.exp_rate_at_bound;
        j["exchange_degenerate"] = f.exchange_degenerate;
        j["rate_correlation"] = f.rate_correlation;
        j["covariance"] = matrix_json(f.covariance);
        j["covariance_order"] = {"C", "D", "rate_exp_per_us", "rate_gauss_per_us2"};
        j["rss"] = f.rss;
    } else if (a.model == "rb") {
        const auto f = analysis::fit_rb_decay(table.column("length"), table.column("survival"));
        j["A"] = f.a;
        j["B"] = f.b;
        j["p"] = f.p;
        j["p_sigma"] = f.p_sigma;
        j["f_avg"] = f.f_avg;
        j["amplitude_unidentifiable"] = f.amplitude_unidentifiable;
        j["rss"] = f.rss;
    } else if (a.model == "reset") {
        analysis::ResetOptions opt;
        if (a.excited == "lower") opt.excited = analysis::ExcitedCenter::Lower;
        else if (a.excited != "higher") throw UsageError("fit reset: --excited must be higher or lower");
        const auto e = analysis::estimate_reset_fidelity(table.column("signal"), opt);
        j["mu_g"] = e.mu_g;
        j["mu_e"] = e.mu_e;
        j["sigma_g"] = e.sigma_g;
        j["sigma_e"] = e.sigma_e;
        j["weight_e"] = e.weight_e;
        j["fidelity"] = e.fidelity;
        j["single_component"] = e.single_component;
        j["sigma_floored"] = e.sigma_floored;
        j["converged"] = e.converged;
        j["bic_single"] = e.bic_single;
        j["bic_mixture"] = e.bic_mixture;
    } else if (a.model == "tail") {
        const auto d = table.column("delay_ns");
        if (a.single) {
            const auto f = distortion::fit_single_exponential(d, table.column("phase_rad"));
            j["amplitude"] = f.amplitude;
            j["tau_ns"] = f.tau_ns;
            j["amplitude_sigma"] = f.amplitude_sigma;
            j["tau_sigma"] = f.tau_sigma;
            j["tau_identifiable"] = f.tau_identifiable;
            j["negligible"] = f.negligible;
            j["residual_norm"] = f.residual_norm;
        } else {
            std::vector<distortion::TailProbeRecord> recs;
            const bool phase = std::find(table.header.begin(), table.header.end(), "phase_rad") != table.header.end();
            if (phase) {
                recs = distortion::phase_to_tail(d, table.column("phase_rad"), a.rad_per_unit);
            } else {
                const auto v = table.column("tail_over_ref");
                for (std::size_t i = 0; i < d.size(); ++i) recs.push_back({d[i], v[i]});
            }
            const auto f = distortion::fit_multi_exponential(recs, a.terms, {a.window_ns});
            j["terms"] = ojson::array();
            for (std::size_t i = 0; i < f.model.terms.size(); ++i)
                j["terms"].push_back({{"amplitude", f.model.terms[i].amplitude},
                                      {"tau_ns", f.model.terms[i].tau_ns},
                                      {"amplitude_sigma", f.amplitude_sigma[i]},
                                      {"tau_sigma", f.tau_sigma[i]}});
            j["degenerate"] = f.degenerate;
            j["residual_norm"] = f.residual_norm;
        }
    } else {
        throw UsageError("fit: unknown model '" + a.model + "'");
    }
    out << j.dump(2) << '\n';
}

void run_devices(const DevicesArgs &a, std::ostream &out) {
    const auto reg = a.registry.empty() ? devices::bundled_registry() : devices::load_registry(a.registry);
    if (!a.csv) {
        out << devices::to_json(reg) << '\n';
        return;
    }
    out << "name,fq_mhz,fidelity_pct,gate_ns,t1_us,t2r_us,t2echo_us\n";
    for (const auto &d : reg.devices)
        out << d.name << ',' << io::format_double(d.fq_mhz) << ','
            << (d.fidelity_pct ? io::format_double(*d.fidelity_pct) : std::string()) << ','
            << io::format_double(d.gate_ns) << ',' << io::format_double(d.t1_us) << ','
            << io::format_double(d.t2r_us) << ',' << io::format_double(d.t2echo_us) << '\n';
}

}  // namespace fluxctl::cli
