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


#include <iostream>
#include <fstream>

#include "CLI11.hpp"

#include "fluxctl/commands.hpp"
#include "fluxctl/devices.hpp"
#include "fluxctl/errors.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 2, kDomain = 3, kNumerical = 4 };

int exit_code(fluxctl::ErrorKind k) {
    switch (k) {
    case fluxctl::ErrorKind::InvalidArgument:
    case fluxctl::ErrorKind::Parse: return kUsage;
    case fluxctl::ErrorKind::NoSolution:
    case fluxctl::ErrorKind::Saturation:
    case fluxctl::ErrorKind::Schedule: return kDomain;
    case fluxctl::ErrorKind::NumericalFailure:
    case fluxctl::ErrorKind::FitFailure: return kNumerical;
    }
    return kNumerical;
}

}  // namespace

int main(int argc, char **argv) {
    using namespace fluxctl::cli;
    CLI::App app{"fluxctl: unified flux-line control toolkit"};
    app.set_version_flag("--version", std::string("fluxctl ") + FLUXCTL_VERSION);
    bool provenance = false;
    app.add_flag("--provenance", provenance, "Print the bundled device-table checksum");
    std::string out_path;
    app.add_option("-o,--out-file", out_path, "Write results here instead of stdout");

    SpectrumArgs sp;
    auto *spectrum = app.add_subcommand("spectrum", "Fluxonium spectrum versus external flux");
    spectrum->add_option("--ej", sp.e_j, "E_J/h, GHz");
    spectrum->add_option("--ec", sp.e_c, "E_C/h, GHz");
    spectrum->add_option("--el", sp.e_l, "E_L/h, GHz");
    spectrum->add_option("--basis", sp.basis, "Oscillator basis size");
    spectrum->add_option("--from", sp.from, "First flux, Phi0");
    spectrum->add_option("--to", sp.to, "Last flux, Phi0");
    spectrum->add_option("-n,--points", sp.points, "Grid points");
    spectrum->add_option("--levels", sp.levels, "Levels to report (>= 2)");
    spectrum->add_option("--registry", sp.registry, "Device registry JSON");
    spectrum->add_option("--device", sp.device, "Registry device with circuit parameters");
    spectrum->add_option("--reset-target", sp.reset_target_ghz, "Find the reset flux for this frequency, GHz");

    TradeoffArgs tr;
    auto *tradeoff = app.add_subcommand("tradeoff", "Drive strength and line-limited T1 versus attenuation");
    tradeoff->add_option("--ej", tr.e_j);
    tradeoff->add_option("--ec", tr.e_c);
    tradeoff->add_option("--el", tr.e_l);
    tradeoff->add_option("--from", tr.from_db, "First attenuation, dB");
    tradeoff->add_option("--to", tr.to_db, "Last attenuation, dB");
    tradeoff->add_option("--step", tr.step_db, "Grid step, dB");
    tradeoff->add_option("--mutual", tr.mutual_h, "Mutual inductance, H");
    tradeoff->add_option("--z0", tr.z0, "Line impedance, ohm");
    tradeoff->add_option("--noise", tr.noise_dbm, "AWG noise, dBm/Hz");
    tradeoff->add_option("--vmax", tr.vmax, "AWG full-scale amplitude, V");
    tradeoff->add_flag("--johnson", tr.johnson, "Add room-temperature Johnson noise");
    tradeoff->add_option("--temperature", tr.temperature_k, "Johnson noise temperature, K");

    DesignArgs de;
    auto *design = app.add_subcommand("design", "Filter design files");
    design->require_subcommand(1);
    for (const char *kind : {"gauss", "inverse", "fir", "iir"}) {
        auto *d = design->add_subcommand(kind);
        d->callback([&de, kind] { de.kind = kind; });
        d->add_option("--cutoff", de.cutoff_ghz, "Channel cutoff, GHz");
        if (std::string(kind) != "gauss") d->add_option("--fq", de.qubit_ghz, "Qubit frequency, GHz");
        d->add_option("--gmax", de.g_max_db, "Inverse gain cap, dB");
        d->add_option("--window", de.window_ghz, "Window cutoff, GHz");
        d->add_option("--rate", de.rate_gsps, "Sample rate, GS/s");
        d->add_option("--taps", de.taps, "FIR taps (even)");
        d->add_option("--target", de.target, "FIR target: inverse or gauss");
        d->add_option("--exp", de.exps, "Exponential term A:tau_ns (repeatable)");
        d->add_option("--grid", de.grid_points, "Response table points");
    }

    CompileArgs co;
    auto *compile = app.add_subcommand("compile", "Compile and synthesize a pulse program");
    compile->add_option("program", co.program, "Pulse-assembly file")->required();
    compile->add_option("--fir", co.fir, "FIR design for the XY path");
    compile->add_option("--iir", co.iir, "IIR design for the Z path");
    compile->add_option("--out", co.out, "Waveform payload path (sidecar gets .json)");
    compile->add_flag("--report-memory", co.report_memory, "Report stored versus sequence length");
    compile->add_option("--dac-bits", co.dac_bits);
    compile->add_option("--full-scale", co.full_scale_v, "DAC full scale, V");

    SimulateArgs si;
    auto *simulate = app.add_subcommand("simulate", "Closed-system pulse simulations");
    simulate->require_subcommand(1);
    for (const char *kind : {"rabi", "gate", "rb"}) {
        auto *s = simulate->add_subcommand(kind);
        s->callback([&si, kind] { si.kind = kind; });
        s->add_option("--scenario", si.scenario, "Scenario JSON");
        s->add_flag("--predistort", si.predistort, "Apply the bounded inverse filter");
        if (std::string(kind) == "rabi") {
            s->add_option("--sweep", si.sweep, "amplitude or duration");
            s->add_option("--from", si.from);
            s->add_option("--to", si.to);
            s->add_option("-n,--points", si.points);
            s->add_option("--amplitude", si.amplitude_v, "Amplitude for duration sweeps, V");
        }
        if (std::string(kind) == "rb") {
            s->add_option("--seed", si.seed);
            s->add_option("--lengths", si.lengths)->delimiter(',');
            s->add_option("--sequences", si.sequences);
            s->add_option("--mode", si.mode, "ideal or pulse");
            s->add_option("--depolarizing", si.depolarizing_p, "Per-Clifford depolarizing p (ideal mode)");
            s->add_option("--interleaved", si.interleaved, "Interleaved Clifford index");
            s->add_option("--program-out", si.program_out, "Write the longest compiled program here");
        }
    }

    FitArgs fi;
    auto *fit = app.add_subcommand("fit", "Fit measurement data");
    fit->require_subcommand(1);
    for (const char *model : {"t1", "dephasing", "rb", "reset", "tail"}) {
        auto *f = fit->add_subcommand(model);
        f->callback([&fi, model] { fi.model = model; });
        f->add_option("data", fi.data, "CSV file")->required();
        if (std::string(model) == "dephasing") f->add_option("--t1-de", fi.t1_de_us, "T1 from the DE fit, us");
        if (std::string(model) == "reset") f->add_option("--excited", fi.excited, "higher or lower");
        if (std::string(model) == "tail") {
            f->add_option("--terms", fi.terms);
            f->add_option("--window", fi.window_ns, "Probe window, ns");
            f->add_flag("--single", fi.single, "Single-exponential phase fit");
            f->add_option("--rad-per-unit", fi.rad_per_unit, "Phase per unit tail, rad");
        }
    }

    DevicesArgs dv;
    auto *devices = app.add_subcommand("devices", "Bundled device table");
    devices->add_option("--registry", dv.registry, "Alternative registry JSON");
    devices->add_flag("--csv", dv.csv, "CSV instead of JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        app.exit(e);
        if (provenance || std::string(argv[argc - 1]) == "--provenance")
            std::cout << "devices-sha256 " << fluxctl::devices::bundled_registry_sha256() << '\n';
        return kOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }
    if (provenance && app.get_subcommands().empty()) {
        std::cout << "devices-sha256 " << fluxctl::devices::bundled_registry_sha256() << '\n';
        return kOk;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kUsage;
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kUsage;
        }
    }
    std::ostream &out = out_path.empty() ? std::cout : file;
    try {
        if (spectrum->parsed()) run_spectrum(sp, out);
        else if (tradeoff->parsed()) run_tradeoff(tr, out);
        else if (design->parsed()) run_design(de, out);
        else if (compile->parsed()) run_compile(co, out);
        else if (simulate->parsed()) run_simulate(si, out);
        else if (fit->parsed()) run_fit(fi, out);
        else if (devices->parsed()) run_devices(dv, out);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const fluxctl::SaturationError &e) {
        std::cerr << "error: " << e.what() << " (peak " << e.peak << " at sample " << e.index << ")\n";
        return kDomain;
    } catch (const fluxctl::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
