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


#include "fluxctl/rb.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fluxctl/errors.hpp"
#include "fluxctl/parallel.hpp"
#include "fluxctl/pulse_compiler.hpp"
#include "fluxctl/units.hpp"

namespace fluxctl::rb {

using cplx = std::complex<double>;

namespace {

double wrap(double a) { return std::remainder(a, units::two_pi); }

Eigen::Matrix2cd rotation(double angle, double axis) {
    Eigen::Matrix2cd r;
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    r << c, -cplx(0, s) * std::polar(1.0, -axis), -cplx(0, s) * std::polar(1.0, axis), c;
    return r;
}

Eigen::Matrix2cd z_rotation(double theta) {
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    z(0, 0) = std::polar(1.0, -theta / 2);
    z(1, 1) = std::polar(1.0, theta / 2);
    return z;
}

}  // namespace

GateCalibration ideal_calibration(double drive_ghz) {
    GateCalibration g;
    g.x90.amplitude_v = 0.25;
    g.x90.drive_ghz = drive_ghz;
    g.x90.predistort = false;
    return g;
}

GateCalibration calibrate_gates(const dynamics::Simulator &sim, const dynamics::Calibration &x90,
                                double dac_full_scale_v) {
    GateCalibration g;
    g.x90 = x90;
    g.dac_full_scale_v = dac_full_scale_v;
    if (g.amplitude_fraction() > 1.0)
        throw SaturationError("calibrate_gates: half-pi amplitude exceeds DAC full scale",
                              g.amplitude_fraction(), 0);
    const double total = 2 * x90.shape.margin_ns + x90.shape.duration_ns;
    const auto axis_at = [&](double phase) {
        const auto u = dynamics::pulse_unitary(sim, x90, phase);
        const Eigen::Matrix2cd b = sim.rotating_block(u, x90.drive_ghz, total);
        return std::arg(cplx(0, 1) * b(1, 0));
    };
    const double a0 = axis_at(0.0);
    const double d = wrap(axis_at(units::pi / 2) - a0);
    if (std::abs(std::abs(d) - units::pi / 2) > 0.3)
        throw NumericalFailure("calibrate_gates: drive phase does not map onto the rotation axis");
    g.sign = d > 0 ? 1 : -1;
    g.axis_offset = a0;
    return g;
}

pulsec::PulseProgram build_rb_program(std::span<const int> cliffords, const GateCalibration &cal) {
    const auto &shape = cal.x90.shape;
    pulsec::PulseProgram p;
    p.sample_rate_gsps = shape.awg_rate_gsps;
    p.initial_carrier_ghz = cal.x90.drive_ghz;
    pulsec::PulsePrimitive prim;
    prim.id = kX90Primitive;
    prim.kind = pulsec::PrimitiveKind::Envelope;
    prim.samples = dynamics::cosine_envelope(shape.duration_ns, shape.awg_rate_gsps);
    prim.sample_rate_gsps = shape.awg_rate_gsps;
    p.primitives.emplace(prim.id, std::move(prim));

    const double amp = cal.amplitude_fraction();
    const double s = cal.sign, a0 = cal.axis_offset;
    auto &ins = p.instructions;
    if (shape.margin_ns > 0) ins.push_back({pulsec::Delay{shape.margin_ns}});
    for (int c : cliffords)
        for (Gate g : clifford_gates(c)) {
            switch (g) {
            case Gate::X90: ins.push_back({pulsec::PlayXY{kX90Primitive, amp, wrap(-s * a0)}}); break;
            case Gate::Xm90:
                ins.push_back({pulsec::PlayXY{kX90Primitive, amp, wrap(s * (units::pi - a0))}});
                break;
            default: ins.push_back({pulsec::VirtualZ{-s * z_angle(g)}}); break;
            }
        }
    // A trailing frame update has no effect on a Z-basis measurement.
    while (!ins.empty() && std::holds_alternative<pulsec::VirtualZ>(ins.back().op)) ins.pop_back();
    if (shape.margin_ns > 0) ins.push_back({pulsec::Delay{shape.margin_ns}});
    return p;
}

namespace {

void interpret(const std::vector<pulsec::Instruction> &body, const GateCalibration &cal,
               Eigen::Matrix2cd &u, double &frame) {
    const double unit = cal.amplitude_fraction();
    for (const auto &ins : body) {
        if (const auto *xy = std::get_if<pulsec::PlayXY>(&ins.op)) {
            if (xy->primitive != kX90Primitive)
                throw InvalidArgument("ideal_program_unitary: unknown primitive '" + xy->primitive + "'");
            const double axis = cal.sign * (xy->phase + frame) + cal.axis_offset;
            u = rotation(units::pi / 2 * xy->amplitude / unit, axis) * u;
        } else if (const auto *vz = std::get_if<pulsec::VirtualZ>(&ins.op)) {
            frame += vz->phase;
        } else if (const auto *rep = std::get_if<pulsec::Repeat>(&ins.op)) {
            for (std::int64_t k = 0; k < rep->count; ++k) interpret(rep->body, cal, u, frame);
        } else if (const auto *z = std::get_if<pulsec::PlayZ>(&ins.op)) {
            interpret(z->body, cal, u, frame);
        }
    }
}

}  // namespace

Eigen::Matrix2cd ideal_program_unitary(const pulsec::PulseProgram &program, const GateCalibration &cal) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    double frame = 0.0;
    interpret(program.instructions, cal, u, frame);
    // Physical pulses are logical ones conjugated by the accumulated frame.
    return z_rotation(-cal.sign * frame) * u;
}

std::vector<int> random_sequence(int length, std::mt19937_64 &rng, std::optional<int> interleaved) {
    if (length < 1) throw InvalidArgument("rb: sequence length must be >= 1");
    if (interleaved && (*interleaved < 0 || *interleaved >= kCliffordCount))
        throw InvalidArgument("rb: interleaved gate must be a Clifford index");
    std::vector<int> seq;
    seq.reserve(2 * length + 1);
    for (int k = 0; k < length; ++k) {
        seq.push_back(static_cast<int>(rng() % kCliffordCount));
        if (interleaved) seq.push_back(*interleaved);
    }
    seq.push_back(recovery_for(seq));
    return seq;
}

namespace {

// Depolarizing channel after every random Clifford; interleaved and recovery
// gates stay ideal.
double depolarized_survival(std::span<const int> seq, bool interleaved, double p) {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    rho(0, 0) = 1.0;
    const Eigen::Matrix2cd mixed = 0.5 * Eigen::Matrix2cd::Identity();
    const std::size_t stride = interleaved ? 2 : 1;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Eigen::Matrix2cd c = clifford_unitary(seq[i]);
        rho = c * rho * c.adjoint();
        const bool random = i + 1 < seq.size() && i % stride == 0;
        if (random) rho = p * rho + (1.0 - p) * mixed;
    }
    return rho(0, 0).real();
}

}  // namespace

RbResult run_rb(const RbOptions &opt, const GateCalibration &cal, const dynamics::Simulator *sim) {
    if (opt.lengths.empty()) throw InvalidArgument("rb: no sequence lengths");
    if (opt.sequences_per_length < 1) throw InvalidArgument("rb: sequences_per_length must be >= 1");
    if (!(opt.depolarizing_p >= 0.0 && opt.depolarizing_p <= 1.0))
        throw InvalidArgument("rb: depolarizing_p must lie in [0, 1]");
    if (opt.mode == RbMode::Pulse && !sim) throw InvalidArgument("rb: pulse mode needs a simulator");

    std::mt19937_64 rng(opt.seed);
    struct Job {
        int length, index;
        std::vector<int> seq;
    };
    std::vector<Job> jobs;
    for (int m : opt.lengths)
        for (int s = 0; s < opt.sequences_per_length; ++s)
            jobs.push_back({m, s, random_sequence(m, rng, opt.interleaved)});

    pulsec::SynthesisConfig synth;
    synth.sample_rate_gsps = cal.x90.shape.awg_rate_gsps;
    synth.dac_full_scale_v = cal.dac_full_scale_v;

    RbResult res;
    res.points.resize(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const Job &job = jobs[i];
        double survival = 0.0;
        try {
            if (opt.mode == RbMode::IdealGates) {
                survival = depolarized_survival(job.seq, opt.interleaved.has_value(), opt.depolarizing_p);
            } else {
                const auto program = build_rb_program(job.seq, cal);
                Waveform w = pulsec::synthesize(pulsec::compile(program, synth), synth);
                for (double &v : w.samples) v *= cal.dac_full_scale_v;
                if (cal.x90.predistort) w = dynamics::predistort(*sim, w, cal.x90.shape);
                survival = std::norm(sim->evolve(w, {0, false}).final_state(0));
            }
        } catch (const Error &e) {
            rethrow_with_context(e, "rb sequence " + std::to_string(i) + " (length " +
                                        std::to_string(job.length) + ", index " +
                                        std::to_string(job.index) + ")");
        }
        res.points[i] = {job.length, job.index, survival};
    });

    const auto longest = std::max_element(jobs.begin(), jobs.end(),
                                          [](const Job &a, const Job &b) { return a.length < b.length; });
    res.program = build_rb_program(longest->seq, cal);
    return res;
}

std::vector<std::pair<int, double>> mean_survival(std::span<const RbPoint> points) {
    std::vector<std::pair<int, double>> out;
    std::vector<int> counts;
    for (const auto &p : points) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto &e) { return e.first == p.length; });
        if (it == out.end()) {
            out.emplace_back(p.length, 0.0);
            counts.push_back(0);
            it = out.end() - 1;
        }
        it->second += p.survival;
        ++counts[it - out.begin()];
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].second /= counts[i];
    return out;
}

}  // namespace fluxctl::rb
