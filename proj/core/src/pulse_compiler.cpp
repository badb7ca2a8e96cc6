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


#include "fluxctl/pulse_compiler.hpp"

#include <cmath>
#include <set>

#include "fluxctl/errors.hpp"
#include "fluxctl/units.hpp"

namespace fluxctl::pulsec {

void SynthesisConfig::validate() const {
    if (!(sample_rate_gsps > 0.0)) throw InvalidArgument("synthesis: sample rate must be positive");
    if (dac_bits < 8 || dac_bits > 16) throw InvalidArgument("synthesis: dac_bits must be in [8, 16]");
    if (!(dac_full_scale_v > 0.0)) throw InvalidArgument("synthesis: DAC full scale must be positive");
    const auto same = [&](double r) { return std::abs(r - sample_rate_gsps) <= 1e-12 * sample_rate_gsps; };
    if (xy_fir && !same(xy_fir->sample_rate_gsps))
        throw InvalidArgument("synthesis: XY FIR sample rate differs from the engine rate");
    if (z_iir && !same(z_iir->sample_rate_gsps))
        throw InvalidArgument("synthesis: Z IIR sample rate differs from the engine rate");
}

namespace {

struct CarrierSegment {
    std::int64_t start;
    double frequency;
    double start_cycles;  // in [0, 1)
};

class Compiler {
  public:
    Compiler(const PulseProgram &p) : prog_(p) {
        const auto n = static_cast<std::size_t>(p.total_samples());
        out_.sample_rate_gsps = p.sample_rate_gsps;
        out_.xy_envelope.assign(n, 0.0);
        out_.z_baseband.assign(n, 0.0);
        out_.carrier_phase.assign(n, 0.0);
        segments_.push_back({0, p.initial_carrier_ghz, 0.0});
    }

    CompiledProgram run() {
        std::int64_t t = 0;
        block(prog_.instructions, t);
        fill_carrier();
        return std::move(out_);
    }

  private:
    void trace(std::int64_t t, const char *op) {
        out_.frame_trace.push_back(
            {t, segments_.back().frequency,
             frame_ - units::two_pi * std::floor(frame_ / units::two_pi), op});
    }

    void block(const std::vector<Instruction> &list, std::int64_t &t) {
        for (const auto &ins : list) step(ins, t);
    }

    void step(const Instruction &ins, std::int64_t &t) {
        std::visit(
            [&](const auto &op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, PlayXY>) {
                    const auto &prim = prog_.primitives.at(op.primitive);
                    const auto len = static_cast<std::int64_t>(prim.samples.size());
                    if (t < xy_busy_until_) throw ScheduleError("xy: overlapping XY emission");
                    const std::complex<double> rot =
                        op.amplitude * std::polar(1.0, op.phase + frame_);
                    for (std::int64_t k = 0; k < len; ++k)
                        out_.xy_envelope[t + k] += rot * prim.samples[k];
                    t += len;
                    xy_busy_until_ = t;
                } else if constexpr (std::is_same_v<T, PlayZ>) {
                    const auto &rise = prog_.primitives.at(op.rise).samples;
                    const auto &fall = prog_.primitives.at(op.fall).samples;
                    const auto hold = samples_for(op.hold_ns, prog_.sample_rate_gsps, "z hold");
                    if (t < z_busy_until_) throw ScheduleError("z: overlapping Z emission");
                    std::int64_t u = t;
                    for (double v : rise) out_.z_baseband[u++] = op.hold_amplitude * v;
                    const std::int64_t body_start = u;
                    for (std::int64_t k = 0; k < hold; ++k) out_.z_baseband[u++] = op.hold_amplitude;
                    for (double v : fall) out_.z_baseband[u++] = op.hold_amplitude * v;
                    std::int64_t b = std::max(body_start, t);
                    block(op.body, b);
                    if (b > body_start + hold) throw ScheduleError("z: body overruns the hold");
                    t = u;
                    z_busy_until_ = u;
                } else if constexpr (std::is_same_v<T, VirtualZ>) {
                    frame_ += op.phase;
                    trace(t, "vz");
                } else if constexpr (std::is_same_v<T, SetCarrier>) {
                    const auto &seg = segments_.back();
                    double cycles = seg.start_cycles +
                                    seg.frequency * double(t - seg.start) / prog_.sample_rate_gsps;
                    cycles -= std::floor(cycles);
                    if (t == seg.start)
                        segments_.back() = {t, op.frequency_ghz, seg.start_cycles};
                    else
                        segments_.push_back({t, op.frequency_ghz, cycles});
                    trace(t, "carrier");
                } else if constexpr (std::is_same_v<T, Delay>) {
                    t += samples_for(op.duration_ns, prog_.sample_rate_gsps, "delay");
                } else {
                    for (std::int64_t r = 0; r < op.count; ++r) block(op.body, t);
                }
            },
            ins.op);
    }

    void fill_carrier() {
        const auto n = static_cast<std::int64_t>(out_.carrier_phase.size());
        for (std::size_t s = 0; s < segments_.size(); ++s) {
            const auto &seg = segments_[s];
            const std::int64_t end = s + 1 < segments_.size() ? segments_[s + 1].start : n;
            for (std::int64_t i = seg.start; i < end; ++i) {
                double c = seg.start_cycles + seg.frequency * double(i - seg.start) / prog_.sample_rate_gsps;
                c -= std::floor(c);
                out_.carrier_phase[i] = units::two_pi * c;
            }
        }
    }

    const PulseProgram &prog_;
    CompiledProgram out_;
    std::vector<CarrierSegment> segments_;
    double frame_ = 0.0;
    std::int64_t xy_busy_until_ = 0;
    std::int64_t z_busy_until_ = 0;
};

}  // namespace

CompiledProgram compile(const PulseProgram &program, const SynthesisConfig &config) {
    config.validate();
    program.validate();
    if (std::abs(program.sample_rate_gsps - config.sample_rate_gsps) > 1e-12 * config.sample_rate_gsps)
        throw InvalidArgument("compile: program and engine sample rates differ");
    return Compiler(program).run();
}

Waveform modulate(const CompiledProgram &c) {
    Waveform w{c.sample_rate_gsps, std::vector<double>(c.size())};
    for (std::size_t i = 0; i < c.size(); ++i)
        w.samples[i] = (c.xy_envelope[i] * std::polar(1.0, -c.carrier_phase[i])).real();
    return w;
}

Waveform synthesize(const CompiledProgram &c, const SynthesisConfig &config) {
    config.validate();
    if (std::abs(c.sample_rate_gsps - config.sample_rate_gsps) > 1e-12 * config.sample_rate_gsps)
        throw InvalidArgument("synthesize: compiled and engine sample rates differ");
    Waveform xy = modulate(c);
    if (config.xy_fir) xy.samples = filters::apply_fir(xy.samples, config.xy_fir->effective_taps());
    Waveform z{c.sample_rate_gsps, c.z_baseband};
    if (config.z_iir && !z.samples.empty()) z = filters::apply_iir(z, *config.z_iir);

    Waveform out{c.sample_rate_gsps, std::vector<double>(c.size())};
    double peak = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.samples[i] = xy.samples[i] + z.samples[i];
        if (std::abs(out.samples[i]) > peak) {
            peak = std::abs(out.samples[i]);
            at = i;
        }
    }
    if (peak > 1.0)
        throw SaturationError("synthesize: composite peak " + std::to_string(peak) +
                                  " exceeds full scale at sample " + std::to_string(at),
                              peak, at);
    return out;
}

std::vector<std::int16_t> dac_quantize(const Waveform &w, const SynthesisConfig &config) {
    config.validate();
    const double scale = config.dac_max_code();
    std::vector<std::int16_t> codes(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double v = w.samples[i];
        if (!(std::abs(v) <= 1.0))
            throw SaturationError("dac_quantize: sample " + std::to_string(i) + " out of range",
                                  std::abs(v), i);
        codes[i] = static_cast<std::int16_t>(std::round(v * scale));
    }
    return codes;
}

Waveform dac_dequantize(std::span<const std::int16_t> codes, const SynthesisConfig &config) {
    config.validate();
    const double scale = config.dac_max_code();
    Waveform w{config.sample_rate_gsps, std::vector<double>(codes.size())};
    for (std::size_t i = 0; i < codes.size(); ++i) w.samples[i] = codes[i] / scale;
    return w;
}

namespace {

void collect_ids(const std::vector<Instruction> &list, std::set<std::string> &ids) {
    for (const auto &ins : list) {
        if (const auto *xy = std::get_if<PlayXY>(&ins.op)) {
            ids.insert(xy->primitive);
        } else if (const auto *z = std::get_if<PlayZ>(&ins.op)) {
            ids.insert(z->rise);
            ids.insert(z->fall);
            collect_ids(z->body, ids);
        } else if (const auto *r = std::get_if<Repeat>(&ins.op)) {
            collect_ids(r->body, ids);
        }
    }
}

}  // namespace

MemoryReport memory_report(const PulseProgram &program, const SynthesisConfig &config) {
    config.validate();
    program.validate();
    std::set<std::string> ids;
    collect_ids(program.instructions, ids);
    std::size_t stored = 0;
    for (const auto &id : ids) stored += program.primitives.at(id).samples.size();
    MemoryReport r;
    r.unique_primitives = ids.size();
    r.stored_ns = double(stored) / program.sample_rate_gsps;
    r.sequence_ns = program.total_duration_ns();
    if (stored > 0) r.ratio = r.sequence_ns / r.stored_ns;
    return r;
}

}  // namespace fluxctl::pulsec
