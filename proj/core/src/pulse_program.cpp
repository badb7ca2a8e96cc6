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


#include "fluxctl/pulse_program.hpp"

#include <cmath>
#include <set>

#include "fluxctl/errors.hpp"

namespace fluxctl::pulsec {

const char *to_string(PrimitiveKind k) { return k == PrimitiveKind::Edge ? "edge" : "envelope"; }

PrimitiveKind primitive_kind_from(const std::string &s) {
    if (s == "envelope") return PrimitiveKind::Envelope;
    if (s == "edge") return PrimitiveKind::Edge;
    throw InvalidArgument("unknown primitive kind '" + s + "' (expected envelope or edge)");
}

bool PlayZ::operator==(const PlayZ &o) const {
    return rise == o.rise && hold_amplitude == o.hold_amplitude && hold_ns == o.hold_ns &&
           fall == o.fall && body == o.body;
}

bool Repeat::operator==(const Repeat &o) const { return count == o.count && body == o.body; }

std::int64_t samples_for(double ns, double rate, const char *what) {
    if (!std::isfinite(ns) || ns < 0.0)
        throw InvalidArgument(std::string(what) + ": duration must be finite and >= 0");
    const double s = ns * rate;
    const double r = std::round(s);
    if (std::abs(s - r) > 1e-9 * std::max(1.0, std::abs(s)))
        throw InvalidArgument(std::string(what) + ": duration " + std::to_string(ns) +
                              " ns is not a whole number of samples");
    return static_cast<std::int64_t>(r);
}

namespace {

struct Checker {
    const PulseProgram &prog;

    const PulsePrimitive &lookup(const std::string &id) const {
        auto it = prog.primitives.find(id);
        if (it == prog.primitives.end()) throw InvalidArgument("unknown primitive id '" + id + "'");
        return it->second;
    }

    static void check_amplitude(double a, const char *what) {
        if (!std::isfinite(a) || std::abs(a) > 1.0)
            throw InvalidArgument(std::string(what) + ": amplitude must lie in [-1, 1]");
    }

    std::int64_t walk(const std::vector<Instruction> &list, bool inside_hold) const {
        std::int64_t total = 0;
        for (const auto &ins : list) total += visit(ins, inside_hold);
        return total;
    }

    std::int64_t visit(const Instruction &ins, bool inside_hold) const {
        return std::visit(
            [&](const auto &op) -> std::int64_t {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, PlayXY>) {
                    check_amplitude(op.amplitude, "xy");
                    if (!std::isfinite(op.phase)) throw InvalidArgument("xy: phase must be finite");
                    return static_cast<std::int64_t>(lookup(op.primitive).samples.size());
                } else if constexpr (std::is_same_v<T, PlayZ>) {
                    if (inside_hold) throw ScheduleError("z: nested z holds are not supported");
                    check_amplitude(op.hold_amplitude, "z hold");
                    const auto hold = samples_for(op.hold_ns, prog.sample_rate_gsps, "z hold");
                    const auto body = walk(op.body, true);
                    if (body > hold)
                        throw ScheduleError("z: body of " + std::to_string(body) +
                                            " samples overruns hold of " + std::to_string(hold));
                    return static_cast<std::int64_t>(lookup(op.rise).samples.size()) + hold +
                           static_cast<std::int64_t>(lookup(op.fall).samples.size());
                } else if constexpr (std::is_same_v<T, VirtualZ>) {
                    if (!std::isfinite(op.phase)) throw InvalidArgument("vz: phase must be finite");
                    return 0;
                } else if constexpr (std::is_same_v<T, SetCarrier>) {
                    if (!std::isfinite(op.frequency_ghz))
                        throw InvalidArgument("carrier: frequency must be finite");
                    return 0;
                } else if constexpr (std::is_same_v<T, Delay>) {
                    return samples_for(op.duration_ns, prog.sample_rate_gsps, "delay");
                } else {
                    if (op.count < 1) throw InvalidArgument("repeat: count must be >= 1");
                    const auto once = walk(op.body, inside_hold);
                    if (once > 0 && op.count > (std::int64_t(1) << 50) / once)
                        throw InvalidArgument("repeat: total duration overflows");
                    return once * op.count;
                }
            },
            ins.op);
    }
};

}  // namespace

void PulseProgram::validate() const {
    if (!(sample_rate_gsps > 0.0) || !std::isfinite(sample_rate_gsps))
        throw InvalidArgument("program: sample rate must be positive");
    if (!std::isfinite(initial_carrier_ghz)) throw InvalidArgument("program: bad initial carrier");
    for (const auto &[id, p] : primitives) {
        if (id != p.id) throw InvalidArgument("primitive store key '" + id + "' != id '" + p.id + "'");
        if (p.samples.empty()) throw InvalidArgument("primitive '" + id + "' is empty");
        if (std::abs(p.sample_rate_gsps - sample_rate_gsps) > 1e-12 * sample_rate_gsps)
            throw InvalidArgument("primitive '" + id + "' sample rate differs from the program");
        for (double v : p.samples)
            if (!std::isfinite(v) || std::abs(v) > 1.0)
                throw InvalidArgument("primitive '" + id + "' has a sample outside [-1, 1]");
    }
    Checker{*this}.walk(instructions, false);
}

std::int64_t PulseProgram::total_samples() const {
    return Checker{*this}.walk(instructions, false);
}

}  // namespace fluxctl::pulsec
