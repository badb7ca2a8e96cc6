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


#include "fluxctl/pulse_asm.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "fluxctl/errors.hpp"
#include "fluxctl/units.hpp"

namespace fluxctl::pulsec {
namespace {

struct Token {
    std::string_view text;
    std::size_t col;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::optional<double> to_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<double> to_angle(std::string_view s) {
    if (auto v = to_double(s)) return v;
    double sign = 1.0;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        sign = s.front() == '-' ? -1.0 : 1.0;
        s.remove_prefix(1);
    }
    double coef = 1.0;
    if (auto star = s.find('*'); star != std::string_view::npos) {
        auto c = to_double(s.substr(0, star));
        if (!c) return std::nullopt;
        coef = *c;
        s.remove_prefix(star + 1);
    }
    double div = 1.0;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto d = to_double(s.substr(slash + 1));
        if (!d || *d == 0.0) return std::nullopt;
        div = *d;
        s = s.substr(0, slash);
    }
    if (s != "pi") return std::nullopt;
    return sign * coef * units::pi / div;
}

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

struct PendingRef {
    std::string id;
    std::size_t line, col;
};

class Parser {
  public:
    Parser(std::string_view text, std::filesystem::path base) : base_(std::move(base)) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto nl = text.find('\n', pos);
            if (nl == std::string_view::npos) nl = text.size();
            auto l = text.substr(pos, nl - pos);
            if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
            lines_.push_back(l);
            pos = nl + 1;
        }
    }

    PulseProgram run() {
        stack_.push_back(&prog_.instructions);
        for (line_no_ = 1; line_no_ <= lines_.size(); ++line_no_) {
            auto toks = tokenize(lines_[line_no_ - 1]);
            if (!toks.empty()) statement(toks);
        }
        if (stack_.size() != 1) fail("unterminated block, missing '}'", open_lines_.back(), 1);
        if (rate_) {
            prog_.sample_rate_gsps = *rate_;
            for (auto &[id, p] : prog_.primitives) p.sample_rate_gsps = *rate_;
        }
        for (const auto &r : refs_)
            if (!prog_.primitives.count(r.id))
                fail("unknown primitive id '" + r.id + "'", r.line, r.col);
        try {
            prog_.validate();
        } catch (const Error &e) {
            throw ParseError(e.what(), line_no_ - 1, 1);
        }
        return std::move(prog_);
    }

  private:
    [[noreturn]] void fail(const std::string &msg, std::size_t line, std::size_t col) const {
        throw ParseError(msg, line, col);
    }
    [[noreturn]] void fail(const std::string &msg, const Token &t) const { fail(msg, line_no_, t.col); }

    double number(const Token &t, const char *what) const {
        auto v = to_double(t.text);
        if (!v) fail(std::string("expected a number for ") + what + ", got '" + std::string(t.text) + "'", t);
        return *v;
    }
    double angle(const Token &t) const {
        auto v = to_angle(t.text);
        if (!v) fail("expected an angle, got '" + std::string(t.text) + "'", t);
        return *v;
    }
    std::string_view value_of(const Token &t, std::string_view key) const {
        if (t.text.substr(0, key.size() + 1) != std::string(key) + "=")
            fail("expected " + std::string(key) + "=...", t);
        return t.text.substr(key.size() + 1);
    }
    void expect_count(const std::vector<Token> &toks, std::size_t n) const {
        if (toks.size() > n) fail("unexpected token '" + std::string(toks[n].text) + "'", toks[n]);
        if (toks.size() < n)
            fail("missing operand for '" + std::string(toks[0].text) + "'", line_no_,
                 toks.back().col + toks.back().text.size());
    }
    void check_samples(double ns, const Token &t, const char *what) const {
        try {
            samples_for(ns, rate_.value_or(PulseProgram{}.sample_rate_gsps), what);
        } catch (const InvalidArgument &e) {
            fail(e.what(), t);
        }
    }
    void emit(Instruction ins) { stack_.back()->push_back(std::move(ins)); }
    void ref(const Token &t, std::string_view id) { refs_.push_back({std::string(id), line_no_, t.col}); }
    bool top_level() const { return stack_.size() == 1; }

    std::vector<double> read_values_file(const Token &t, std::string_view path_text) const {
        std::filesystem::path path(path_text);
        if (path.is_relative() && !base_.empty()) path = base_ / path;
        std::ifstream in(path);
        if (!in) fail("cannot open primitive file '" + path.string() + "'", t);
        std::vector<double> values;
        std::string tok;
        while (in >> tok) {
            for (char &c : tok)
                if (c == ',') c = ' ';
            std::istringstream parts(tok);
            std::string part;
            while (parts >> part) {
                auto v = to_double(part);
                if (!v) fail("bad value '" + part + "' in '" + path.string() + "'", t);
                values.push_back(*v);
            }
        }
        return values;
    }

    void statement(std::vector<Token> &toks) {
        const auto kw = toks[0].text;
        bool opens = false;
        if (toks.back().text == "{" && toks.size() > 1) {
            opens = true;
            toks.pop_back();
        } else if (toks.back().text.size() > 1 && toks.back().text.back() == '{') {
            fail("'{' must be separated by whitespace", toks.back());
        }

        if (kw == "}") {
            expect_count(toks, 1);
            if (top_level()) fail("unmatched '}'", toks[0]);
            stack_.pop_back();
            open_lines_.pop_back();
            return;
        }
        if (opens && kw != "z" && kw != "repeat") fail("'" + std::string(kw) + "' does not take a block", toks[0]);

        if (kw != "rate") seen_content_ = true;
        if (kw == "rate") {
            expect_count(toks, 2);
            if (!top_level()) fail("rate must be at top level", toks[0]);
            if (rate_) fail("rate given twice", toks[0]);
            if (seen_content_) fail("rate must precede primitives and instructions", toks[0]);
            rate_ = number(toks[1], "rate");
            if (!(*rate_ > 0.0)) fail("rate must be positive", toks[1]);
        } else if (kw == "initial_carrier") {
            expect_count(toks, 2);
            if (!top_level()) fail("initial_carrier must be at top level", toks[0]);
            prog_.initial_carrier_ghz = number(toks[1], "initial_carrier");
        } else if (kw == "prim") {
            primitive(toks);
        } else if (kw == "carrier") {
            expect_count(toks, 2);
            emit({SetCarrier{number(toks[1], "carrier")}});
        } else if (kw == "xy") {
            if (toks.size() < 2) fail("xy needs a primitive id", toks[0]);
            PlayXY op{std::string(toks[1].text)};
            ref(toks[1], toks[1].text);
            bool seen_amp = false, seen_phase = false;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                if (toks[i].text.starts_with("amp=") && !seen_amp) {
                    op.amplitude = number(Token{value_of(toks[i], "amp"), toks[i].col + 4}, "amp");
                    seen_amp = true;
                } else if (toks[i].text.starts_with("phase=") && !seen_phase) {
                    op.phase = angle(Token{value_of(toks[i], "phase"), toks[i].col + 6});
                    seen_phase = true;
                } else {
                    fail("unexpected token '" + std::string(toks[i].text) + "'", toks[i]);
                }
            }
            emit({op});
        } else if (kw == "vz") {
            expect_count(toks, 2);
            emit({VirtualZ{angle(toks[1])}});
        } else if (kw == "delay") {
            expect_count(toks, 2);
            const double ns = number(toks[1], "delay");
            check_samples(ns, toks[1], "delay");
            emit({Delay{ns}});
        } else if (kw == "z") {
            expect_count(toks, 4);
            PlayZ op;
            op.rise = std::string(value_of(toks[1], "rise"));
            ref(toks[1], op.rise);
            const auto hold = value_of(toks[2], "hold");
            const auto comma = hold.find(',');
            if (comma == std::string_view::npos) fail("hold expects <amplitude>,<ns>", toks[2]);
            op.hold_amplitude = number(Token{hold.substr(0, comma), toks[2].col + 5}, "hold amplitude");
            op.hold_ns = number(Token{hold.substr(comma + 1), toks[2].col + 6 + comma}, "hold duration");
            check_samples(op.hold_ns, toks[2], "z hold");
            op.fall = std::string(value_of(toks[3], "fall"));
            ref(toks[3], op.fall);
            emit({std::move(op)});
            if (opens) open_block(&std::get<PlayZ>(stack_.back()->back().op).body);
        } else if (kw == "repeat") {
            expect_count(toks, 2);
            if (!opens) fail("repeat needs a '{' block", toks[0]);
            const double n = number(toks[1], "repeat count");
            if (n < 1 || n != std::floor(n) || n > 1e15) fail("repeat count must be a positive integer", toks[1]);
            emit({Repeat{static_cast<std::int64_t>(n), {}}});
            open_block(&std::get<Repeat>(stack_.back()->back().op).body);
        } else {
            fail("unknown instruction '" + std::string(kw) + "'", toks[0]);
        }
    }

    void open_block(std::vector<Instruction> *body) {
        stack_.push_back(body);
        open_lines_.push_back(line_no_);
    }

    void primitive(const std::vector<Token> &toks) {
        if (!top_level()) fail("prim must be at top level", toks[0]);
        if (toks.size() < 3) fail("prim needs an id and a kind or file", toks[0]);
        PulsePrimitive p;
        p.id = std::string(toks[1].text);
        if (prog_.primitives.count(p.id)) fail("primitive '" + p.id + "' defined twice", toks[1]);
        std::size_t i = 2;
        if (toks[2].text == "file") {
            p.kind = PrimitiveKind::Envelope;
        } else {
            try {
                p.kind = primitive_kind_from(std::string(toks[2].text));
            } catch (const InvalidArgument &e) {
                fail(e.what(), toks[2]);
            }
            ++i;
        }
        if (i < toks.size() && toks[i].text == "file") {
            if (i + 2 != toks.size()) fail("prim ... file expects exactly one path", toks[i]);
            p.samples = read_values_file(toks[i + 1], toks[i + 1].text);
        } else {
            for (; i < toks.size(); ++i) p.samples.push_back(number(toks[i], "sample"));
        }
        if (p.samples.empty()) fail("primitive '" + p.id + "' has no samples", toks[1]);
        for (double v : p.samples)
            if (std::abs(v) > 1.0) fail("primitive '" + p.id + "' has a sample outside [-1, 1]", toks[1]);
        prog_.primitives.emplace(p.id, std::move(p));
    }

    std::filesystem::path base_;
    std::vector<std::string_view> lines_;
    std::size_t line_no_ = 0;
    PulseProgram prog_;
    std::optional<double> rate_;
    bool seen_content_ = false;
    std::vector<std::vector<Instruction> *> stack_;
    std::vector<std::size_t> open_lines_;
    std::vector<PendingRef> refs_;
};

void write_block(std::ostringstream &os, const std::vector<Instruction> &list, int depth) {
    const std::string pad(2 * depth, ' ');
    for (const auto &ins : list) {
        std::visit(
            [&](const auto &op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, PlayXY>) {
                    os << pad << "xy " << op.primitive << " amp=" << fmt(op.amplitude)
                       << " phase=" << fmt(op.phase) << '\n';
                } else if constexpr (std::is_same_v<T, PlayZ>) {
                    os << pad << "z rise=" << op.rise << " hold=" << fmt(op.hold_amplitude) << ','
                       << fmt(op.hold_ns) << " fall=" << op.fall << " {\n";
                    write_block(os, op.body, depth + 1);
                    os << pad << "}\n";
                } else if constexpr (std::is_same_v<T, VirtualZ>) {
                    os << pad << "vz " << fmt(op.phase) << '\n';
                } else if constexpr (std::is_same_v<T, SetCarrier>) {
                    os << pad << "carrier " << fmt(op.frequency_ghz) << '\n';
                } else if constexpr (std::is_same_v<T, Delay>) {
                    os << pad << "delay " << fmt(op.duration_ns) << '\n';
                } else {
                    os << pad << "repeat " << op.count << " {\n";
                    write_block(os, op.body, depth + 1);
                    os << pad << "}\n";
                }
            },
            ins.op);
    }
}

}  // namespace

double parse_angle(std::string_view s) {
    auto v = to_angle(s);
    if (!v) throw InvalidArgument("not an angle: '" + std::string(s) + "'");
    return *v;
}

PulseProgram parse_program(std::string_view text, const std::filesystem::path &base_dir) {
    return Parser(text, base_dir).run();
}

PulseProgram load_program(const std::filesystem::path &file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open program file '" + file.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str(), file.parent_path());
}

std::string serialize(const PulseProgram &p) {
    std::ostringstream os;
    os << "rate " << fmt(p.sample_rate_gsps) << '\n';
    os << "initial_carrier " << fmt(p.initial_carrier_ghz) << '\n';
    for (const auto &[id, prim] : p.primitives) {
        os << "prim " << id << ' ' << to_string(prim.kind);
        for (double v : prim.samples) os << ' ' << fmt(v);
        os << '\n';
    }
    write_block(os, p.instructions, 0);
    return os.str();
}

}  // namespace fluxctl::pulsec
