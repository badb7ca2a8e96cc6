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


#include "fluxctl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "fluxctl/errors.hpp"
#include "json.hpp"

namespace fluxctl::io {

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw NumericalFailure("sha256: digest failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string sha256_hex(const std::string &text) {
    return sha256_hex(std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::size_t CsvTable::index_of(const std::string &name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    std::string cols;
    for (const auto &h : header) cols += (cols.empty() ? "" : ",") + h;
    throw InvalidArgument("csv: no column '" + name + "' (have: " + cols + ")");
}

std::vector<double> CsvTable::column(const std::string &name) const {
    const std::size_t k = index_of(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) out.push_back(r[k]);
    return out;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

CsvTable parse_csv(const std::string &text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::vector<std::pair<std::string, std::size_t>> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string raw = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            const std::size_t lead = raw.find_first_not_of(" \t");
            fields.emplace_back(trim(raw), start + 1 + (lead == std::string::npos ? 0 : lead));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (t.header.empty()) {
            for (auto &[f, col] : fields) {
                if (f.empty()) throw ParseError("empty column name", line_no, col);
                t.header.push_back(f);
            }
            continue;
        }
        if (fields.size() != t.header.size())
            throw ParseError("expected " + std::to_string(t.header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no, 1);
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto &[f, col] : fields) {
            double v = 0.0;
            const char *b = f.data(), *e = f.data() + f.size();
            if (!f.empty() && *b == '+') ++b;
            const auto r = std::from_chars(b, e, v);
            if (f.empty() || r.ec != std::errc() || r.ptr != e || !std::isfinite(v))
                throw ParseError("not a number: '" + f + "'", line_no, col);
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw ParseError("missing header line", line_no == 0 ? 1 : line_no, 1);
    return t;
}

std::string read_text(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + path + "'");
    f << text;
    if (!f) throw InvalidArgument("write failed for '" + path + "'");
}

CsvTable read_csv(const std::string &path) {
    const std::string text = read_text(path);
    try {
        return parse_csv(text);
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2),
                         e.line, e.column);
    }
}

void write_csv(std::ostream &os, std::span<const std::string> header,
               const std::vector<std::vector<double>> &rows) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto &r : rows) {
        if (r.size() != header.size()) throw InvalidArgument("csv: row width differs from header");
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
        os << '\n';
    }
}

std::vector<std::uint8_t> encode_int16le(std::span<const std::int16_t> codes) {
    std::vector<std::uint8_t> out(2 * codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const auto u = static_cast<std::uint16_t>(codes[i]);
        out[2 * i] = static_cast<std::uint8_t>(u & 0xff);
        out[2 * i + 1] = static_cast<std::uint8_t>(u >> 8);
    }
    return out;
}

std::string write_waveform(const std::string &path, const WaveformFile &w) {
    const auto bytes = encode_int16le(w.codes);
    const std::string digest = sha256_hex(bytes);
    {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write '" + path + "'");
        f.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!f) throw InvalidArgument("write failed for '" + path + "'");
    }
    nlohmann::ordered_json side;
    side["sample_rate_gsps"] = w.sample_rate_gsps;
    side["length"] = w.codes.size();
    side["dac_bits"] = w.dac_bits;
    side["full_scale_v"] = w.full_scale_v;
    side["encoding"] = "int16le";
    side["sha256"] = digest;
    write_text(path + ".json", side.dump(2) + "\n");
    return digest;
}

WaveformFile read_waveform(const std::string &path) {
    const std::string payload = read_text(path);
    nlohmann::json side;
    try {
        side = nlohmann::json::parse(read_text(path + ".json"));
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument("waveform sidecar: " + std::string(e.what()));
    }
    WaveformFile w;
    w.sample_rate_gsps = side.at("sample_rate_gsps").get<double>();
    w.dac_bits = side.at("dac_bits").get<int>();
    w.full_scale_v = side.value("full_scale_v", 0.5);
    const auto len = side.at("length").get<std::size_t>();
    if (payload.size() != 2 * len) throw InvalidArgument("waveform: payload length does not match sidecar");
    if (sha256_hex(payload) != side.at("sha256").get<std::string>())
        throw InvalidArgument("waveform: payload checksum mismatch");
    w.codes.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        const auto lo = static_cast<std::uint8_t>(payload[2 * i]), hi = static_cast<std::uint8_t>(payload[2 * i + 1]);
        w.codes[i] = static_cast<std::int16_t>(static_cast<std::uint16_t>(lo | (hi << 8)));
    }
    return w;
}

}  // namespace fluxctl::io
