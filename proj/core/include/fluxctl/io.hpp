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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fluxctl/waveform.hpp"

namespace fluxctl::io {

std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_hex(const std::string &text);

/// Shortest round-trip decimal form.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Column by name; throws InvalidArgument listing the header if absent.
    std::vector<double> column(const std::string &name) const;
    std::size_t index_of(const std::string &name) const;
};

/// Header line required; '#' lines and blank lines skipped. ParseError
/// carries the 1-based line and column of the offending field.
CsvTable parse_csv(const std::string &text);
CsvTable read_csv(const std::string &path);

void write_csv(std::ostream &os, std::span<const std::string> header,
               const std::vector<std::vector<double>> &rows);

std::string read_text(const std::string &path);
void write_text(const std::string &path, const std::string &text);

struct WaveformFile {
    double sample_rate_gsps = 0.0;
    int dac_bits = 16;
    double full_scale_v = 0.5;
    std::vector<std::int16_t> codes;
};

/// Little-endian int16 payload as bytes.
std::vector<std::uint8_t> encode_int16le(std::span<const std::int16_t> codes);

/// Writes <path> (payload) and <path>.json (sidecar); returns the payload sha256.
std::string write_waveform(const std::string &path, const WaveformFile &w);
/// Reads and verifies a payload against its sidecar.
WaveformFile read_waveform(const std::string &path);

}  // namespace fluxctl::io
