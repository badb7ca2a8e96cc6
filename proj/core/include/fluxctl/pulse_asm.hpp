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

#include <filesystem>
#include <string>
#include <string_view>

#include "fluxctl/pulse_program.hpp"

namespace fluxctl::pulsec {

/// Parses pulse assembly. Relative `prim ... file` paths resolve against
/// base_dir. Errors are ParseError with line and column.
PulseProgram parse_program(std::string_view text, const std::filesystem::path &base_dir = {});

PulseProgram load_program(const std::filesystem::path &file);

/// Canonical text form; parse_program(serialize(p)) == p.
std::string serialize(const PulseProgram &p);

/// Parses a number or a multiple of pi: 1.5, -pi, pi/2, 3*pi/4, -0.5*pi.
double parse_angle(std::string_view s);

}  // namespace fluxctl::pulsec
