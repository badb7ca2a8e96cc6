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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fluxctl::rb {

/// Physical generators: +-X_{pi/2} pulses and virtual Z rotations.
enum class Gate : std::uint8_t { X90, Xm90, Z90, Zm90, Z180 };

inline constexpr int kCliffordCount = 24;

const char *to_string(Gate g);
bool is_virtual(Gate g);
/// Z angle for virtual gates, 0 otherwise.
double z_angle(Gate g);

Eigen::Matrix2cd gate_unitary(Gate g);

/// Canonical decomposition of each group element, applied left to right.
std::span<const Gate> clifford_gates(int index);
Eigen::Matrix2cd clifford_unitary(int index);

/// Index of the element equal to u up to global phase, or -1.
int find_clifford(const Eigen::Matrix2cd &u, double tol = 1e-9);

using CayleyTable = std::array<std::array<int, kCliffordCount>, kCliffordCount>;

/// table[a][b] = element for "a then b"; throws NumericalFailure if a
/// product falls outside the table.
const CayleyTable &cayley_table();
int inverse_of(int index);

/// Element that returns the product of the sequence to the identity.
int recovery_for(std::span<const int> sequence);

}  // namespace fluxctl::rb
