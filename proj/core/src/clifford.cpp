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


#include "fluxctl/clifford.hpp"

#include <cmath>
#include <complex>
#include <mutex>

#include "fluxctl/errors.hpp"
#include "fluxctl/units.hpp"

namespace fluxctl::rb {
namespace {

using G = Gate;

// Fewest X pulses first, then fewest virtual rotations.
const std::array<std::vector<Gate>, kCliffordCount> kTable = {{
    {},
    {G::Z180},
    {G::Z90},
    {G::Zm90},
    {G::X90},
    {G::Xm90},
    {G::X90, G::Z180},
    {G::X90, G::Z90},
    {G::X90, G::Zm90},
    {G::Xm90, G::Z180},
    {G::Xm90, G::Z90},
    {G::Xm90, G::Zm90},
    {G::Z90, G::X90},
    {G::Z90, G::Xm90},
    {G::Zm90, G::X90},
    {G::Zm90, G::Xm90},
    {G::Z90, G::X90, G::Z90},
    {G::Z90, G::X90, G::Zm90},
    {G::Z90, G::Xm90, G::Z90},
    {G::Z90, G::Xm90, G::Zm90},
    {G::X90, G::X90},
    {G::X90, G::X90, G::Z180},
    {G::X90, G::X90, G::Z90},
    {G::X90, G::X90, G::Zm90},
}};

Eigen::Matrix2cd rotation(char axis, double theta) {
    using C = std::complex<double>;
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Eigen::Matrix2cd u;
    if (axis == 'x')
        u << c, C(0, -s), C(0, -s), c;
    else
        u << std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2);
    return u;
}

}  // namespace

const char *to_string(Gate g) {
    switch (g) {
        case G::X90: return "X90";
        case G::Xm90: return "Xm90";
        case G::Z90: return "Z90";
        case G::Zm90: return "Zm90";
        case G::Z180: return "Z180";
    }
    return "?";
}

bool is_virtual(Gate g) { return g == G::Z90 || g == G::Zm90 || g == G::Z180; }

double z_angle(Gate g) {
    switch (g) {
        case G::Z90: return units::pi / 2;
        case G::Zm90: return -units::pi / 2;
        case G::Z180: return units::pi;
        default: return 0.0;
    }
}

Eigen::Matrix2cd gate_unitary(Gate g) {
    switch (g) {
        case G::X90: return rotation('x', units::pi / 2);
        case G::Xm90: return rotation('x', -units::pi / 2);
        default: return rotation('z', z_angle(g));
    }
}

std::span<const Gate> clifford_gates(int index) {
    if (index < 0 || index >= kCliffordCount) throw InvalidArgument("clifford index out of range");
    return kTable[index];
}

Eigen::Matrix2cd clifford_unitary(int index) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    for (Gate g : clifford_gates(index)) u = gate_unitary(g) * u;
    return u;
}

int find_clifford(const Eigen::Matrix2cd &u, double tol) {
    for (int k = 0; k < kCliffordCount; ++k) {
        // |Tr(C^dagger U)| = 2 iff equal up to phase (both unitary).
        const double overlap = std::abs((clifford_unitary(k).adjoint() * u).trace());
        if (std::abs(overlap - 2.0) < tol) return k;
    }
    return -1;
}

const CayleyTable &cayley_table() {
    static CayleyTable table;
    static std::once_flag once;
    std::call_once(once, [] {
        for (int a = 0; a < kCliffordCount; ++a)
            for (int b = 0; b < kCliffordCount; ++b) {
                const int k = find_clifford(clifford_unitary(b) * clifford_unitary(a));
                if (k < 0) throw NumericalFailure("clifford table is not closed");
                table[a][b] = k;
            }
    });
    return table;
}

int inverse_of(int index) {
    const auto &t = cayley_table();
    for (int k = 0; k < kCliffordCount; ++k)
        if (t[index][k] == 0) return k;
    throw NumericalFailure("clifford element without inverse");
}

int recovery_for(std::span<const int> sequence) {
    const auto &t = cayley_table();
    int acc = 0;
    for (int c : sequence) acc = t[acc][c];
    return inverse_of(acc);
}

}  // namespace fluxctl::rb
