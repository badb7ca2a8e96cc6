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

#include <cmath>
#include <numbers>

// Energies are carried as frequencies (E/h in GHz), times in ns, flux in
// units of the flux quantum. SI appears only in the line-budget formulas.
namespace fluxctl::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double flux_quantum = 2.067833848e-15;  // Wb
inline constexpr double planck = 6.62607015e-34;         // J s
inline constexpr double hbar = planck / two_pi;
inline constexpr double boltzmann = 1.380649e-23;        // J/K

inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }
inline double amplitude_to_db(double a) { return 20.0 * std::log10(a); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double ghz_to_joule(double f_ghz) { return planck * f_ghz * 1e9; }

}  // namespace fluxctl::units
