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

#include <span>
#include <vector>

#include "fluxctl/fluxonium.hpp"

namespace fluxctl::line {

/// Single flux line from the AWG to the qubit loop.
struct LineModel {
    double mutual_inductance_h = 2e-12;
    double impedance_ohm = 50.0;
    double attenuation_db = -50.0;  // voltage attenuation, <= 0
    double awg_noise_dbm_per_hz = -130.0;
    double awg_vmax = 0.5;

    void validate() const;
    double transmission() const;  // alpha = 10^(dB/20)
    /// Radians of delta-phi per volt at the AWG output.
    double phase_per_volt() const;
    bool operator==(const LineModel &) const = default;
};

/// 2 pi M (alpha v0 / Z0) / Phi0, radians. Throws SaturationError above awg_vmax.
double flux_drive_amplitude(const LineModel &line, double v0);

/// Omega_R / 2pi = e_l * dphi * m01, returned in MHz.
double rabi_frequency_mhz(double e_l_ghz, double dphi_amp, double m01);

/// 1/2 * 10^((dBm - 30)/10) * Z0, V^2/Hz.
double awg_noise_psd(double noise_dbm_per_hz, double z0_ohm);

/// 2 k_B T Z0, V^2/Hz.
double johnson_psd(double temperature_k, double z0_ohm);

/// Line-noise limit on T1. A zero noise density gives the unlimited variant.
struct T1Limit {
    bool unlimited = false;
    double t1_us = 0.0;  // meaningful only when !unlimited
};

/// 1/T1 = (1/hbar^2) (2 pi E_L M alpha / (Phi0 Z0))^2 m01^2 S_VV, all SI,
/// with S_VV the double-sided voltage noise density at the AWG.
T1Limit t1_line_limit(double e_l_ghz, double m01, const LineModel &line, double s_vv);

/// Quasi-dc flux at full AWG scale, Phi0.
double max_dc_excursion(const LineModel &line);

struct TradeoffPoint {
    double attenuation_db = 0.0;
    double rabi_mhz = 0.0;
    T1Limit t1_line;
    double max_dc_excursion_phi0 = 0.0;
};

struct TradeoffOptions {
    bool include_johnson = false;
    double temperature_k = 300.0;
};

struct TradeoffTable {
    double f01_ghz = 0.0;
    double m01 = 0.0;
    std::vector<TradeoffPoint> points;
};

/// Evaluates each attenuation with the template's other fields, driving at
/// full AWG scale.
TradeoffTable tradeoff_sweep(const fluxonium::Params &qubit, const LineModel &line_template,
                             std::span<const double> attenuation_grid_db,
                             const TradeoffOptions &opt = {});

/// Least-squares slope of log(y) against log(alpha).
double loglog_slope(std::span<const double> attenuation_db, std::span<const double> y);

}  // namespace fluxctl::line
