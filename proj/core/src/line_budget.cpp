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


#include "fluxctl/line_budget.hpp"

#include <cmath>
#include <sstream>

#include "fluxctl/errors.hpp"
#include "fluxctl/parallel.hpp"
#include "fluxctl/units.hpp"

namespace fluxctl::line {

void LineModel::validate() const {
    if (!(mutual_inductance_h > 0.0)) throw InvalidArgument("line: mutual inductance must be > 0");
    if (!(impedance_ohm > 0.0)) throw InvalidArgument("line: impedance must be > 0");
    if (!(awg_vmax > 0.0)) throw InvalidArgument("line: awg_vmax must be > 0");
    if (!(attenuation_db <= 0.0) || !std::isfinite(attenuation_db))
        throw InvalidArgument("line: attenuation_db must be finite and <= 0");
    if (!std::isfinite(awg_noise_dbm_per_hz)) throw InvalidArgument("line: bad AWG noise floor");
}

double LineModel::transmission() const { return units::db_to_amplitude(attenuation_db); }

double LineModel::phase_per_volt() const {
    return units::two_pi * mutual_inductance_h * transmission() / (impedance_ohm * units::flux_quantum);
}

double flux_drive_amplitude(const LineModel &line, double v0) {
    line.validate();
    if (!(v0 >= 0.0)) throw InvalidArgument("flux_drive_amplitude: v0 must be >= 0");
    if (v0 > line.awg_vmax)
        throw SaturationError("flux_drive_amplitude: v0 exceeds awg_vmax", v0, 0);
    return line.phase_per_volt() * v0;
}

double rabi_frequency_mhz(double e_l_ghz, double dphi, double m01) {
    if (!(e_l_ghz >= 0.0) || !(dphi >= 0.0) || !(m01 >= 0.0))
        throw InvalidArgument("rabi_frequency: inputs must be non-negative");
    return e_l_ghz * dphi * m01 * 1e3;
}

double awg_noise_psd(double dbm_per_hz, double z0) {
    if (!(z0 >= 0.0)) throw InvalidArgument("awg_noise_psd: z0 must be >= 0");
    return 0.5 * units::dbm_to_watt(dbm_per_hz) * z0;
}

double johnson_psd(double temperature_k, double z0) {
    if (!(temperature_k >= 0.0)) throw InvalidArgument("johnson_psd: temperature must be >= 0");
    if (!(z0 >= 0.0)) throw InvalidArgument("johnson_psd: z0 must be >= 0");
    return 2.0 * units::boltzmann * temperature_k * z0;
}

T1Limit t1_line_limit(double e_l_ghz, double m01, const LineModel &line, double s_vv) {
    line.validate();
    if (!(s_vv >= 0.0)) throw InvalidArgument("t1_line_limit: s_vv must be >= 0");
    if (!(m01 > 0.0)) throw InvalidArgument("t1_line_limit: m01 must be > 0");
    if (!(e_l_ghz > 0.0)) throw InvalidArgument("t1_line_limit: e_l must be > 0");
    if (s_vv == 0.0) return T1Limit{true, 0.0};
    const double e_l = units::ghz_to_joule(e_l_ghz);
    const double k = units::two_pi * e_l * line.mutual_inductance_h * line.transmission() /
                     (units::flux_quantum * line.impedance_ohm);
    const double rate = k * k * m01 * m01 * s_vv / (units::hbar * units::hbar);  // 1/s
    return T1Limit{false, 1e6 / rate};
}

double max_dc_excursion(const LineModel &line) {
    return flux_drive_amplitude(line, line.awg_vmax) / units::two_pi;
}

TradeoffTable tradeoff_sweep(const fluxonium::Params &qubit, const LineModel &tmpl,
                             std::span<const double> grid, const TradeoffOptions &opt) {
    if (grid.empty()) throw InvalidArgument("tradeoff_sweep: empty attenuation grid");
    tmpl.validate();
    const auto spec = fluxonium::spectrum(qubit, 2);
    TradeoffTable table;
    table.f01_ghz = spec.f01();
    table.m01 = spec.matrix_element(0, 1);
    table.points.resize(grid.size());
    double s_vv = awg_noise_psd(tmpl.awg_noise_dbm_per_hz, tmpl.impedance_ohm);
    if (opt.include_johnson) s_vv += johnson_psd(opt.temperature_k, tmpl.impedance_ohm);
    parallel_for(grid.size(), [&](std::size_t i) {
        LineModel l = tmpl;
        l.attenuation_db = grid[i];
        try {
            TradeoffPoint &pt = table.points[i];
            pt.attenuation_db = grid[i];
            pt.rabi_mhz = rabi_frequency_mhz(qubit.e_l, flux_drive_amplitude(l, l.awg_vmax), table.m01);
            pt.t1_line = t1_line_limit(qubit.e_l, table.m01, l, s_vv);
            pt.max_dc_excursion_phi0 = max_dc_excursion(l);
        } catch (const InvalidArgument &e) {
            std::ostringstream msg;
            msg << "tradeoff_sweep at " << grid[i] << " dB: " << e.what();
            throw InvalidArgument(msg.str());
        }
    });
    return table;
}

double loglog_slope(std::span<const double> db, std::span<const double> y) {
    if (db.size() != y.size() || db.size() < 2)
        throw InvalidArgument("loglog_slope: need two or more matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(db.size());
    for (std::size_t i = 0; i < db.size(); ++i) {
        const double x = db[i] / 20.0 * std::log(10.0);  // ln(alpha)
        const double v = std::log(y[i]);
        sx += x, sy += v, sxx += x * x, sxy += x * v;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fluxctl::line
