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


#include "fluxctl/design_io.hpp"

#include <cmath>
#include <variant>

#include "fluxctl/errors.hpp"
#include "fluxctl/io.hpp"

namespace fluxctl::cli {

ojson to_json(const filters::FirFilter &f) {
    ojson j;
    j["kind"] = "fir";
    j["sample_rate_gsps"] = f.sample_rate_gsps;
    j["taps"] = f.size();
    j["taps_float"] = f.taps_float;
    if (f.quantized()) {
        j["taps_int16"] = f.taps_int16;
        const auto inv = filters::check_invariants(f.taps_int16);
        j["invariants"] = {{"max_abs", inv.max_abs},
                           {"max_asymmetry", inv.max_asymmetry},
                           {"nyquist_ratio", inv.nyquist_ratio},
                           {"ok", inv.ok()}};
    }
    return j;
}

ojson to_json(const filters::IirCorrector &c) {
    ojson j;
    j["kind"] = "iir";
    j["sample_rate_gsps"] = c.sample_rate_gsps;
    j["exponentials"] = ojson::array();
    for (const auto &t : c.source_exponentials)
        j["exponentials"].push_back({{"amplitude", t.amplitude}, {"tau_ns", t.tau_ns}});
    j["sections"] = ojson::array();
    for (const auto &s : c.sections) j["sections"].push_back({{"b0", s.b0}, {"b1", s.b1}, {"a1", s.a1}});
    const auto df = filters::collapse(c);
    j["direct_form"] = {{"b", df.b}, {"a", df.a}, {"coefficients", df.coefficient_count()}};
    return j;
}

ojson to_json(const filters::TransferFunction &h, double grid_max, int n) {
    ojson j;
    if (const auto *g = std::get_if<filters::GaussianLowpass>(&h.kind())) {
        j["kind"] = "gauss";
        j["cutoff_ghz"] = g->cutoff_ghz;
        j["sigma_ns"] = g->sigma();
    } else if (const auto *b = std::get_if<filters::BoundedInverse>(&h.kind())) {
        j["kind"] = "inverse";
        j["cutoff_ghz"] = b->channel.cutoff_ghz;
        j["qubit_ghz"] = b->qubit_ghz;
        j["g_max_db"] = b->g_max_db;
        j["window_cutoff_ghz"] = b->window_cutoff_ghz;
        j["floor"] = b->floor();
        j["floor_frequency_ghz"] = b->floor_frequency();
    } else {
        throw InvalidArgument("design: unsupported transfer function '" + h.kind_name() + "'");
    }
    ojson f = ojson::array(), m = ojson::array();
    for (int i = 0; i < n; ++i) {
        const double x = grid_max * i / std::max(1, n - 1);
        f.push_back(x);
        m.push_back(h.magnitude(x));
    }
    j["response"] = {{"freq_ghz", f}, {"magnitude", m}};
    return j;
}

namespace {

void expect_kind(const ojson &j, const char *kind) {
    if (!j.is_object() || j.value("kind", "") != kind)
        throw InvalidArgument(std::string("design file is not a '") + kind + "' design");
}

ojson parse(const std::string &path) {
    try {
        return ojson::parse(io::read_text(path));
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

}  // namespace

filters::FirFilter fir_from_json(const ojson &j) {
    expect_kind(j, "fir");
    try {
        filters::FirFilter f;
        f.sample_rate_gsps = j.at("sample_rate_gsps").get<double>();
        f.taps_float = j.value("taps_float", std::vector<double>{});
        f.taps_int16 = j.value("taps_int16", std::vector<std::int16_t>{});
        if (f.size() == 0) throw InvalidArgument("fir design has no taps");
        return f;
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("fir design: ") + e.what());
    }
}

filters::IirCorrector iir_from_json(const ojson &j) {
    expect_kind(j, "iir");
    try {
        filters::IirCorrector c;
        c.sample_rate_gsps = j.at("sample_rate_gsps").get<double>();
        for (const auto &t : j.value("exponentials", ojson::array()))
            c.source_exponentials.push_back({t.at("amplitude").get<double>(), t.at("tau_ns").get<double>()});
        for (const auto &s : j.at("sections"))
            c.sections.push_back({s.at("b0").get<double>(), s.at("b1").get<double>(), s.at("a1").get<double>()});
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("iir design: ") + e.what());
    }
}

filters::FirFilter load_fir(const std::string &path) { return fir_from_json(parse(path)); }
filters::IirCorrector load_iir(const std::string &path) { return iir_from_json(parse(path)); }

}  // namespace fluxctl::cli
