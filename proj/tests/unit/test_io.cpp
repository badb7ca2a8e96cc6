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


#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fluxctl/devices.hpp"
#include "fluxctl/distortion.hpp"
#include "fluxctl/errors.hpp"
#include "fluxctl/io.hpp"
#include "fluxctl/transfer_function.hpp"
#include "fluxctl/design_io.hpp"
#include "fluxctl/scenario_io.hpp"

namespace io = fluxctl::io;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() / "fluxctl_unit";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Sha256, KnownDigests) {
    EXPECT_EQ(io::sha256_hex(std::string()), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(io::sha256_hex(std::string("abc")),
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Csv, ParsesWithCommentsAndBlanks) {
    const auto t = io::parse_csv("# note\na,b\n\n1,2.5\n# mid\n-3,4e-2\n");
    EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.column("b"), (std::vector<double>{2.5, 0.04}));
    EXPECT_EQ(t.index_of("a"), 0u);
    EXPECT_THROW(t.column("c"), fluxctl::InvalidArgument);
}

TEST(Csv, ErrorsPointAtField) {
    try {
        io::parse_csv("a,b\n1,2\n3,x\n");
        FAIL();
    } catch (const fluxctl::ParseError &e) {
        EXPECT_EQ(e.line, 3u);
        EXPECT_EQ(e.column, 3u);
    }
    EXPECT_THROW(io::parse_csv("a,b\n1,2,3\n"), fluxctl::ParseError);
    try {
        io::read_csv(FLUXCTL_TEST_DIR "/fixtures/malformed.csv");
        FAIL();
    } catch (const fluxctl::ParseError &e) {
        EXPECT_EQ(e.line, 4u);
    }
}

TEST(Csv, WriteReadRoundTrip) {
    const std::vector<std::string> header{"x", "y"};
    const std::vector<std::vector<double>> rows{{0.1, 1.0 / 3.0}, {-2e-300, 12345.678}};
    std::ostringstream os;
    io::write_csv(os, header, rows);
    const auto t = io::parse_csv(os.str());
    EXPECT_EQ(t.rows, rows);
    EXPECT_EQ(io::format_double(0.1), "0.1");
}

TEST(WaveformFile, SidecarRoundTrip) {
    io::WaveformFile w;
    w.sample_rate_gsps = 2.0;
    w.codes = {0, 1, -1, 32767, -32767, 1234};
    const auto path = scratch("wf.bin").string();
    const auto sha = io::write_waveform(path, w);
    EXPECT_EQ(sha, io::sha256_hex(io::encode_int16le(w.codes)));
    const auto back = io::read_waveform(path);
    EXPECT_EQ(back.codes, w.codes);
    EXPECT_EQ(back.sample_rate_gsps, 2.0);
    const auto bytes = io::encode_int16le(w.codes);
    EXPECT_EQ(bytes[2], 0x01);
    EXPECT_EQ(bytes[3], 0x00);
    EXPECT_EQ(bytes[4], 0xff);
    EXPECT_EQ(bytes[5], 0xff);
}

TEST(WaveformFile, DetectsTamperedPayload) {
    io::WaveformFile w;
    w.sample_rate_gsps = 1.0;
    w.codes = {5, 6, 7};
    const auto path = scratch("tamper.bin").string();
    io::write_waveform(path, w);
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.put(9);
    }
    EXPECT_THROW(io::read_waveform(path), fluxctl::Error);
}

TEST(Registry, BundledTable) {
    const auto &r = fluxctl::devices::bundled_registry();
    ASSERT_EQ(r.devices.size(), 8u);
    const auto &a = r.find("A");
    EXPECT_EQ(a.fq_mhz, 208);
    ASSERT_TRUE(a.fidelity_pct);
    EXPECT_DOUBLE_EQ(*a.fidelity_pct, 99.990);
    for (const char *n : {"F", "G", "H"}) EXPECT_FALSE(r.find(n).fidelity_pct.has_value());
    EXPECT_EQ(r.find("H").gate_ns, 200);
    ASSERT_EQ(r.noise.size(), 1u);
    EXPECT_DOUBLE_EQ(r.noise[0].flux_noise_1f_uphi0, 8.11);
    EXPECT_THROW(r.find("Z"), fluxctl::InvalidArgument);
}

TEST(Registry, ChecksumAndRoundTrip) {
    EXPECT_EQ(fluxctl::devices::bundled_registry_sha256(),
              io::sha256_hex(fluxctl::devices::bundled_registry_json()));
    const auto &r = fluxctl::devices::bundled_registry();
    const auto again = fluxctl::devices::parse_registry(fluxctl::devices::to_json(r));
    ASSERT_EQ(again.devices.size(), r.devices.size());
    for (std::size_t i = 0; i < r.devices.size(); ++i) {
        EXPECT_EQ(again.devices[i].name, r.devices[i].name);
        EXPECT_EQ(again.devices[i].fidelity_pct, r.devices[i].fidelity_pct);
        EXPECT_EQ(again.devices[i].t2echo_us, r.devices[i].t2echo_us);
    }
    EXPECT_THROW(fluxctl::devices::parse_registry("{\"devices\": [{\"name\": \"A\"}, {\"name\": \"A\"}]}"),
                 fluxctl::Error);
}

TEST(Scenario, ParsesKnownKeys) {
    const auto s = fluxctl::cli::parse_scenario(
        R"({"attenuation_db": -35, "levels": 3, "channel_cutoff_ghz": 0.1, "pulse_ns": 30})");
    EXPECT_EQ(s.scenario.line.attenuation_db, -35);
    EXPECT_EQ(s.scenario.levels, 3);
    EXPECT_EQ(s.shape.duration_ns, 30);
    EXPECT_EQ(s.scenario.channel, fluxctl::filters::gaussian_lowpass(0.1));
}

TEST(Scenario, UnknownKeyListsValidOnes) {
    try {
        fluxctl::cli::parse_scenario(R"({"attenuation": -35})");
        FAIL();
    } catch (const fluxctl::InvalidArgument &e) {
        EXPECT_NE(std::string(e.what()).find("attenuation_db"), std::string::npos);
    }
}

TEST(DesignFiles, IirRoundTrip) {
    const auto c = fluxctl::filters::design_iir_corrector(
        fluxctl::distortion::reference_flux_line_tail().terms, 2.0);
    const auto back = fluxctl::cli::iir_from_json(fluxctl::cli::to_json(c));
    EXPECT_EQ(back, c);
}

TEST(DesignFiles, FirRoundTrip) {
    const auto inv = fluxctl::filters::bounded_inverse(fluxctl::filters::gaussian_lowpass(0.092), 0.208);
    const auto f = fluxctl::filters::quantize_taps(fluxctl::filters::synthesize_fir(inv, 16, 2.0));
    const auto j = fluxctl::cli::to_json(f);
    EXPECT_TRUE(j["invariants"]["ok"].get<bool>());
    EXPECT_EQ(fluxctl::cli::fir_from_json(j), f);
}
