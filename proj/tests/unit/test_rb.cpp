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


#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fluxctl/analysis.hpp"
#include "fluxctl/clifford.hpp"
#include "fluxctl/errors.hpp"
#include "fluxctl/pulse_compiler.hpp"
#include "fluxctl/rb.hpp"

namespace rb = fluxctl::rb;

namespace {

Eigen::Matrix2cd product(std::span<const int> seq) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    for (int c : seq) u = rb::clifford_unitary(c) * u;
    return u;
}

bool proportional_to_identity(const Eigen::Matrix2cd &u, double tol = 1e-9) {
    return std::abs(u(0, 1)) < tol && std::abs(u(1, 0)) < tol && std::abs(u(0, 0) - u(1, 1)) < tol;
}

}  // namespace

TEST(Clifford, TableIsAGroup) {
    const auto &t = rb::cayley_table();
    int identity = -1;
    for (int a = 0; a < rb::kCliffordCount; ++a) {
        std::set<int> row(t[a].begin(), t[a].end());
        EXPECT_EQ(row.size(), 24u);
        EXPECT_GE(*row.begin(), 0);
        EXPECT_LT(*row.rbegin(), 24);
        if (proportional_to_identity(rb::clifford_unitary(a))) identity = a;
    }
    ASSERT_GE(identity, 0);
    for (int a = 0; a < 24; ++a) {
        EXPECT_EQ(t[a][rb::inverse_of(a)], identity);
        for (int b = 0; b < 24; ++b)
            for (int c = 0; c < 24; ++c) EXPECT_EQ(t[t[a][b]][c], t[a][t[b][c]]);
    }
}

TEST(Clifford, DecompositionsRealiseElements) {
    std::set<int> seen;
    for (int c = 0; c < 24; ++c) {
        Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
        int pulses = 0;
        for (auto g : rb::clifford_gates(c)) {
            u = rb::gate_unitary(g) * u;
            pulses += rb::is_virtual(g) ? 0 : 1;
        }
        EXPECT_EQ(rb::find_clifford(u), c);
        EXPECT_LE(pulses, 3);
        seen.insert(rb::find_clifford(rb::clifford_unitary(c)));
    }
    EXPECT_EQ(seen.size(), 24u);
}

TEST(Clifford, RecoveryClosesRandomSequences) {
    std::mt19937_64 rng(3);
    for (int m : {1, 2, 17, 200}) {
        const auto seq = rb::random_sequence(m, rng);
        ASSERT_EQ(seq.size(), std::size_t(m) + 1);
        EXPECT_TRUE(proportional_to_identity(product(seq)));
        const auto inter = rb::random_sequence(m, rng, 5);
        ASSERT_EQ(inter.size(), 2 * std::size_t(m) + 1);
        for (int i = 1; i < 2 * m; i += 2) EXPECT_EQ(inter[i], 5);
        EXPECT_TRUE(proportional_to_identity(product(inter)));
    }
}

TEST(RbProgram, IdealInterpretationMatchesCliffordProduct) {
    std::mt19937_64 rng(9);
    auto cal = rb::ideal_calibration(0.22);
    for (auto [offset, sign] : {std::pair{0.0, 1}, {-3.035, 1}, {1.2, -1}}) {
        cal.axis_offset = offset;
        cal.sign = sign;
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<int> seq(12);
            for (int &c : seq) c = int(rng() % 24);
            const auto prog = rb::build_rb_program(seq, cal);
            const Eigen::Matrix2cd u = rb::ideal_program_unitary(prog, cal);
            // Trailing frame updates are dropped, so agreement is up to a final Z.
            const Eigen::Matrix2cd d = product(seq) * u.adjoint();
            EXPECT_LT(std::abs(d(0, 1)) + std::abs(d(1, 0)), 1e-9);
        }
    }
}

TEST(RbProgram, StoresOneHalfPiEnvelope) {
    std::mt19937_64 rng(1);
    const auto seq = rb::random_sequence(3000, rng);
    const auto prog = rb::build_rb_program(seq, rb::ideal_calibration(0.22));
    const auto r = fluxctl::pulsec::memory_report(prog, fluxctl::pulsec::SynthesisConfig{});
    EXPECT_EQ(r.unique_primitives, 1u);
    EXPECT_DOUBLE_EQ(r.stored_ns, 20.0);
    EXPECT_GT(r.sequence_ns, 50000.0);
    ASSERT_TRUE(r.ratio);
    EXPECT_GT(*r.ratio, 500.0);
}

TEST(RunRb, PerfectGatesSurvive) {
    rb::RbOptions opt;
    opt.lengths = {1, 10, 100};
    opt.sequences_per_length = 3;
    const auto res = rb::run_rb(opt, rb::ideal_calibration(0.22));
    ASSERT_EQ(res.points.size(), 9u);
    for (const auto &p : res.points) EXPECT_NEAR(p.survival, 1.0, 1e-12);
}

TEST(RunRb, RecoversInjectedDepolarizing) {
    rb::RbOptions opt;
    opt.lengths = {1, 5, 10, 25, 50, 100, 200, 400};
    opt.depolarizing_p = 0.999;
    opt.seed = 4;
    const auto res = rb::run_rb(opt, rb::ideal_calibration(0.22));
    std::vector<double> m, s;
    for (const auto &p : res.points) {
        m.push_back(p.length);
        s.push_back(p.survival);
    }
    const auto fit = fluxctl::analysis::fit_rb_decay(m, s);
    EXPECT_NEAR(fit.p, 0.999, 1e-6);
    EXPECT_NEAR(fit.f_avg, 1 - 0.001 / 2, 1e-6);
}

TEST(RunRb, PerfectInterleavedGateHasUnitFidelity) {
    rb::RbOptions ref;
    ref.lengths = {1, 10, 50, 100, 200};
    ref.depolarizing_p = 0.995;
    auto inter = ref;
    inter.interleaved = 3;
    auto fit = [](const rb::RbResult &r) {
        std::vector<double> m, s;
        for (const auto &p : r.points) {
            m.push_back(p.length);
            s.push_back(p.survival);
        }
        return fluxctl::analysis::fit_rb_decay(m, s).p;
    };
    const auto cal = rb::ideal_calibration(0.22);
    const auto est = fluxctl::analysis::interleaved_fidelity(fit(rb::run_rb(ref, cal)), fit(rb::run_rb(inter, cal)));
    EXPECT_NEAR(est.fidelity, 1.0, 1e-6);
}

TEST(RunRb, SeedDeterminesPoints) {
    rb::RbOptions opt;
    opt.lengths = {3, 30};
    opt.depolarizing_p = 0.99;
    opt.seed = 77;
    const auto cal = rb::ideal_calibration(0.22);
    const auto a = rb::run_rb(opt, cal), b = rb::run_rb(opt, cal);
    for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].survival, b.points[i].survival);
    EXPECT_EQ(a.program, b.program);
}

TEST(RunRb, ValidatesOptions) {
    const auto cal = rb::ideal_calibration(0.22);
    rb::RbOptions opt;
    EXPECT_THROW(rb::run_rb(opt, cal), fluxctl::InvalidArgument);
    opt.lengths = {1};
    opt.mode = rb::RbMode::Pulse;
    EXPECT_THROW(rb::run_rb(opt, cal), fluxctl::InvalidArgument);
    opt.mode = rb::RbMode::IdealGates;
    opt.depolarizing_p = 1.5;
    EXPECT_THROW(rb::run_rb(opt, cal), fluxctl::InvalidArgument);
}

TEST(RunRb, MeanSurvivalGroupsByLength) {
    const std::vector<rb::RbPoint> pts{{5, 0, 0.9}, {5, 1, 0.7}, {1, 0, 1.0}};
    const auto m = rb::mean_survival(pts);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0].first, 5);
    EXPECT_NEAR(m[0].second, 0.8, 1e-15);
    EXPECT_EQ(m[1].first, 1);
}
