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
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "fluxctl/dynamics.hpp"
#include "fluxctl/errors.hpp"

namespace dy = fluxctl::dynamics;
namespace fl = fluxctl::filters;

namespace {

constexpr double kPi = std::numbers::pi;

dy::DriveScenario bare(int levels) {
    dy::DriveScenario sc;
    sc.levels = levels;
    sc.channel = fl::Identity{};
    return sc;
}

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    return x;
}

Eigen::Matrix2cd rz(double a) {
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    z(0, 0) = std::polar(1.0, -a / 2);
    z(1, 1) = std::polar(1.0, a / 2);
    return z;
}

}  // namespace

TEST(Dynamics, CosineEnvelopeSamples) {
    const auto env = dy::cosine_envelope(20.0, 2.0);
    ASSERT_EQ(env.size(), 40u);
    for (std::size_t k = 0; k < env.size(); ++k)
        EXPECT_NEAR(env[k], 0.5 * (1 - std::cos(2 * kPi * double(k) / 40.0)), 1e-15);
    EXPECT_THROW(dy::cosine_envelope(1.0, 2.0), fluxctl::InvalidArgument);
}

TEST(Dynamics, ZeroDriveOnlyAccruesPhase) {
    const dy::Simulator sim(bare(4));
    const std::vector<double> zero(2000, 0.0);
    const auto out = sim.evolve_flux(zero, {.record_every = 100});
    for (const auto &p : out.populations) EXPECT_NEAR(p[0], 1.0, 1e-12);
    const auto &u = out.final_unitary;
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(std::abs(u(k, k)), 1.0, 1e-12);
        EXPECT_NEAR(std::arg(u(k, k) * std::conj(u(0, 0))),
                    std::remainder(-2 * kPi * sim.spectrum().levels[k] * out.duration_ns, 2 * kPi), 1e-9);
    }
}

TEST(Dynamics, EmptyTraceIsIdentity) {
    const dy::Simulator sim(bare(3));
    const auto out = sim.evolve_flux({});
    EXPECT_TRUE(out.final_unitary.isIdentity(1e-15));
}

TEST(Dynamics, SplitStepMatchesRungeKutta) {
    const dy::Simulator sim(bare(4));
    const double dt = sim.scenario().time_step_ns, el = sim.scenario().qubit.e_l;
    auto drive = [](double t) { return 0.03 * std::sin(2 * kPi * 0.22 * t) * std::sin(kPi * t / 20.0); };
    std::vector<double> dphi(2000);
    for (std::size_t j = 0; j < dphi.size(); ++j) dphi[j] = drive((double(j) + 0.5) * dt);
    const auto ours = sim.evolve_flux(dphi, {.unitary = false});

    Eigen::VectorXd e(4);
    for (int k = 0; k < 4; ++k) e(k) = sim.spectrum().levels[k];
    const Eigen::MatrixXd phi = sim.spectrum().phase_matrix.topLeftCorner(4, 4);
    auto h = [&](double t) -> Eigen::MatrixXcd {
        return (Eigen::MatrixXd(e.asDiagonal()) - el * drive(t) * phi).cast<std::complex<double>>();
    };
    const Eigen::VectorXcd ref =
        fluxctl::oracle::rk4_schrodinger(h, Eigen::VectorXcd::Unit(4, 0), 0.0, 20.0, 40000);
    EXPECT_LT((ours.final_state - ref).norm(), 1e-5);
}

TEST(Dynamics, RabiPeriodMatchesCoupling) {
    const dy::Simulator sim(bare(2));
    const double g = 0.01;  // GHz
    const double a = g / (sim.scenario().qubit.e_l * sim.m01());
    const double dt = sim.scenario().time_step_ns, f = sim.f01();
    std::vector<double> dphi(10000);
    for (std::size_t j = 0; j < dphi.size(); ++j) dphi[j] = a * std::cos(2 * kPi * f * (double(j) + 0.5) * dt);
    const auto out = sim.evolve_flux(dphi, {.record_every = 10, .unitary = false});
    std::size_t best = 0;
    for (std::size_t i = 0; i < out.populations.size() && out.times_ns[i] < 75.0; ++i)
        if (out.populations[i][1] > out.populations[best][1]) best = i;
    EXPECT_NEAR(out.times_ns[best], 1.0 / (2 * g), 0.02 / (2 * g));
    EXPECT_GT(out.populations[best][1], 0.99);
}

TEST(Dynamics, StepHalvingConverges) {
    auto sc = bare(3);
    const dy::PulseShape shape{20.0, 10.0, 2.0};
    const dy::Simulator coarse(sc);
    sc.time_step_ns = 0.005;
    const dy::Simulator fine(sc);
    const double amp = dy::rwa_amplitude(coarse, kPi, shape, false);
    const auto w = dy::cosine_pulse(coarse, amp, coarse.f01(), 0.0, shape, false);
    const auto a = coarse.evolve(w).final_state, b = fine.evolve(w).final_state;
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::norm(a(k)), std::norm(b(k)), 1e-6);
}

TEST(Dynamics, CalibratedPiAgreesWithRotatingWaveArea) {
    const dy::Simulator sim(bare(2));
    const dy::PulseShape shape{20.0, 20.0, 2.0};
    const auto cal = dy::calibrate_pi(sim, shape, false);
    const double ppv = sim.scenario().line.phase_per_volt();
    // pi area: E_L ppv A m01 * T / 2 = 1/2 cycle.
    const double oracle = 1.0 / (sim.scenario().qubit.e_l * ppv * sim.m01() * shape.duration_ns);
    EXPECT_NEAR(cal.amplitude_v, oracle, 0.01 * oracle);
    EXPECT_GT(cal.population, 0.9999);
    EXPECT_NEAR(dy::rwa_amplitude(sim, kPi, shape, false), oracle, 1e-12 * oracle);
}

TEST(Dynamics, DoublingDurationHalvesAmplitude) {
    const dy::Simulator sim(bare(2));
    const auto a = dy::calibrate_pi(sim, {20.0, 20.0, 2.0}, false);
    const auto b = dy::calibrate_pi(sim, {40.0, 20.0, 2.0}, false);
    EXPECT_NEAR(b.amplitude_v / a.amplitude_v, 0.5, 0.01);
}

TEST(Dynamics, HalfPiIsHalfOfPi) {
    const dy::Simulator sim(bare(2));
    const dy::PulseShape shape{20.0, 20.0, 2.0};
    const auto pi = dy::calibrate_pi(sim, shape, false);
    const auto half = dy::calibrate_half_pi(sim, shape, false);
    EXPECT_NEAR(half.amplitude_v / pi.amplitude_v, 0.5, 0.01);
    const auto u = dy::pulse_unitary(sim, half, 0.0);
    const auto blk = sim.rotating_block(u, half.drive_ghz, 2 * shape.margin_ns + shape.duration_ns);
    EXPECT_NEAR(std::norm(blk(1, 0)), 0.5, 0.01);
}

TEST(Dynamics, PredistortionRestoresContrast) {
    const dy::Simulator sim(dy::DriveScenario{});
    const dy::PulseShape shape;
    const auto cal = dy::calibrate_pi(sim, shape, true);
    EXPECT_GE(cal.population, 0.999);
    const auto raw = dy::cosine_pulse(sim, cal.amplitude_v, cal.drive_ghz, 0.0, shape, false);
    EXPECT_LT(std::norm(sim.evolve(raw, {.unitary = false}).final_state(1)), 0.95);
}

TEST(Dynamics, GateFidelityFormula) {
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_NEAR(dy::gate_fidelity(id, Eigen::Matrix2cd::Identity()).fidelity, 1.0, 1e-15);
    EXPECT_NEAR(dy::gate_fidelity(id, pauli_x()).fidelity, 1.0 / 3.0, 1e-15);

    // Half of |1> leaks into |2>.
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(3, 3);
    const double c = std::sqrt(0.5);
    u(1, 1) = c;
    u(2, 2) = c;
    u(1, 2) = -c;
    u(2, 1) = c;
    const auto g = dy::gate_fidelity(u, Eigen::Matrix2cd::Identity());
    EXPECT_NEAR(g.leakage, 0.25, 1e-12);
    // (Tr(MM^dag) + |Tr M|^2) / 6 with M = diag(1, c).
    EXPECT_NEAR(g.fidelity, (1.5 + (1 + c) * (1 + c)) / 6, 1e-12);

    Eigen::MatrixXcd bad = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_THROW(dy::gate_fidelity(bad, pauli_x()), fluxctl::Error);
}

TEST(Dynamics, FrameCorrectionAbsorbsZRotations) {
    const Eigen::MatrixXcd u = rz(0.7) * pauli_x() * rz(-1.9);
    EXPECT_LT(dy::gate_fidelity(u, pauli_x()).fidelity, 0.9);
    EXPECT_NEAR(dy::frame_corrected_fidelity(u, pauli_x()).fidelity, 1.0, 1e-12);
}

TEST(Dynamics, ScenarioValidation) {
    auto sc = bare(2);
    sc.time_step_ns = 1.0;
    EXPECT_THROW(dy::Simulator{sc}, fluxctl::NumericalFailure);
    sc = bare(2);
    sc.time_step_ns = 0.003;
    const dy::Simulator sim(sc);
    EXPECT_THROW(sim.steps_per_sample(2.0), fluxctl::InvalidArgument);
    sc = bare(1);
    EXPECT_THROW(sc.validate(), fluxctl::InvalidArgument);
}

TEST(Dynamics, ScenarioHashTracksFields) {
    const dy::DriveScenario a;
    dy::DriveScenario b = a;
    EXPECT_EQ(a.hash(), b.hash());
    b.line.attenuation_db = -31;
    EXPECT_NE(a.hash(), b.hash());
    b = a;
    b.channel = fl::GaussianLowpass{0.1};
    EXPECT_NE(a.hash(), b.hash());
}
