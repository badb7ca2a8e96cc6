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

#include <gtest/gtest.h>

#include "charge_basis.hpp"
#include "oracles.hpp"
#include "fluxctl/devices.hpp"
#include "fluxctl/errors.hpp"
#include "fluxctl/fluxonium.hpp"

namespace fx = fluxctl::fluxonium;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void expect_matches_charge_basis(const fx::Params &p) {
    const auto ours = fx::spectrum(p, 4);
    const auto ref = fluxctl::oracle::charge_basis_spectrum(p.e_j, p.e_c, p.e_l, p.phi_ext);
    EXPECT_LT(rel(ours.f01(), ref.levels[1]), 1e-8) << p.e_j << " " << p.e_c << " " << p.e_l;
    EXPECT_LT(rel(ours.matrix_element(0, 1), ref.phi01), 1e-8);
    EXPECT_LT(rel(ours.levels[2], ref.levels[2]), 1e-8);
}

}  // namespace

TEST(Fluxonium, MatchesChargeBasisAtReferenceCircuit) {
    expect_matches_charge_basis(fluxctl::devices::reference_circuit());
}

TEST(Fluxonium, MatchesChargeBasisAtRandomCircuits) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ej(2, 8), ec(0.8, 1.5), el(0.3, 1.0), phi(0, 1);
    for (int i = 0; i < 10; ++i) {
        fx::Params p;
        p.e_j = ej(rng);
        p.e_c = ec(rng);
        p.e_l = el(rng);
        p.phi_ext = phi(rng);
        expect_matches_charge_basis(p);
    }
}

TEST(Fluxonium, SweetSpotFrequencyInLowBand) {
    const double f = fx::spectrum(fluxctl::devices::reference_circuit()).f01();
    EXPECT_GT(f, 0.2);
    EXPECT_LT(f, 0.4);
}

TEST(Fluxonium, HarmonicLimitWithoutJunction) {
    fx::Params p;
    p.e_j = 0.0;
    p.phi_ext = 0.3;
    const auto s = fx::spectrum(p, 4);
    const double w = std::sqrt(8 * 1.1 * 0.5);
    EXPECT_NEAR(w, 2.0976, 1e-4);
    for (int k = 1; k < 4; ++k) EXPECT_LT(rel(s.levels[k] - s.levels[k - 1], w), 1e-6);
    EXPECT_DOUBLE_EQ(fx::plasma_frequency(p), w);
}

TEST(Fluxonium, HamiltonianEigenvaluesMatchJacobi) {
    fx::Params p;
    p.basis_size = 30;
    const auto h = fx::build_hamiltonian(p);
    EXPECT_LT((h - h.transpose()).norm(), 1e-12);
    const auto ev = fluxctl::oracle::jacobi_eigenvalues(h);
    const auto es = fx::eigensystem(h, 4);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(ev[k] - ev[0], es.levels[k], 1e-9);
    EXPECT_NEAR(ev[0], es.ground_energy, 1e-9);
}

TEST(Fluxonium, EigenvectorSignConvention) {
    const auto es = fx::eigensystem(fx::build_hamiltonian(fx::Params{}), 4);
    for (int c = 0; c < 4; ++c) {
        Eigen::Index i;
        es.vectors.col(c).cwiseAbs().maxCoeff(&i);
        EXPECT_GT(es.vectors(i, c), 0.0);
        EXPECT_NEAR(es.vectors.col(c).norm(), 1.0, 1e-12);
    }
}

TEST(Fluxonium, SpectrumSymmetricAboutHalfFlux) {
    fx::Params a, b;
    for (double d : {0.01, 0.1, 0.23}) {
        a.phi_ext = 0.5 + d;
        b.phi_ext = 0.5 - d;
        EXPECT_NEAR(fx::spectrum(a).f01(), fx::spectrum(b).f01(), 1e-9);
        EXPECT_GT(fx::spectrum(a).f01(), fx::spectrum(fx::Params{}).f01());
    }
}

TEST(Fluxonium, SweepMatchesPointwise) {
    const std::vector<double> grid{0.0, 0.2, 0.45, 0.5, 0.8};
    const auto rows = fx::spectrum_sweep(fx::Params{}, grid, 3);
    ASSERT_EQ(rows.size(), grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        fx::Params p;
        p.phi_ext = grid[i];
        EXPECT_EQ(rows[i].flux, grid[i]);
        EXPECT_DOUBLE_EQ(rows[i].spectrum.f01(), fx::spectrum(p, 3).f01());
    }
}

TEST(Fluxonium, ResetFluxHitsTarget) {
    const auto [lo, hi] = fx::reset_band(fx::Params{});
    EXPECT_LT(lo, 0.3);
    EXPECT_GT(hi, 4.0);
    const auto r = fx::find_reset_flux(fx::Params{}, 2.0);
    fx::Params p;
    p.phi_ext = r.flux;
    EXPECT_NEAR(fx::spectrum(p).f01(), 2.0, 1e-6);
    EXPECT_NEAR(r.excursion, 0.5 - r.flux, 1e-15);
    EXPECT_GT(r.excursion, 0.0);
}

TEST(Fluxonium, ResetFluxOutsideBandReportsBand) {
    try {
        fx::find_reset_flux(fx::Params{}, 40.0);
        FAIL();
    } catch (const fluxctl::NoSolution &e) {
        EXPECT_LT(e.attainable_lo, 0.3);
        EXPECT_GT(e.attainable_hi, 4.0);
    }
}

TEST(Fluxonium, RejectsBadParameters) {
    fx::Params p;
    p.basis_size = fx::kMinBasisSize - 1;
    EXPECT_THROW(fx::validate(p), fluxctl::InvalidArgument);
    p = {};
    p.e_c = -1;
    EXPECT_THROW(fx::spectrum(p), fluxctl::InvalidArgument);
    p = {};
    p.e_l = 0;
    EXPECT_THROW(fx::spectrum(p), fluxctl::InvalidArgument);
    EXPECT_THROW(fx::phase_matrix_element(fx::Params{}, 1, 1), fluxctl::InvalidArgument);
}
