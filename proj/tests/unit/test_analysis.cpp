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
#include <fstream>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "oracles.hpp"
#include "fluxctl/analysis.hpp"
#include "fluxctl/errors.hpp"
#include "fluxctl/gaussian_mixture.hpp"
#include "fluxctl/io.hpp"

namespace an = fluxctl::analysis;

namespace {

// Independent copy of the relaxation curve.
double relax(double a, double b, double te, double tq, double n, double t) {
    return a * std::exp(-t / te) * std::exp(n * (std::exp(-t / tq) - 1.0)) + b;
}

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

std::vector<double> mixture(std::uint64_t seed, int n, double w, double sep) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n);
    for (auto &v : x) v = g(rng) + (u(rng) < w ? sep : 0.0);
    return x;
}

}  // namespace

TEST(T1Fit, RecoversFixtureParameters) {
    const auto table = fluxctl::io::read_csv(FLUXCTL_TEST_DIR "/fixtures/t1_synthetic.csv");
    std::ifstream in(FLUXCTL_TEST_DIR "/fixtures/t1_synthetic.json");
    const auto truth = nlohmann::json::parse(in);
    const auto fit = an::fit_t1_double_exponential(table.column("t_us"), table.column("value"));
    EXPECT_NEAR(fit.params.a, truth["A"].get<double>(), 0.02);
    EXPECT_NEAR(fit.params.b, truth["B"].get<double>(), 0.02);
    EXPECT_NEAR(fit.params.t_exp_us, truth["T_exp_us"].get<double>(), 0.02 * 150);
    EXPECT_NEAR(fit.params.t_qp_us, truth["T_qp_us"].get<double>(), 0.02 * 30);
    EXPECT_NEAR(fit.params.n_qp, truth["n_qp"].get<double>(), 0.02);
    EXPECT_FALSE(fit.n_qp_at_bound);
    EXPECT_EQ(fit.covariance.rows(), 5);
}

TEST(T1Fit, EffectiveT1MatchesBisection) {
    const auto t = grid(0, 1000, 101);
    std::vector<double> y;
    for (double x : t) y.push_back(relax(0.9, 0.05, 150, 30, 1, x));
    const auto fit = an::fit_t1_double_exponential(t, y);
    ASSERT_TRUE(fit.t1_eff_found);
    const auto &p = fit.params;
    const double target = p.a / std::exp(1.0) + p.b;
    const double ref = fluxctl::oracle::bisect(
        [&](double x) { return relax(p.a, p.b, p.t_exp_us, p.t_qp_us, p.n_qp, x) - target; }, 0.0, 1000.0);
    EXPECT_NEAR(fit.t1_eff_us, ref, 1e-3 * ref);
}

TEST(T1Fit, PureExponentialPinsQuasiparticleTerm) {
    const auto t = grid(0, 600, 61);
    std::vector<double> y;
    for (double x : t) y.push_back(relax(1, 0, 80, 10, 0, x));
    const auto fit = an::fit_t1_double_exponential(t, y);
    EXPECT_NEAR(fit.params.t_exp_us, 80, 0.8);
    EXPECT_LT(fit.params.n_qp, 1e-3);
    EXPECT_NEAR(fit.t1_eff_us, 80, 0.8);
}

TEST(T1Fit, NoisyFitsAreUnbiased) {
    const auto t = grid(0, 1000, 101);
    std::normal_distribution<double> noise(0.0, 0.005);
    double mean = 0.0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
        std::mt19937_64 rng(s);
        std::vector<double> y;
        for (double x : t) y.push_back(relax(1, 0, 150, 30, 1, x) + noise(rng));
        mean += an::fit_t1_double_exponential(t, y).t1_eff_us / seeds;
    }
    const double truth = an::one_over_e_time({1, 0, 150, 30, 1}, 1e4);
    EXPECT_NEAR(mean, truth, 0.02 * truth);
}

TEST(T1Fit, RejectsShortSpans) {
    const auto t = grid(0, 50, 20);
    std::vector<double> y;
    for (double x : t) y.push_back(relax(1, 0, 150, 30, 1, x));
    EXPECT_THROW(an::fit_t1_double_exponential(t, y), fluxctl::InvalidArgument);
    const std::vector<double> few{0, 1, 2};
    EXPECT_THROW(an::fit_t1_double_exponential(few, few), fluxctl::InvalidArgument);
}

TEST(OneOverE, NoCrossingIsNaN) {
    EXPECT_TRUE(std::isnan(an::one_over_e_time({1, 0, 100, 10, 0}, 50)));
    EXPECT_NEAR(an::one_over_e_time({1, 0, 100, 10, 0}, 1000), 100, 1e-9);
}

TEST(DephasingFit, RecoversMixedEnvelope) {
    const an::DephasingParams truth{0.48, 0.5, 120, 90, 60};
    const auto t = grid(0, 150, 76);
    std::vector<double> y;
    for (double x : t)
        y.push_back(0.48 * std::exp(-x / 240.0 - x / 90.0 - (x / 60.0) * (x / 60.0)) + 0.5);
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(an::dephasing_model(truth, t[i]), y[i], 1e-15);
    const auto fit = an::fit_dephasing_envelope(t, y, 120);
    EXPECT_NEAR(fit.params.c, 0.48, 0.02 * 0.48);
    EXPECT_NEAR(fit.params.d, 0.5, 0.01);
    EXPECT_NEAR(fit.params.t_phi_exp_us, 90, 0.02 * 90);
    EXPECT_NEAR(fit.params.t_phi_g_us, 60, 0.02 * 60);
    EXPECT_FALSE(fit.exp_rate_at_bound);
}

TEST(DephasingFit, PureGaussianHoldsExpRateAtZero) {
    const auto t = grid(0, 150, 76);
    std::vector<double> y;
    for (double x : t) y.push_back(0.5 * std::exp(-x / 200.0 - (x / 50.0) * (x / 50.0)) + 0.5);
    const auto fit = an::fit_dephasing_envelope(t, y, 100);
    EXPECT_TRUE(fit.exp_rate_at_bound);
    EXPECT_TRUE(std::isinf(fit.params.t_phi_exp_us));
    EXPECT_NEAR(fit.params.t_phi_g_us, 50, 0.5);
    EXPECT_THROW(an::fit_dephasing_envelope(t, y, 0.0), fluxctl::InvalidArgument);
}

TEST(RbFit, RecoversDecay) {
    std::vector<double> m, s;
    for (int len : {1, 2, 5, 10, 20, 50, 100, 200, 500}) {
        m.push_back(len);
        s.push_back(0.47 * std::pow(0.996, len) + 0.51);
    }
    const auto fit = an::fit_rb_decay(m, s);
    EXPECT_NEAR(fit.p, 0.996, 1e-9);
    EXPECT_NEAR(fit.a, 0.47, 1e-7);
    EXPECT_NEAR(fit.b, 0.51, 1e-7);
    EXPECT_NEAR(fit.f_avg, 1 - 0.004 / 2, 1e-9);
}

TEST(RbFit, ConstantSurvival) {
    const std::vector<double> m{1, 10, 100}, ones(3, 1.0), flat(3, 0.7);
    const auto fit = an::fit_rb_decay(m, ones);
    EXPECT_EQ(fit.p, 1.0);
    EXPECT_TRUE(fit.amplitude_unidentifiable);
    EXPECT_THROW(an::fit_rb_decay(m, flat), fluxctl::FitFailure);
    const std::vector<double> two{1, 1, 5};
    EXPECT_THROW(an::fit_rb_decay(two, ones), fluxctl::InvalidArgument);
}

TEST(Interleaved, FidelityFromDecayRatio) {
    const auto e = an::interleaved_fidelity(0.99, 0.98);
    EXPECT_NEAR(e.error, (1 - 0.98 / 0.99) / 2, 1e-15);
    EXPECT_NEAR(e.fidelity, 1 - e.error, 1e-15);
    EXPECT_TRUE(e.consistent);
    const auto odd = an::interleaved_fidelity(0.98, 0.99);
    EXPECT_FALSE(odd.consistent);
    EXPECT_LT(odd.error, 0.0);
    EXPECT_FALSE(odd.warning.empty());
}

TEST(Reset, RecoversFixtureMixture) {
    const auto x = fluxctl::io::read_csv(FLUXCTL_TEST_DIR "/fixtures/reset_mixture_2pct.csv").column("signal");
    const auto r = an::estimate_reset_fidelity(x);
    EXPECT_NEAR(r.weight_e, 0.02, 0.003);
    EXPECT_NEAR(r.fidelity, 1 - r.weight_e, 1e-15);
    EXPECT_NEAR(r.mu_e - r.mu_g, 4.0, 0.2);
    EXPECT_FALSE(r.single_component);
    EXPECT_TRUE(r.converged);
}

TEST(Reset, SeedsStayWithinTolerance) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto r = an::estimate_reset_fidelity(mixture(100 + s, 50000, 0.02, 4.0));
        EXPECT_NEAR(r.weight_e, 0.02, 0.003) << s;
    }
}

TEST(Reset, SingleGaussianHasNoExcitedWeight) {
    const auto r = an::estimate_reset_fidelity(mixture(5, 20000, 0.0, 4.0));
    EXPECT_TRUE(r.single_component);
    EXPECT_EQ(r.weight_e, 0.0);
    EXPECT_EQ(r.fidelity, 1.0);
    EXPECT_LT(r.bic_single, r.bic_mixture);
}

TEST(Reset, EvenSplit) {
    const auto r = an::estimate_reset_fidelity(mixture(6, 20000, 0.5, 4.0));
    EXPECT_NEAR(r.weight_e, 0.5, 0.02);
}

TEST(Reset, LabelingIsMirrorSymmetric) {
    auto x = mixture(7, 20000, 0.1, 4.0);
    const auto hi = an::estimate_reset_fidelity(x);
    for (double &v : x) v = -v;
    an::ResetOptions opt;
    opt.excited = an::ExcitedCenter::Lower;
    const auto lo = an::estimate_reset_fidelity(x, opt);
    EXPECT_NEAR(hi.weight_e, lo.weight_e, 1e-9);
    EXPECT_NEAR(hi.mu_e, -lo.mu_e, 1e-9);
}

TEST(Reset, RejectsSmallSamples) {
    const std::vector<double> x(999, 0.1);
    EXPECT_THROW(an::estimate_reset_fidelity(x), fluxctl::InvalidArgument);
}
