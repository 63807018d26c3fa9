// Copyright 2026 The qdgate Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qdgate/gate.hpp"
#include "support/oracles.hpp"

namespace qdgate {
namespace {

const double kH = std::numbers::sqrt2 / 2;

CavityParams anchor_point(double c, double detuning) {
    CavityParams p;
    p.gamma = 0.1;
    p.cavity_detuning = detuning;
    p.trion_detuning = detuning;
    return p.with_kappa_ratio(13).with_cooperativity(c);
}

GateConfig anchor_config(double c, double detuning) {
    GateConfig g;
    g.pair = reflection_pair(anchor_point(c, detuning));
    return g;
}

StateVector plus_plus() {
    std::array<std::array<cplx, 2>, 2> f{{{kH, kH}, {kH, kH}}};
    return StateVector::product(f);
}

StateVector random_product(int n, std::mt19937_64 &gen) {
    std::normal_distribution<double> d;
    std::vector<std::array<cplx, 2>> f(n);
    for (auto &s : f) {
        s = {cplx(d(gen), d(gen)), cplx(d(gen), d(gen))};
    }
    return StateVector::product(f);
}

CavityParams random_cavity(std::mt19937_64 &gen) {
    std::uniform_real_distribution<double> u(0, 1);
    CavityParams p;
    p.kappa_s = std::pow(10.0, -3 + 3 * u(gen));
    p.gamma = std::pow(10.0, -3 + 3 * u(gen));
    p.g = std::pow(10.0, -2 + 3 * u(gen));
    p.cavity_detuning = 10 * u(gen) - 5;
    p.trion_detuning = 10 * u(gen) - 5;
    return p;
}

oracle::Vec to_vec(const StateVector &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

TEST(Distribution, IdealSymmetricState) {
    OutcomeDistribution d = single_shot_distribution(GateConfig{}, plus_plus(), 0, 1);
    EXPECT_NEAR(d.p_even, 0.5, 1e-15);
    EXPECT_NEAR(d.p_odd, 0.5, 1e-15);
    EXPECT_NEAR(d.p_recycle, 0, 1e-15);
    EXPECT_NEAR(d.p_loss, 0, 1e-15);
}

TEST(Distribution, ResonantQuarterCooperativity) {
    OutcomeDistribution d = single_shot_distribution(anchor_config(0.25, 0), plus_plus(), 0, 1);
    EXPECT_NEAR(d.p_success(), 0.215561, 1e-5);
    EXPECT_NEAR(d.p_recycle, 0.154337, 1e-5);
}

TEST(Distribution, NoCouplingMeansCertainRecycle) {
    std::mt19937_64 gen(3);
    GateConfig g = anchor_config(1, 0.3);
    g.eta_in = 0;
    OutcomeDistribution d = single_shot_distribution(g, random_product(3, gen), 0, 2);
    EXPECT_NEAR(d.p_recycle, 1, 1e-15);
    EXPECT_NEAR(d.p_success(), 0, 1e-15);
}

TEST(Distribution, MatchesInterferometerOracle) {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 300; trial++) {
        GateConfig g;
        g.pair = reflection_pair(random_cavity(gen));
        g.eta_in = trial % 3 == 0 ? 1.0 : u(gen);
        g.detector_efficiency = trial % 2 == 0 ? 1.0 : u(gen);
        const int n = 2 + trial % 3;
        StateVector s = random_product(n, gen);
        const int q1 = trial % n, q2 = (q1 + 1 + trial / 7 % (n - 1)) % n;
        oracle::Clicks c = oracle::interferometer(to_vec(s), n, q1, q2, g.pair.r0, g.pair.r1);
        const double in2 = g.eta_in * g.eta_in, det = g.detector_efficiency;
        OutcomeDistribution d = single_shot_distribution(g, s, q1, q2);
        EXPECT_NEAR(d.p_even, det * in2 * oracle::norm_sq(c.d3), 1e-12);
        EXPECT_NEAR(d.p_odd, det * in2 * oracle::norm_sq(c.d4), 1e-12);
        EXPECT_NEAR(d.p_recycle, det * (in2 * (oracle::norm_sq(c.d1) + oracle::norm_sq(c.d2)) + 1 - in2), 1e-12);
        EXPECT_NEAR(d.p_even + d.p_odd + d.p_recycle + d.p_loss, 1, 1e-12);
        // D3 and D4 carry i d times the signed projections.
        const oracle::Vec even = to_vec(apply_parity_projector(s, q1, q2, Parity::Even));
        const oracle::Vec odd = to_vec(apply_parity_projector(s, q1, q2, Parity::Odd));
        for (std::size_t k = 0; k < even.size(); k++) {
            EXPECT_NEAR(std::abs(c.d3[k] - cplx(0, 1) * g.pair.d * even[k]), 0, 1e-12);
            EXPECT_NEAR(std::abs(c.d4[k] - cplx(0, 1) * g.pair.d * odd[k]), 0, 1e-12);
        }
    }
}

TEST(Distribution, SuccessWeightIsStateIndependent) {
    std::mt19937_64 gen(8);
    GateConfig g = anchor_config(1, 0.1);
    g.eta_in = 0.8;
    g.detector_efficiency = 0.9;
    const double want = 0.9 * 0.64 * std::norm(g.pair.d);
    for (int i = 0; i < 200; i++) {
        OutcomeDistribution d = single_shot_distribution(g, random_product(2, gen), 0, 1);
        EXPECT_NEAR(d.p_success(), want, 1e-12);
    }
}

TEST(Distribution, ConservesProbability) {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 10000; i++) {
        GateConfig g;
        g.pair = reflection_pair(random_cavity(gen));
        g.eta_in = u(gen);
        g.detector_efficiency = u(gen);
        OutcomeDistribution d = single_shot_distribution(g, random_product(2, gen), 0, 1);
        for (double p : {d.p_even, d.p_odd, d.p_recycle, d.p_loss}) {
            EXPECT_GE(p, 0);
            EXPECT_LE(p, 1);
        }
        EXPECT_NEAR(d.p_even + d.p_odd + d.p_recycle + d.p_loss, 1, 1e-12);
    }
}

TEST(Distribution, RejectsBadInput) {
    EXPECT_THROW(single_shot_distribution(GateConfig{}, plus_plus(), 0, 0), std::invalid_argument);
    EXPECT_THROW(single_shot_distribution(GateConfig{}, plus_plus(), 0, 2), std::out_of_range);
    StateVector unnormalized = StateVector::from_amplitudes({1, 1, 0, 0});
    EXPECT_THROW(single_shot_distribution(GateConfig{}, unnormalized, 0, 1), std::invalid_argument);
    GateConfig g;
    g.eta_in = 1.5;
    EXPECT_THROW(g.validate(), std::invalid_argument);
    g = GateConfig{};
    g.max_recycles = -1;
    EXPECT_THROW(g.validate(), std::invalid_argument);
}

TEST(Etas, AnchorValues) {
    EXPECT_NEAR(analytic_etas(anchor_config(0.25, 0).pair).eta_s, 0.255, 1e-3);
    EXPECT_NEAR(analytic_etas(anchor_config(1, 0).pair).eta_s, 0.559, 1e-3);
    EXPECT_NEAR(analytic_etas(anchor_config(0.25, 0.1).pair).eta_s, 0.194, 1e-3);
    EXPECT_NEAR(analytic_etas(anchor_config(1, 0.1).pair).eta_s, 0.538, 1e-3);
    EXPECT_NEAR(analytic_etas(ReflectionPair::ideal()).eta_s, 1, 1e-15);
}

TEST(Etas, RecyclingIdentityAndBounds) {
    std::mt19937_64 gen(23);
    for (int i = 0; i < 10000; i++) {
        Efficiencies e = analytic_etas(reflection_pair(random_cavity(gen)));
        EXPECT_NEAR(e.eta_s, e.eta_h / (1 - e.eta_v), 1e-12 * std::max(1.0, e.eta_s));
        EXPECT_LE(e.eta_h + e.eta_v, 1 + 1e-12);
    }
}

TEST(Etas, EffectiveReducesToAnalytic) {
    GateConfig g = anchor_config(1, 0.1);
    Efficiencies a = analytic_etas(g.pair), b = effective_etas(g);
    EXPECT_NEAR(a.eta_h, b.eta_h, 1e-15);
    EXPECT_NEAR(a.eta_v, b.eta_v, 1e-15);
    EXPECT_NEAR(a.eta_s, b.eta_s, 1e-15);
}

TEST(Etas, DegenerateRecyclingThrows) {
    ReflectionPair mirror = ReflectionPair::from_coefficients(1, 1);
    EXPECT_THROW(analytic_etas(mirror), DegenerateRecycling);
    GateConfig g;
    g.eta_in = 0;
    EXPECT_THROW(effective_etas(g), DegenerateRecycling);
}

TEST(RunGate, IdealAlwaysSucceedsFirstTime) {
    RandomStream rng(5);
    for (int i = 0; i < 1000; i++) {
        GateResult r = run_gate(GateConfig{}, plus_plus(), 0, 1, rng);
        EXPECT_NE(r.outcome, GateOutcome::Failure);
        EXPECT_EQ(r.attempts, 1);
    }
}

TEST(RunGate, PureParityInputPicksTheNonzeroBranch) {
    RandomStream rng(5);
    for (int i = 0; i < 100; i++) {
        EXPECT_NE(run_gate(anchor_config(1, 0), StateVector(2), 0, 1, rng).outcome, GateOutcome::Odd);
    }
}

TEST(RunGate, RecycleLeavesRegisterUntouched) {
    std::mt19937_64 gen(2);
    GateConfig g;
    g.pair = ReflectionPair::from_coefficients(1, 1);  // every photon recycles
    g.max_recycles = 3;
    StateVector s = random_product(3, gen);
    RandomStream rng(1);
    GateResult r = run_gate(g, s, 0, 2, rng);
    EXPECT_EQ(r.outcome, GateOutcome::Failure);
    EXPECT_EQ(r.attempts, 4);
    EXPECT_NEAR(fidelity(r.state, s), 1, 1e-12);
}

TEST(RunGate, LossReturnsUnprojectedRegister) {
    std::mt19937_64 gen(4);
    GateConfig g;
    g.pair = ReflectionPair::from_coefficients(0, 0);  // every photon lost
    StateVector s = random_product(2, gen);
    RandomStream rng(1);
    GateResult r = run_gate(g, s, 0, 1, rng);
    EXPECT_EQ(r.outcome, GateOutcome::Failure);
    EXPECT_EQ(r.attempts, 1);
    EXPECT_NEAR(fidelity(r.state, s), 1, 1e-12);
}

TEST(RunGate, ForcedBranches) {
    RandomStream rng(1);
    GateResult even = run_gate(anchor_config(0.25, 0), plus_plus(), 0, 1, rng, GateOutcome::Even);
    EXPECT_EQ(even.attempts, 1);
    EXPECT_NEAR(fidelity(even.state, StateVector::from_amplitudes({kH, 0, 0, -kH})), 1, 1e-12);
    GateResult odd = run_gate(anchor_config(0.25, 0), plus_plus(), 0, 1, rng, GateOutcome::Odd);
    EXPECT_NEAR(fidelity(odd.state, StateVector::from_amplitudes({0, kH, -kH, 0})), 1, 1e-12);
    EXPECT_THROW(run_gate(GateConfig{}, StateVector(2), 0, 1, rng, GateOutcome::Odd), ZeroProbabilityBranch);
}

TEST(RunGate, FailureThenRerunIsReproducible) {
    GateConfig g = anchor_config(0.25, 0.1);
    RandomStream a(12), b(12);
    for (int i = 0; i < 500; i++) {
        GateResult x = run_gate(g, plus_plus(), 0, 1, a);
        GateResult y = run_gate(g, plus_plus(), 0, 1, b);
        EXPECT_EQ(x.outcome, y.outcome);
        EXPECT_EQ(x.attempts, y.attempts);
    }
}

TEST(Simulate, MonteCarloMatchesEtaS) {
    GateConfig g = anchor_config(1, 0);
    GateStatistics st = simulate_gate(g, plus_plus(), 0, 1, 100000, RandomStream(1));
    const double eta_s = analytic_etas(g.pair).eta_s;
    EXPECT_NEAR(st.success_rate(), eta_s, 3 * std::sqrt(eta_s * (1 - eta_s) / st.trials));
    EXPECT_GE(st.min_fidelity, 1 - 1e-10);
}

TEST(Simulate, GeometricSeriesLimits) {
    GateConfig g = anchor_config(0.25, 0.1);
    const Efficiencies e = analytic_etas(g.pair);
    g.max_recycles = 200;
    GateStatistics many = simulate_gate(g, plus_plus(), 0, 1, 100000, RandomStream(2));
    EXPECT_NEAR(many.success_rate(), e.eta_s, 3 * std::sqrt(e.eta_s * (1 - e.eta_s) / many.trials));
    EXPECT_NEAR(many.mean_attempts(), 1 / (1 - e.eta_v), 0.02);
    g.max_recycles = 0;
    GateStatistics one = simulate_gate(g, plus_plus(), 0, 1, 100000, RandomStream(3));
    EXPECT_NEAR(one.success_rate(), e.eta_h, 3 * std::sqrt(e.eta_h * (1 - e.eta_h) / one.trials));
    EXPECT_EQ(one.photons, one.trials);
}

TEST(Simulate, ThreadCountDoesNotChangeResults) {
    GateConfig g = anchor_config(0.25, 0);
    g.dephasing_per_attempt = 0.01;
    GateStatistics a = simulate_gate(g, plus_plus(), 0, 1, 20000, RandomStream(9), 1);
    GateStatistics b = simulate_gate(g, plus_plus(), 0, 1, 20000, RandomStream(9), 4);
    EXPECT_EQ(a.successes, b.successes);
    EXPECT_EQ(a.even, b.even);
    EXPECT_EQ(a.photons, b.photons);
    EXPECT_EQ(a.fidelity_sum, b.fidelity_sum);
}

TEST(Simulate, FidelityIndependentOfCavity) {
    std::mt19937_64 gen(31);
    for (int i = 0; i < 100; i++) {
        GateConfig g;
        g.pair = reflection_pair(random_cavity(gen));
        StateVector s = random_product(2, gen);
        GateStatistics st = simulate_gate(g, s, 0, 1, 200, RandomStream(i), 1);
        EXPECT_GE(st.min_fidelity, 1 - 1e-10);
    }
}

TEST(Dephasing, BoundAtThousandfoldCoherence) {
    GateConfig g = anchor_config(1, 0);
    g.dephasing_per_attempt = 1e-3;
    GateStatistics st = simulate_gate(g, plus_plus(), 0, 1, 20000, RandomStream(6));
    EXPECT_GE(st.mean_fidelity(), 0.99);
    EXPECT_NEAR(dephasing_probability(1, 1000), 1 - std::exp(-1e-3), 1e-15);
    EXPECT_THROW(dephasing_probability(1, 0), std::invalid_argument);
}

TEST(Statistics, MergeAndEmpty) {
    GateStatistics a, b;
    a.trials = 10;
    a.successes = 4;
    a.photons = 12;
    b.trials = 30;
    b.successes = 6;
    b.photons = 40;
    a.merge(b);
    EXPECT_EQ(a.trials, 40u);
    EXPECT_DOUBLE_EQ(a.success_rate(), 0.25);
    EXPECT_DOUBLE_EQ(a.mean_attempts(), 52.0 / 40);
    EXPECT_EQ(GateStatistics{}.success_rate(), 0);
}

}  // namespace
}  // namespace qdgate
