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
#include <limits>
#include <random>

#include "qdgate/cavity.hpp"
#include "qdgate/gate.hpp"
#include "support/oracles.hpp"

namespace qdgate {
namespace {

CavityParams anchor_point(double c, double detuning) {
    CavityParams p;
    p.gamma = 0.1;
    p.cavity_detuning = detuning;
    p.trion_detuning = detuning;
    return p.with_kappa_ratio(13).with_cooperativity(c);
}

TEST(Cavity, MatchesFrozenValues) {
    for (const auto &f : oracle::kFrozen) {
        ReflectionPair pair = reflection_pair(anchor_point(f.cooperativity, f.detuning));
        EXPECT_NEAR(std::abs(pair.r0 - f.r0), 0, 1e-14);
        EXPECT_NEAR(std::abs(pair.r1 - f.r1), 0, 1e-14);
        Efficiencies e = analytic_etas(pair);
        EXPECT_NEAR(e.eta_h, f.eta_h, 1e-14);
        EXPECT_NEAR(e.eta_v, f.eta_v, 1e-14);
        EXPECT_NEAR(e.eta_s, f.eta_s, 1e-14);
    }
}

TEST(Cavity, MatchesLangevinOracle) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 1000; i++) {
        CavityParams p;
        p.kappa = 0.2 + 2 * u(gen);
        p.kappa_s = 0.5 * u(gen);
        p.gamma = 0.01 + u(gen);
        p.g = 2 * u(gen);
        p.cavity_detuning = u(gen) - 0.5;
        p.trion_detuning = u(gen) - 0.5;
        for (bool coupled : {false, true}) {
            cplx want = oracle::reflection(
                p.kappa, p.kappa_s, p.gamma, p.g, p.trion_detuning, p.cavity_detuning, coupled);
            EXPECT_NEAR(std::abs(reflection(p, coupled) - want), 0, 1e-13);
        }
    }
}

TEST(Cavity, ResonantEmptyCavityIsMinusOneWithoutLeakage) {
    CavityParams p;
    p.kappa_s = 0;
    EXPECT_NEAR(std::abs(reflection(p, false) - cplx(-1, 0)), 0, 1e-15);
}

TEST(Cavity, StrongCouplingLimitIsIdeal) {
    CavityParams p;
    p = p.with_cooperativity(1e8);
    ReflectionPair pair = reflection_pair(p);
    EXPECT_NEAR(std::abs(pair.r1 - cplx(1, 0)), 0, 1e-7);
    EXPECT_NEAR(std::abs(pair.r0 - cplx(-1, 0)), 0, 1e-15);
}

TEST(Cavity, PassiveReflectionNeverGains) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 10000; i++) {
        CavityParams p;
        p.kappa_s = u(gen);
        p.gamma = 1e-3 + u(gen);
        p.g = 3 * u(gen);
        p.cavity_detuning = 4 * u(gen) - 2;
        p.trion_detuning = 4 * u(gen) - 2;
        EXPECT_LE(std::abs(reflection(p, false)), 1 + 1e-12);
        EXPECT_LE(std::abs(reflection(p, true)), 1 + 1e-12);
    }
}

TEST(Cavity, CooperativityRoundTrip) {
    CavityParams p = anchor_point(0.25, 0);
    EXPECT_NEAR(p.cooperativity(), 0.25, 1e-15);
    EXPECT_NEAR(p.kappa_s, 1.0 / 13, 1e-15);
    CavityParams q = p.with_kappa_ratio(std::numeric_limits<double>::infinity());
    EXPECT_EQ(q.kappa_s, 0);
    EXPECT_NEAR(q.cooperativity(), 0.25, 1e-15);
}

TEST(Cavity, RejectsUnphysicalParameters) {
    CavityParams p;
    p.kappa = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = CavityParams{};
    p.gamma = -1;
    EXPECT_THROW(reflection(p, true), std::invalid_argument);
    p = CavityParams{};
    p.cavity_detuning = std::nan("");
    EXPECT_THROW(p.validate(), std::invalid_argument);
    EXPECT_THROW(CavityParams{}.with_cooperativity(-1), std::invalid_argument);
    EXPECT_THROW(CavityParams{}.with_kappa_ratio(0), std::invalid_argument);
}

TEST(Cavity, PairCombinations) {
    ReflectionPair pair = ReflectionPair::from_coefficients({0.3, 0.1}, {-0.2, 0.4});
    EXPECT_NEAR(std::abs(pair.d - cplx(-0.25, 0.15)), 0, 1e-15);
    EXPECT_NEAR(std::abs(pair.s - cplx(0.05, 0.25)), 0, 1e-15);
    ReflectionPair ideal = ReflectionPair::ideal();
    EXPECT_EQ(ideal.r0, cplx(-1, 0));
    EXPECT_EQ(ideal.r1, cplx(1, 0));
}

}  // namespace
}  // namespace qdgate
