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

#include <random>
#include <vector>

#include "qdgate/kernels.hpp"

namespace qdgate::kernels {
namespace {

constexpr double kTol = 1e-12;

std::vector<cplx> random_amps(std::size_t n, std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> d;
    std::vector<cplx> v(n);
    for (cplx &a : v) {
        a = {d(gen), d(gen)};
    }
    return v;
}

void expect_near(const std::vector<cplx> &a, const std::vector<cplx> &b, double tol = kTol) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        EXPECT_NEAR(a[i].real(), b[i].real(), tol) << "index " << i;
        EXPECT_NEAR(a[i].imag(), b[i].imag(), tol) << "index " << i;
    }
}

class SimdEquivalence : public ::testing::Test {
   protected:
    void SetUp() override {
        simd_ = avx2_table();
        if (simd_ == nullptr) {
            GTEST_SKIP() << "AVX2 kernels not available on this machine";
        }
    }

    const KernelTable &ref_ = scalar_table();
    const KernelTable *simd_ = nullptr;
};

TEST_F(SimdEquivalence, Reductions) {
    for (int n = 1; n <= 10; n++) {
        auto a = random_amps(std::size_t{1} << n, n);
        auto b = random_amps(std::size_t{1} << n, 100 + n);
        EXPECT_NEAR(ref_.norm_sq(a), simd_->norm_sq(a), kTol * a.size());
        cplx x = ref_.inner(a, b), y = simd_->inner(a, b);
        EXPECT_NEAR(x.real(), y.real(), kTol * a.size());
        EXPECT_NEAR(x.imag(), y.imag(), kTol * a.size());
    }
}

TEST_F(SimdEquivalence, SingleQubitGates) {
    using Op = void (*)(std::span<cplx>, std::size_t);
    for (int n = 1; n <= 8; n++) {
        for (int q = 0; q < n; q++) {
            const std::size_t stride = std::size_t{1} << (n - 1 - q);
            for (auto pick : {&KernelTable::hadamard, &KernelTable::bit_flip, &KernelTable::phase_flip}) {
                auto a = random_amps(std::size_t{1} << n, 7 * n + q);
                auto b = a;
                Op f = ref_.*pick, g = simd_->*pick;
                f(a, stride);
                g(b, stride);
                expect_near(a, b);
            }
            auto a = random_amps(std::size_t{1} << n, 3 * n + q);
            EXPECT_NEAR(ref_.bit_weight(a, stride), simd_->bit_weight(a, stride), kTol * a.size());
            for (bool keep : {false, true}) {
                auto x = a, y = a;
                ref_.collapse_bit(x, stride, keep);
                simd_->collapse_bit(y, stride, keep);
                expect_near(x, y);
            }
        }
    }
}

TEST_F(SimdEquivalence, ParityKernels) {
    for (int n = 2; n <= 7; n++) {
        for (int q1 = 0; q1 < n; q1++) {
            for (int q2 = 0; q2 < n; q2++) {
                if (q1 == q2) {
                    continue;
                }
                const std::size_t s1 = std::size_t{1} << (n - 1 - q1);
                const std::size_t s2 = std::size_t{1} << (n - 1 - q2);
                auto a = random_amps(std::size_t{1} << n, 31 * n + 5 * q1 + q2);
                EXPECT_NEAR(ref_.even_weight(a, s1, s2), simd_->even_weight(a, s1, s2), kTol * a.size());
                for (bool even : {false, true}) {
                    auto x = a, y = a;
                    ref_.parity_project(x, s1, s2, even);
                    simd_->parity_project(y, s1, s2, even);
                    expect_near(x, y);
                }
            }
        }
    }
}

TEST_F(SimdEquivalence, ReflectionBatch) {
    const CavityConstants c{1.0, 1.0 / 13, 0.1, 0.1 * (1 + 1.0 / 13), 0.05};
    for (std::size_t len : {1u, 3u, 4u, 5u, 17u, 512u}) {
        std::vector<double> nu(len), w(len);
        for (std::size_t i = 0; i < len; i++) {
            nu[i] = -0.7 + 1.3 * i / static_cast<double>(len);
            w[i] = 1.0 / len;
        }
        std::vector<cplx> r0a(len), r1a(len), r0b(len), r1b(len);
        ref_.reflection_batch(c, nu, r0a, r1a);
        simd_->reflection_batch(c, nu, r0b, r1b);
        expect_near(r0a, r0b);
        expect_near(r1a, r1b);
        EtaSums x = ref_.weighted_etas(c, nu, w), y = simd_->weighted_etas(c, nu, w);
        EXPECT_NEAR(x.eta_h, y.eta_h, kTol);
        EXPECT_NEAR(x.eta_v, y.eta_v, kTol);
    }
}

TEST(Dispatch, ActiveIsOneOfTheTables) {
    const KernelTable &t = active();
    EXPECT_TRUE(&t == &scalar_table() || &t == avx2_table());
}

}  // namespace
}  // namespace qdgate::kernels
