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

#ifndef QDGATE_RANDOM_HPP
#define QDGATE_RANDOM_HPP

#include <cstdint>
#include <random>

namespace qdgate {

/// Seeded pseudo-random stream. Each Monte Carlo worker owns one; streams are
/// never shared between threads.
class RandomStream {
   public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(make_engine(seed, 0, false)) {
    }

    /// Independent stream for sub-task `index` (chunk, row, worker).
    RandomStream split(std::uint64_t index) const {
        RandomStream child(seed_);
        child.engine_ = make_engine(seed_, index, true);
        return child;
    }

    std::uint64_t next() {
        return engine_();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    std::uint64_t seed() const {
        return seed_;
    }

   private:
    static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index, bool split) {
        std::seed_seq seq{
            static_cast<std::uint32_t>(seed),
            static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(index),
            static_cast<std::uint32_t>(index >> 32),
            static_cast<std::uint32_t>(split ? 0x9e3779b9u : 0u)};
        return std::mt19937_64(seq);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qdgate

#endif
