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

#ifndef QDGATE_GATE_HPP
#define QDGATE_GATE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "qdgate/cavity.hpp"
#include "qdgate/qstate.hpp"
#include "qdgate/random.hpp"

namespace qdgate {

/// The heralded parity gate: one probe photon split over two identical
/// cavity-dot systems and recombined. An H-polarized click at D3 (D4) projects
/// the spins onto even (odd) parity; a V-polarized click at D1 or D2 leaves
/// them untouched and the gate is retried with a fresh photon; no click means
/// the photon was lost and the register must be reinitialized.
///
/// Two cavities with different reflection pairs are assumed pre-balanced to a
/// common effective pair, with any attenuation folded into eta_in.
struct GateConfig {
    ReflectionPair pair = ReflectionPair::ideal();
    /// Amplitude of the photon that enters the cavity mode. The remaining
    /// 1 - eta_in^2 probability reflects off the structure unchanged, in a
    /// mode that does not interfere with the cavity output.
    double eta_in = 1;
    /// Probability a photon at any detector registers.
    double detector_efficiency = 1;
    int max_recycles = 50;
    /// Probability p of a dephasing event per attempt; each spin takes a Z
    /// with probability p/2, so coherences shrink by 1 - p.
    double dephasing_per_attempt = 0;

    void validate() const;
};

/// p = 1 - exp(-t_gate / T2).
double dephasing_probability(double gate_time, double coherence_time);

struct OutcomeDistribution {
    double p_even;     // D3
    double p_odd;      // D4
    double p_recycle;  // D1 or D2
    double p_loss;     // no click

    double p_success() const {
        return p_even + p_odd;
    }
};

/// Single-photon outcome probabilities for the current register state.
/// Throws on bad indices or an unnormalized state.
OutcomeDistribution single_shot_distribution(const GateConfig &config, const StateVector &state, int q1, int q2);

struct Efficiencies {
    double eta_h;  // success with one photon
    double eta_v;  // heralded recycle with one photon
    double eta_s;  // success with unlimited recycling, eta_h / (1 - eta_v)
};

/// Raised when eta_v = 1: the gate recycles forever and eta_s is undefined.
class DegenerateRecycling : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// eta_h = |r1 - r0|^2 / 4, eta_v = |r1 + r0|^2 / 4,
/// eta_s = |r1 - r0|^2 / (4 - |r1 + r0|^2).
Efficiencies analytic_etas(const ReflectionPair &pair);

/// Same quantities including mode mismatch and detector efficiency. Reduces
/// to analytic_etas when eta_in = detector_efficiency = 1.
Efficiencies effective_etas(const GateConfig &config);

enum class GateOutcome { Even, Odd, Failure };

Parity parity_of(GateOutcome outcome);

struct GateResult {
    GateOutcome outcome;
    int attempts;  // photons consumed
    /// Projected state on success; on Failure the register as it stood when
    /// the attempt was abandoned (unprojected, awaiting reinitialization).
    StateVector state;
};

/// Repeat-until-success loop. Recycle clicks retry with a new photon, up to
/// max_recycles retries; loss ends the loop with Failure. Dephasing is applied
/// to q1 and q2 on every recycled attempt and once on the successful one.
///
/// `force` selects a branch deterministically (one attempt, no sampling of the
/// outcome); used for exhaustive branch tests.
GateResult run_gate(
    const GateConfig &config,
    StateVector state,
    int q1,
    int q2,
    RandomStream &rng,
    std::optional<GateOutcome> force = std::nullopt);

struct GateStatistics {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t even = 0;
    std::uint64_t odd = 0;
    std::uint64_t photons = 0;
    double fidelity_sum = 0;  // conditional fidelity to the ideal projection
    double min_fidelity = 1;

    double success_rate() const;
    double standard_error() const;  // binomial
    double mean_attempts() const;
    double mean_fidelity() const;

    void merge(const GateStatistics &other);
};

/// Monte Carlo over independent gate runs on `input`. Trials are split into
/// fixed-size chunks, chunk c drawing from rng.split(c), so the result does not
/// depend on `threads` (0 = hardware concurrency).
GateStatistics simulate_gate(
    const GateConfig &config,
    const StateVector &input,
    int q1,
    int q2,
    std::uint64_t trials,
    const RandomStream &rng,
    unsigned threads = 0);

}  // namespace qdgate

#endif
