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

#include "qdgate/gate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qdgate/parallel.hpp"

namespace qdgate {

namespace {

constexpr std::uint64_t kTrialsPerChunk = 4096;

void require_unit_interval(double v, const char *name) {
    if (!(v >= 0 && v <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

void dephase(StateVector &state, int q1, int q2, double p, RandomStream &rng) {
    if (p <= 0) {
        return;
    }
    for (int q : {q1, q2}) {
        if (rng.bernoulli(p / 2)) {
            state = apply_1q(std::move(state), q, Gate1::Z);
        }
    }
}

enum class Click { Even, Odd, Recycle, Loss };

Click sample(const OutcomeDistribution &dist, RandomStream &rng) {
    double u = rng.uniform();
    if (u < dist.p_even) {
        return Click::Even;
    }
    u -= dist.p_even;
    if (u < dist.p_odd) {
        return Click::Odd;
    }
    u -= dist.p_odd;
    if (u < dist.p_recycle) {
        return Click::Recycle;
    }
    return Click::Loss;
}

}  // namespace

void GateConfig::validate() const {
    if (!std::isfinite(std::norm(pair.r0)) || !std::isfinite(std::norm(pair.r1))) {
        throw std::invalid_argument("reflection pair is not finite");
    }
    require_unit_interval(eta_in, "eta_in");
    require_unit_interval(detector_efficiency, "detector_efficiency");
    require_unit_interval(dephasing_per_attempt, "dephasing_per_attempt");
    if (max_recycles < 0) {
        throw std::invalid_argument("max_recycles must be non-negative");
    }
}

double dephasing_probability(double gate_time, double coherence_time) {
    if (!(gate_time >= 0) || !(coherence_time > 0)) {
        throw std::invalid_argument("gate time must be >= 0 and coherence time > 0");
    }
    return -std::expm1(-gate_time / coherence_time);
}

OutcomeDistribution single_shot_distribution(const GateConfig &config, const StateVector &state, int q1, int q2) {
    config.validate();
    if (!state.is_normalized()) {
        throw std::invalid_argument("gate input state is not normalized");
    }
    const double eta_in2 = config.eta_in * config.eta_in;
    const double det = config.detector_efficiency;
    const double herald = det * eta_in2 * std::norm(config.pair.d);
    const double w_even = std::clamp(parity_weight(state, q1, q2, Parity::Even), 0.0, 1.0);

    OutcomeDistribution dist{};
    dist.p_even = herald * w_even;
    dist.p_odd = herald * (1.0 - w_even);
    dist.p_recycle = det * (eta_in2 * std::norm(config.pair.s) + (1.0 - eta_in2));
    dist.p_loss = std::max(0.0, 1.0 - dist.p_even - dist.p_odd - dist.p_recycle);
    return dist;
}

Efficiencies analytic_etas(const ReflectionPair &pair) {
    const double diff2 = std::norm(pair.r1 - pair.r0);
    const double sum2 = std::norm(pair.r1 + pair.r0);
    const double denominator = 4.0 - sum2;
    if (!(denominator > 0)) {
        throw DegenerateRecycling("eta_V = 1: every photon is recycled and eta_S is undefined");
    }
    return {diff2 / 4.0, sum2 / 4.0, diff2 / denominator};
}

Efficiencies effective_etas(const GateConfig &config) {
    config.validate();
    const double eta_in2 = config.eta_in * config.eta_in;
    const double det = config.detector_efficiency;
    const double eta_h = det * eta_in2 * std::norm(config.pair.d);
    const double eta_v = det * (eta_in2 * std::norm(config.pair.s) + (1.0 - eta_in2));
    if (!(eta_v < 1)) {
        throw DegenerateRecycling("eta_V = 1: every photon is recycled and eta_S is undefined");
    }
    return {eta_h, eta_v, eta_h / (1.0 - eta_v)};
}

Parity parity_of(GateOutcome outcome) {
    if (outcome == GateOutcome::Failure) {
        throw std::invalid_argument("a failed gate has no parity");
    }
    return outcome == GateOutcome::Even ? Parity::Even : Parity::Odd;
}

GateResult run_gate(
    const GateConfig &config, StateVector state, int q1, int q2, RandomStream &rng, std::optional<GateOutcome> force) {
    config.validate();
    if (force.has_value()) {
        if (*force == GateOutcome::Failure) {
            return {GateOutcome::Failure, 1, std::move(state)};
        }
        dephase(state, q1, q2, config.dephasing_per_attempt, rng);
        Projection p = project_parity(state, q1, q2, parity_of(*force));
        return {*force, 1, std::move(p.state)};
    }

    // Recycle clicks and Z errors leave both parity weights unchanged, so the
    // distribution is computed once.
    const OutcomeDistribution dist = single_shot_distribution(config, state, q1, q2);
    for (int attempt = 1;; attempt++) {
        const Click click = sample(dist, rng);
        if (click == Click::Loss) {
            return {GateOutcome::Failure, attempt, std::move(state)};
        }
        dephase(state, q1, q2, config.dephasing_per_attempt, rng);
        if (click == Click::Recycle) {
            if (attempt > config.max_recycles) {
                return {GateOutcome::Failure, attempt, std::move(state)};
            }
            continue;
        }
        const GateOutcome outcome = click == Click::Even ? GateOutcome::Even : GateOutcome::Odd;
        Projection p = project_parity(state, q1, q2, parity_of(outcome));
        return {outcome, attempt, std::move(p.state)};
    }
}

double GateStatistics::success_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
}

double GateStatistics::standard_error() const {
    if (trials == 0) {
        return 0.0;
    }
    double p = success_rate();
    return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

double GateStatistics::mean_attempts() const {
    return trials == 0 ? 0.0 : static_cast<double>(photons) / static_cast<double>(trials);
}

double GateStatistics::mean_fidelity() const {
    return successes == 0 ? 0.0 : fidelity_sum / static_cast<double>(successes);
}

void GateStatistics::merge(const GateStatistics &other) {
    trials += other.trials;
    successes += other.successes;
    even += other.even;
    odd += other.odd;
    photons += other.photons;
    fidelity_sum += other.fidelity_sum;
    min_fidelity = std::min(min_fidelity, other.min_fidelity);
}

GateStatistics simulate_gate(
    const GateConfig &config,
    const StateVector &input,
    int q1,
    int q2,
    std::uint64_t trials,
    const RandomStream &rng,
    unsigned threads) {
    config.validate();
    single_shot_distribution(config, input, q1, q2);

    // Reference states for the conditional fidelity; a branch of zero weight
    // can never be sampled.
    std::optional<StateVector> ideal_even;
    std::optional<StateVector> ideal_odd;
    if (parity_weight(input, q1, q2, Parity::Even) > 0) {
        ideal_even = project_parity(input, q1, q2, Parity::Even).state;
    }
    if (parity_weight(input, q1, q2, Parity::Odd) > 0) {
        ideal_odd = project_parity(input, q1, q2, Parity::Odd).state;
    }

    const std::size_t chunks = static_cast<std::size_t>((trials + kTrialsPerChunk - 1) / kTrialsPerChunk);
    std::vector<GateStatistics> partial(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        RandomStream stream = rng.split(c);
        std::uint64_t begin = c * kTrialsPerChunk;
        std::uint64_t count = std::min(kTrialsPerChunk, trials - begin);
        GateStatistics &stats = partial[c];
        for (std::uint64_t t = 0; t < count; t++) {
            GateResult result = run_gate(config, input, q1, q2, stream);
            stats.trials++;
            stats.photons += static_cast<std::uint64_t>(result.attempts);
            if (result.outcome == GateOutcome::Failure) {
                continue;
            }
            stats.successes++;
            const StateVector &ideal = result.outcome == GateOutcome::Even ? *ideal_even : *ideal_odd;
            (result.outcome == GateOutcome::Even ? stats.even : stats.odd)++;
            double f = fidelity(ideal, result.state);
            stats.fidelity_sum += f;
            stats.min_fidelity = std::min(stats.min_fidelity, f);
        }
    });

    GateStatistics total;
    for (const GateStatistics &p : partial) {
        total.merge(p);
    }
    return total;
}

}  // namespace qdgate
