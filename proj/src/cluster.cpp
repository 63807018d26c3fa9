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

#include "qdgate/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qdgate/parallel.hpp"

namespace qdgate {

namespace {

constexpr double kPreparedTolerance = 1e-9;
constexpr std::uint64_t kBuildsPerChunk = 256;

const StateVector &minus_state() {
    static const StateVector s = StateVector::from_amplitudes({std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2});
    return s;
}

void check_labels(const StateVector &reg, std::span<const int> labels) {
    std::vector<int> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("chain labels must be distinct");
    }
    for (int q : labels) {
        reg.stride(q);
    }
}

StateVector feedback_z_on_down(StateVector reg, SpinZ outcome, const Chain &chain, std::size_t neighbor) {
    if (outcome == SpinZ::Down && neighbor < chain.size()) {
        reg = apply_1q(std::move(reg), chain[neighbor], Gate1::Z);
    }
    return reg;
}

/// Single build attempt; throws BudgetExceeded past the gate-op limit.
class Builder {
   public:
    struct BudgetExceeded {};

    Builder(int target, const GateConfig &config, RandomStream &rng, std::uint64_t max_ops)
        : reg_(target + 1), config_(config), rng_(rng), max_ops_(max_ops) {
        for (int q = target; q >= 0; q--) {
            free_.push_back(q);
        }
    }

    std::uint64_t ops() const {
        return ops_;
    }

    std::uint64_t photons() const {
        return photons_;
    }

    const StateVector &reg() const {
        return reg_;
    }

    Chain sequential(Chain chain, std::size_t length) {
        while (chain.size() < length) {
            if (chain.empty()) {
                chain = seed();
                continue;
            }
            int fresh = take_fresh();
            count_op();
            GrowResult r = grow_chain({std::move(reg_), std::move(chain)}, fresh, config_, rng_);
            photons_ += static_cast<std::uint64_t>(r.attempts);
            reg_ = std::move(r.chain.reg);
            chain = std::move(r.chain.labels);
            if (r.released) {
                free_.push_back(fresh);
                free_.push_back(*r.released);
            }
        }
        return chain;
    }

    Chain doubling(std::size_t length) {
        if (length == 1) {
            return seed();
        }
        std::size_t a = (length + 1) / 2;
        std::size_t b = length - a;
        Chain m = doubling(a);
        Chain n = doubling(b);
        while (true) {
            count_op();
            ConnectResult r = connect_chains(std::move(reg_), std::move(m), std::move(n), config_, rng_);
            photons_ += static_cast<std::uint64_t>(r.attempts);
            reg_ = std::move(r.reg);
            if (r.outcome != GateOutcome::Failure) {
                return std::move(r.chains.front());
            }
            free_.insert(free_.end(), r.released.begin(), r.released.end());
            m = sequential(std::move(r.chains[0]), a);
            n = sequential(std::move(r.chains[1]), b);
        }
    }

   private:
    void count_op() {
        if (ops_ >= max_ops_) {
            throw BudgetExceeded{};
        }
        ops_++;
    }

    int take_free() {
        int q = free_.back();
        free_.pop_back();
        return q;
    }

    int take_fresh() {
        int q = take_free();
        reg_ = prepare_fresh(std::move(reg_), q, rng_);
        return q;
    }

    Chain seed() {
        ChainState c = seed_chain(std::move(reg_), take_free(), rng_);
        reg_ = std::move(c.reg);
        return std::move(c.labels);
    }

    StateVector reg_;
    const GateConfig &config_;
    RandomStream &rng_;
    std::uint64_t max_ops_;
    std::uint64_t ops_ = 0;
    std::uint64_t photons_ = 0;
    std::vector<int> free_;
};

struct FactoryPartial {
    std::uint64_t trials = 0;
    std::uint64_t builds = 0;
    std::uint64_t exhausted = 0;
    double photons = 0;
    double photons_sq = 0;
    double ops = 0;
    double ops_sq = 0;
    double fidelity = 0;
};

}  // namespace

StateVector canonical_cluster(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("cluster size must be in [1, 16], got " + std::to_string(n));
    }
    const std::size_t dim = std::size_t{1} << n;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<cplx> amps(dim);
    for (std::size_t i = 0; i < dim; i++) {
        // Bonds between neighbouring down spins each contribute a sign.
        int bonds = std::popcount(i & (i >> 1));
        amps[i] = (bonds % 2 == 0) ? amp : -amp;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

double reduced_fidelity(const StateVector &reg, std::span<const int> labels, const StateVector &target) {
    check_labels(reg, labels);
    const int k = static_cast<int>(labels.size());
    if (target.num_qubits() != k) {
        throw std::invalid_argument("target size does not match the number of labels");
    }
    const int n = reg.num_qubits();
    std::vector<std::size_t> label_strides(k);
    std::size_t label_mask = 0;
    for (int i = 0; i < k; i++) {
        label_strides[i] = reg.stride(labels[i]);
        label_mask |= label_strides[i];
    }
    std::vector<std::size_t> rest_strides;
    for (int q = 0; q < n; q++) {
        if (!(reg.stride(q) & label_mask)) {
            rest_strides.push_back(reg.stride(q));
        }
    }

    std::vector<cplx> projected(std::size_t{1} << rest_strides.size(), cplx{0});
    auto amps = reg.amplitudes();
    for (std::size_t index = 0; index < amps.size(); index++) {
        if (amps[index] == cplx{0}) {
            continue;
        }
        std::size_t t = 0;
        for (int i = 0; i < k; i++) {
            t = (t << 1) | ((index & label_strides[i]) ? 1 : 0);
        }
        std::size_t r = 0;
        for (std::size_t s : rest_strides) {
            r = (r << 1) | ((index & s) ? 1 : 0);
        }
        projected[r] += std::conj(target[t]) * amps[index];
    }
    double total = 0;
    for (cplx v : projected) {
        total += std::norm(v);
    }
    return std::min(1.0, total / (reg.norm_sq() * target.norm_sq()));
}

double chain_fidelity(const ChainState &chain) {
    if (chain.labels.empty()) {
        return 1.0;
    }
    return reduced_fidelity(chain.reg, chain.labels, canonical_cluster(static_cast<int>(chain.length())));
}

StateVector prepare_fresh(StateVector reg, int qubit, RandomStream &rng) {
    Measurement m = measure_z(reg, qubit, rng);
    reg = std::move(m.state);
    if (m.outcome == SpinZ::Up) {
        reg = apply_1q(std::move(reg), qubit, Gate1::X);
    }
    return apply_1q(std::move(reg), qubit, Gate1::H);
}

ChainState seed_chain(StateVector reg, int qubit, RandomStream &rng) {
    Measurement m = measure_z(reg, qubit, rng);
    reg = std::move(m.state);
    if (m.outcome == SpinZ::Down) {
        reg = apply_1q(std::move(reg), qubit, Gate1::X);
    }
    return {apply_1q(std::move(reg), qubit, Gate1::H), {qubit}};
}

GrowResult grow_chain(
    ChainState chain, int fresh, const GateConfig &config, RandomStream &rng, std::optional<GateOutcome> force) {
    if (chain.labels.empty()) {
        throw std::invalid_argument("cannot grow an empty chain; seed it first");
    }
    check_labels(chain.reg, chain.labels);
    if (std::find(chain.labels.begin(), chain.labels.end(), fresh) != chain.labels.end()) {
        throw std::invalid_argument("fresh qubit is already part of the chain");
    }
    const int fresh_label[] = {fresh};
    if (reduced_fidelity(chain.reg, fresh_label, minus_state()) < 1 - kPreparedTolerance) {
        throw std::invalid_argument("fresh qubit is not in the state (|up> - |down>)/sqrt(2)");
    }

    const int last = chain.labels.back();
    GateResult g = run_gate(config, std::move(chain.reg), last, fresh, rng, force);
    StateVector reg = std::move(g.state);
    Chain labels = std::move(chain.labels);

    switch (g.outcome) {
        case GateOutcome::Even:
            reg = apply_1q(std::move(reg), last, Gate1::H);
            labels.back() = fresh;
            labels.push_back(last);
            return {g.outcome, g.attempts, {std::move(reg), std::move(labels)}, std::nullopt};
        case GateOutcome::Odd:
            reg = apply_1q(std::move(reg), fresh, Gate1::X);
            reg = apply_1q(std::move(reg), fresh, Gate1::H);
            labels.push_back(fresh);
            return {g.outcome, g.attempts, {std::move(reg), std::move(labels)}, std::nullopt};
        case GateOutcome::Failure:
            break;
    }
    Measurement m = measure_z(reg, last, rng);
    labels.pop_back();
    reg = feedback_z_on_down(std::move(m.state), m.outcome, labels, labels.size() - 1);
    return {GateOutcome::Failure, g.attempts, {std::move(reg), std::move(labels)}, last};
}

ConnectResult connect_chains(
    StateVector reg, Chain m_chain, Chain n_chain, const GateConfig &config, RandomStream &rng,
    std::optional<GateOutcome> force) {
    if (m_chain.empty() || n_chain.empty()) {
        throw std::invalid_argument("cannot connect an empty chain");
    }
    Chain all = m_chain;
    all.insert(all.end(), n_chain.begin(), n_chain.end());
    check_labels(reg, all);

    const int m_end = m_chain.back();
    const int n_start = n_chain.front();
    const std::size_t m = m_chain.size();
    const std::size_t n = n_chain.size();

    reg = apply_1q(std::move(reg), m_end, Gate1::Z);
    GateResult g = run_gate(config, std::move(reg), m_end, n_start, rng, force);
    reg = std::move(g.state);

    if (g.outcome == GateOutcome::Failure) {
        Measurement mm = measure_z(reg, m_end, rng);
        m_chain.pop_back();
        reg = feedback_z_on_down(std::move(mm.state), mm.outcome, m_chain, m_chain.size() - 1);
        Measurement nm = measure_z(reg, n_start, rng);
        n_chain.erase(n_chain.begin());
        reg = feedback_z_on_down(std::move(nm.state), nm.outcome, n_chain, 0);
        return {
            GateOutcome::Failure,
            g.attempts,
            std::move(reg),
            {std::move(m_chain), std::move(n_chain)},
            true,
            {m_end, n_start}};
    }

    if (g.outcome == GateOutcome::Odd) {
        reg = apply_1q(std::move(reg), m_end, Gate1::X);
        if (m >= 2) {
            reg = apply_1q(std::move(reg), m_chain[m - 2], Gate1::Z);
        }
    }
    reg = apply_1q(std::move(reg), m_end, Gate1::H);

    Chain joined;
    bool linear = true;
    if (n == 1 && m >= 2) {
        joined.assign(m_chain.begin(), m_chain.end() - 1);
        joined.push_back(n_start);
        joined.push_back(m_end);
    } else {
        joined = std::move(all);
        linear = m == 1 || n == 1;
    }
    return {g.outcome, g.attempts, std::move(reg), {std::move(joined)}, linear, {}};
}

FactoryStats simulate_factory(
    int target,
    const GateConfig &config,
    FactoryStrategy strategy,
    const RandomStream &rng,
    std::uint64_t trials,
    unsigned threads,
    std::uint64_t max_gate_ops) {
    if (target < 1 || target > 10) {
        throw std::invalid_argument("factory target must be in [1, 10]");
    }
    if (trials < 1) {
        throw std::invalid_argument("factory needs at least one trial");
    }
    config.validate();

    const std::size_t chunks = static_cast<std::size_t>((trials + kBuildsPerChunk - 1) / kBuildsPerChunk);
    std::vector<FactoryPartial> partial(chunks);
    const StateVector reference = canonical_cluster(target);
    parallel_for(chunks, threads, [&](std::size_t c) {
        RandomStream stream = rng.split(c);
        std::uint64_t count = std::min(kBuildsPerChunk, trials - c * kBuildsPerChunk);
        FactoryPartial &p = partial[c];
        for (std::uint64_t t = 0; t < count; t++) {
            p.trials++;
            Builder builder(target, config, stream, max_gate_ops);
            Chain chain;
            try {
                chain = strategy == FactoryStrategy::SequentialGrowth
                            ? builder.sequential({}, static_cast<std::size_t>(target))
                            : builder.doubling(static_cast<std::size_t>(target));
            } catch (const Builder::BudgetExceeded &) {
                p.exhausted++;
                continue;
            }
            double photons = static_cast<double>(builder.photons());
            double ops = static_cast<double>(builder.ops());
            p.builds++;
            p.photons += photons;
            p.photons_sq += photons * photons;
            p.ops += ops;
            p.ops_sq += ops * ops;
            p.fidelity += reduced_fidelity(builder.reg(), chain, reference);
        }
    });

    FactoryPartial sum;
    for (const FactoryPartial &p : partial) {
        sum.trials += p.trials;
        sum.builds += p.builds;
        sum.exhausted += p.exhausted;
        sum.photons += p.photons;
        sum.photons_sq += p.photons_sq;
        sum.ops += p.ops;
        sum.ops_sq += p.ops_sq;
        sum.fidelity += p.fidelity;
    }
    FactoryStats stats;
    stats.trials = sum.trials;
    stats.builds = sum.builds;
    stats.budget_exhausted = sum.exhausted;
    if (sum.builds > 0) {
        double b = static_cast<double>(sum.builds);
        stats.mean_photons = sum.photons / b;
        stats.mean_gate_ops = sum.ops / b;
        stats.mean_fidelity = sum.fidelity / b;
        if (sum.builds > 1) {
            stats.var_photons = (sum.photons_sq - b * stats.mean_photons * stats.mean_photons) / (b - 1);
            stats.var_gate_ops = (sum.ops_sq - b * stats.mean_gate_ops * stats.mean_gate_ops) / (b - 1);
        }
    }
    return stats;
}

}  // namespace qdgate
