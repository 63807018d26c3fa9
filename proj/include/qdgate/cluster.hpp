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

#ifndef QDGATE_CLUSTER_HPP
#define QDGATE_CLUSTER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qdgate/gate.hpp"
#include "qdgate/qstate.hpp"
#include "qdgate/random.hpp"

namespace qdgate {

/// Ordered qubit labels of a 1D cluster: labels[i] plays the role of the i-th
/// spin of canonical_cluster(labels.size()).
using Chain = std::vector<int>;

struct ChainState {
    StateVector reg;
    Chain labels;

    std::size_t length() const {
        return labels.size();
    }
};

/// prod_i (|up>_i + |down>_i Z_{i+1}) over n spins, normalized.
StateVector canonical_cluster(int n);

/// <target| rho |target>, where rho is the reduced state of `labels` (in that
/// order) within `reg`. Equals 1 iff those qubits hold `target` and are
/// unentangled from the rest.
double reduced_fidelity(const StateVector &reg, std::span<const int> labels, const StateVector &target);

/// reduced_fidelity against canonical_cluster(length). An empty chain scores 1.
double chain_fidelity(const ChainState &chain);

/// Measure-and-reset `qubit` to (|up> - |down>)/sqrt(2), the state a fresh
/// spin must hold before it is attached to a chain.
StateVector prepare_fresh(StateVector reg, int qubit, RandomStream &rng);

/// Measure-and-reset `qubit` to (|up> + |down>)/sqrt(2): a length-1 chain.
ChainState seed_chain(StateVector reg, int qubit, RandomStream &rng);

struct GrowResult {
    GateOutcome outcome;
    int attempts;
    ChainState chain;
    /// Qubit measured out of the chain on failure.
    std::optional<int> released;
};

/// Gate between the chain's last qubit and `fresh`, then local feedback:
///   D3 (Even): H on the old last qubit. The fresh spin becomes the
///              second-to-last chain member: [.., j-1, fresh, j].
///   D4 (Odd):  H X on the fresh spin, appended: [.., j, fresh].
///   Failure:   Z-measure the last qubit; on Down apply Z to its predecessor.
///              The chain shrinks by one and `fresh` is left untouched.
/// Throws for an empty chain or a fresh qubit not in the prepared state.
GrowResult grow_chain(
    ChainState chain,
    int fresh,
    const GateConfig &config,
    RandomStream &rng,
    std::optional<GateOutcome> force = std::nullopt);

struct ConnectResult {
    GateOutcome outcome;
    int attempts;
    StateVector reg;
    /// One joined chain on success, the two shortened chains on failure.
    std::vector<Chain> chains;
    /// False when the joined m+n qubits do not form a linear cluster (see
    /// connect_chains).
    bool linear;
    std::vector<int> released;
};

/// Joins chain M (last qubit M_m) to chain N (first qubit N_1): Z on M_m, gate
/// on (M_m, N_1), then H on M_m for D3 or H X on M_m for D4 (plus Z on M_{m-1}
/// so both branches give the same state).
///
/// The result is a linear (m+n)-cluster only when m == 1 (order M_1, N...) or
/// n == 1 (order M_1..M_{m-1}, N_1, M_m). For m, n >= 2 the parity projection
/// leaves M_m as a leaf hanging off N_1 next to M_{m-1} and N_2, a branched
/// graph state that no local operation turns into a chain; `linear` is false
/// and the labels are M followed by N.
///
/// On failure both damaged ends are Z-measured with the same feedback as a
/// failed growth, leaving chains of length m-1 and n-1.
ConnectResult connect_chains(
    StateVector reg,
    Chain m_chain,
    Chain n_chain,
    const GateConfig &config,
    RandomStream &rng,
    std::optional<GateOutcome> force = std::nullopt);

enum class FactoryStrategy { SequentialGrowth, PairwiseDoubling };

struct FactoryStats {
    std::uint64_t trials = 0;
    std::uint64_t builds = 0;            // reached the target length
    std::uint64_t budget_exhausted = 0;  // gave up after max_gate_ops
    double mean_photons = 0;
    double var_photons = 0;
    double mean_gate_ops = 0;
    double var_gate_ops = 0;
    double mean_fidelity = 0;  // final chain vs canonical_cluster(target)
};

/// Monte Carlo over complete builds of a `target`-qubit chain on a register of
/// target + 1 spins. Resource moments are over successful builds.
///
/// SequentialGrowth grows one chain spin by spin. PairwiseDoubling builds the
/// halves ceil(L/2), floor(L/2) recursively and connects them; a failed
/// connect regrows both halves by sequential growth and retries.
FactoryStats simulate_factory(
    int target,
    const GateConfig &config,
    FactoryStrategy strategy,
    const RandomStream &rng,
    std::uint64_t trials,
    unsigned threads = 0,
    std::uint64_t max_gate_ops = 100000);

}  // namespace qdgate

#endif
