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

#ifndef QDGATE_QSTATE_HPP
#define QDGATE_QSTATE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qdgate/random.hpp"

namespace qdgate {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 16;

/// Dense amplitudes of an n-spin register. Qubit 0 is the most significant
/// bit of the basis index; spin up is bit value 0, spin down is 1.
///
/// Values are treated as immutable: operations take a state and return a new
/// one. Global phase is kept as-is; compare states with fidelity().
class StateVector {
   public:
    /// All spins up.
    explicit StateVector(int num_qubits);

    /// Takes amplitudes as given (no normalization). Length must be 2^n.
    static StateVector from_amplitudes(std::vector<cplx> amplitudes);

    /// Tensor product of single-spin states (up, down), qubit 0 first. Each
    /// factor is normalized.
    static StateVector product(std::span<const std::array<cplx, 2>> spins);

    int num_qubits() const {
        return num_qubits_;
    }

    std::size_t size() const {
        return amps_.size();
    }

    std::span<const cplx> amplitudes() const {
        return amps_;
    }

    std::span<cplx> mutable_amplitudes() {
        return amps_;
    }

    cplx operator[](std::size_t index) const {
        return amps_[index];
    }

    double norm_sq() const;

    /// Rescales to unit norm. Throws std::domain_error on the zero vector.
    StateVector &normalize();

    bool is_normalized(double tol = 1e-10) const;

    /// Amplitude-index stride of `qubit`; throws std::out_of_range.
    std::size_t stride(int qubit) const;

   private:
    StateVector(int num_qubits, std::vector<cplx> amps) : num_qubits_(num_qubits), amps_(std::move(amps)) {
    }

    int num_qubits_;
    std::vector<cplx> amps_;
};

enum class Gate1 { H, X, Z };

StateVector apply_1q(StateVector state, int qubit, Gate1 gate);

enum class Parity { Even, Odd };

/// Raised when a projection or measurement branch has zero weight.
class ZeroProbabilityBranch : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

struct Projection {
    StateVector state;
    double probability;
};

/// Signed parity projector on (q1, q2) followed by renormalization.
/// Even keeps |up,up> and -|down,down>; Odd keeps |up,down> and -|down,up>.
/// `probability` is the squared norm before renormalization.
Projection project_parity(const StateVector &state, int q1, int q2, Parity outcome);

/// Unnormalized signed projection; exposed for orthogonality checks.
StateVector apply_parity_projector(StateVector state, int q1, int q2, Parity outcome);

/// Squared norm of the component with the given parity on (q1, q2).
double parity_weight(const StateVector &state, int q1, int q2, Parity parity);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const StateVector &a, const StateVector &b);

cplx inner_product(const StateVector &a, const StateVector &b);

enum class SpinZ { Up, Down };

struct Measurement {
    SpinZ outcome;
    StateVector state;
};

/// Probability that `qubit` reads Down.
double probability_down(const StateVector &state, int qubit);

/// Born-rule sample in the {up, down} basis with collapse.
Measurement measure_z(const StateVector &state, int qubit, RandomStream &rng);

/// Collapse onto a chosen outcome; throws ZeroProbabilityBranch if impossible.
StateVector collapse_z(const StateVector &state, int qubit, SpinZ outcome);

}  // namespace qdgate

#endif
