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

#include "qdgate/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qdgate/kernels.hpp"

namespace qdgate {

namespace {

void check_distinct(const StateVector &state, int q1, int q2) {
    state.stride(q1);
    state.stride(q2);
    if (q1 == q2) {
        throw std::invalid_argument("parity projection needs two distinct qubits");
    }
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("register size must be in [1, 16], got " + std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, cplx{0});
    amps_[0] = 1;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
    std::size_t len = amplitudes.size();
    if (len < 2 || (len & (len - 1)) != 0) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    }
    int n = std::countr_zero(len);
    if (n > kMaxQubits) {
        throw std::invalid_argument("register larger than 16 qubits");
    }
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::product(std::span<const std::array<cplx, 2>> spins) {
    int n = static_cast<int>(spins.size());
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("register size must be in [1, 16]");
    }
    std::vector<cplx> amps{1.0};
    for (const auto &spin : spins) {
        double norm = std::sqrt(std::norm(spin[0]) + std::norm(spin[1]));
        if (norm == 0 || !std::isfinite(norm)) {
            throw std::invalid_argument("single-spin factor has zero or non-finite norm");
        }
        std::vector<cplx> next;
        next.reserve(amps.size() * 2);
        for (cplx a : amps) {
            next.push_back(a * spin[0] / norm);
            next.push_back(a * spin[1] / norm);
        }
        amps = std::move(next);
    }
    return StateVector(n, std::move(amps));
}

double StateVector::norm_sq() const {
    return kernels::active().norm_sq(amps_);
}

StateVector &StateVector::normalize() {
    double n2 = norm_sq();
    if (!(n2 > 0) || !std::isfinite(n2)) {
        throw std::domain_error("cannot normalize a zero or non-finite state");
    }
    kernels::active().scale(amps_, 1.0 / std::sqrt(n2));
    return *this;
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_sq() - 1.0) <= tol;
}

std::size_t StateVector::stride(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) {
        throw std::out_of_range(
            "qubit " + std::to_string(qubit) + " out of range for " + std::to_string(num_qubits_) + "-qubit register");
    }
    return std::size_t{1} << (num_qubits_ - 1 - qubit);
}

StateVector apply_1q(StateVector state, int qubit, Gate1 gate) {
    std::size_t stride = state.stride(qubit);
    const auto &k = kernels::active();
    switch (gate) {
        case Gate1::H:
            k.hadamard(state.mutable_amplitudes(), stride);
            break;
        case Gate1::X:
            k.bit_flip(state.mutable_amplitudes(), stride);
            break;
        case Gate1::Z:
            k.phase_flip(state.mutable_amplitudes(), stride);
            break;
    }
    return state;
}

StateVector apply_parity_projector(StateVector state, int q1, int q2, Parity outcome) {
    check_distinct(state, q1, q2);
    kernels::active().parity_project(
        state.mutable_amplitudes(), state.stride(q1), state.stride(q2), outcome == Parity::Even);
    return state;
}

double parity_weight(const StateVector &state, int q1, int q2, Parity parity) {
    check_distinct(state, q1, q2);
    double even = kernels::active().even_weight(state.amplitudes(), state.stride(q1), state.stride(q2));
    return parity == Parity::Even ? even : state.norm_sq() - even;
}

Projection project_parity(const StateVector &state, int q1, int q2, Parity outcome) {
    StateVector projected = apply_parity_projector(state, q1, q2, outcome);
    double probability = projected.norm_sq();
    if (!(probability > 0)) {
        throw ZeroProbabilityBranch(
            std::string(outcome == Parity::Even ? "even" : "odd") + "-parity branch has zero probability");
    }
    projected.normalize();
    return {std::move(projected), probability};
}

cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("fidelity between registers of different size");
    }
    return kernels::active().inner(a.amplitudes(), b.amplitudes());
}

double fidelity(const StateVector &a, const StateVector &b) {
    cplx overlap = inner_product(a, b);
    double f = std::norm(overlap) / (a.norm_sq() * b.norm_sq());
    return std::min(f, 1.0);
}

double probability_down(const StateVector &state, int qubit) {
    return kernels::active().bit_weight(state.amplitudes(), state.stride(qubit)) / state.norm_sq();
}

StateVector collapse_z(const StateVector &state, int qubit, SpinZ outcome) {
    StateVector out = state;
    kernels::active().collapse_bit(out.mutable_amplitudes(), out.stride(qubit), outcome == SpinZ::Down);
    if (!(out.norm_sq() > 0)) {
        throw ZeroProbabilityBranch("measurement outcome has zero probability");
    }
    out.normalize();
    return out;
}

Measurement measure_z(const StateVector &state, int qubit, RandomStream &rng) {
    double p_down = probability_down(state, qubit);
    SpinZ outcome = rng.uniform() < p_down ? SpinZ::Down : SpinZ::Up;
    return {outcome, collapse_z(state, qubit, outcome)};
}

}  // namespace qdgate
