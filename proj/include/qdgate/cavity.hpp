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

#ifndef QDGATE_CAVITY_HPP
#define QDGATE_CAVITY_HPP

#include <complex>

namespace qdgate {

using cplx = std::complex<double>;

/// One quantum dot in a single-sided cavity. Every rate and detuning is in
/// units of the input-output coupling kappa (kappa itself is normally 1).
/// Only frequency differences enter, so the probe is described by its
/// detunings from the cavity and from the trion transition.
///
/// The steady-state reflection assumes weak excitation (the dot stays mostly
/// in its ground state); nothing here checks that.
struct CavityParams {
    double cavity_detuning = 0;  // omega_c - omega
    double trion_detuning = 0;   // omega_X - omega
    double kappa = 1;
    double kappa_s = 0;  // side leakage
    double gamma = 0.1;  // trion decay
    double g = 0;        // dot-cavity coupling

    double kappa_total() const {
        return kappa + kappa_s;
    }

    /// C = g^2 / (gamma * kappa_total).
    double cooperativity() const {
        return g * g / (gamma * kappa_total());
    }

    /// Copy with g chosen so that cooperativity() == c.
    CavityParams with_cooperativity(double c) const;

    /// Copy with kappa_s = kappa / ratio, keeping the cooperativity fixed.
    CavityParams with_kappa_ratio(double ratio) const;

    /// Throws std::invalid_argument for non-finite or unphysical values.
    void validate() const;
};

/// Reflection coefficients of the uncoupled (r0) and coupled (r1) circular
/// polarization, plus the combinations that reach the detectors.
struct ReflectionPair {
    cplx r0;
    cplx r1;
    cplx d;  // (r1 - r0) / 2, heralded-success amplitude
    cplx s;  // (r1 + r0) / 2, recycle amplitude

    static ReflectionPair from_coefficients(cplx r0, cplx r1) {
        return {r0, r1, (r1 - r0) / 2.0, (r1 + r0) / 2.0};
    }

    /// r1 = 1, r0 = -1: every photon heralds success.
    static ReflectionPair ideal() {
        return from_coefficients(-1.0, 1.0);
    }
};

/// Steady-state reflection coefficient r_j, j = 1 when `coupled`.
cplx reflection(const CavityParams &params, bool coupled);

ReflectionPair reflection_pair(const CavityParams &params);

}  // namespace qdgate

#endif
