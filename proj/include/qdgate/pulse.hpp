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

#ifndef QDGATE_PULSE_HPP
#define QDGATE_PULSE_HPP

#include <stdexcept>
#include <vector>

#include "qdgate/cavity.hpp"
#include "qdgate/gate.hpp"
#include "qdgate/qstate.hpp"

namespace qdgate {

/// Gaussian single-photon wavepacket. |f(nu)|^2 is a unit-normalized Gaussian
/// density of standard deviation delta / sqrt(2) around `center`, where nu is
/// the frequency offset omega - omega_c in units of kappa.
struct PulseSpec {
    double delta = 1e-4;
    double center = 0;
    int n_points = 512;
    double span = 5;  // half-width of the grid in units of delta

    void validate() const;
};

/// Midpoint rule on [center - span*delta, center + span*delta] with weights
/// renormalized to sum to one.
struct QuadratureGrid {
    std::vector<double> nu;
    std::vector<double> weights;
};

QuadratureGrid quadrature_grid(const PulseSpec &pulse);

class QuadratureError : public std::runtime_error {
   public:
    QuadratureError(const std::string &what, int suggested_points)
        : std::runtime_error(what), suggested_points_(suggested_points) {
    }

    int suggested_points() const {
        return suggested_points_;
    }

   private:
    int suggested_points_;
};

/// The cavity as seen at probe offset nu: the dot-cavity detuning of `params`
/// is kept and the probe detunings are replaced.
CavityParams at_frequency(const CavityParams &params, double nu);

/// Spectrally averaged efficiencies. Compares the grid against one of twice
/// the resolution and throws QuadratureError (with a suggested n_points) when
/// they differ by more than 1e-6.
Efficiencies pulse_etas(const CavityParams &params, const PulseSpec &pulse);

/// Same average on the given grid without the refinement check.
Efficiencies pulse_etas_on_grid(const CavityParams &params, const PulseSpec &pulse);

/// Unnormalized spin state heralded at D3 (Even) or D4 (Odd) by the frequency
/// component nu: d(nu) times the signed parity projection of `state`.
StateVector heralded_component(
    const CavityParams &params, double nu, const StateVector &state, int q1, int q2, Parity parity);

/// Fidelity of the spin state conditioned on a heralding click, with the
/// photon frequency traced out, to the monochromatic ideal projection.
double pulse_heralded_fidelity(
    const CavityParams &params, const PulseSpec &pulse, const StateVector &state, int q1, int q2, Parity parity);

}  // namespace qdgate

#endif
