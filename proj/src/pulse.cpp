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

#include "qdgate/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdgate/kernels.hpp"

namespace qdgate {

namespace {

constexpr double kRefinementTolerance = 1e-6;
constexpr int kMaxSuggestedPoints = 1 << 22;

kernels::CavityConstants constants_of(const CavityParams &params) {
    params.validate();
    return {
        .kappa = params.kappa,
        .kappa_s = params.kappa_s,
        .gamma = params.gamma,
        .g_squared = params.g * params.g,
        .trion_offset = params.trion_detuning - params.cavity_detuning,
    };
}

kernels::EtaSums sums_on(const kernels::CavityConstants &c, const PulseSpec &pulse) {
    QuadratureGrid grid = quadrature_grid(pulse);
    return kernels::active().weighted_etas(c, grid.nu, grid.weights);
}

double refinement_change(const kernels::CavityConstants &c, const PulseSpec &pulse) {
    PulseSpec fine = pulse;
    fine.n_points *= 2;
    kernels::EtaSums a = sums_on(c, pulse);
    kernels::EtaSums b = sums_on(c, fine);
    return std::max(std::abs(a.eta_h - b.eta_h), std::abs(a.eta_v - b.eta_v));
}

Efficiencies to_efficiencies(kernels::EtaSums sums) {
    if (!(sums.eta_v < 1)) {
        throw DegenerateRecycling("spectrally averaged eta_V = 1");
    }
    return {sums.eta_h, sums.eta_v, sums.eta_h / (1.0 - sums.eta_v)};
}

}  // namespace

void PulseSpec::validate() const {
    if (!(delta > 0) || !std::isfinite(delta)) {
        throw std::invalid_argument("pulse bandwidth must be positive and finite");
    }
    if (!std::isfinite(center)) {
        throw std::invalid_argument("pulse center must be finite");
    }
    if (n_points < 16) {
        throw std::invalid_argument("pulse quadrature needs at least 16 points");
    }
    if (!(span > 0) || !std::isfinite(span)) {
        throw std::invalid_argument("pulse span must be positive and finite");
    }
}

QuadratureGrid quadrature_grid(const PulseSpec &pulse) {
    pulse.validate();
    const std::size_t n = static_cast<std::size_t>(pulse.n_points);
    const double lo = pulse.center - pulse.span * pulse.delta;
    const double h = 2 * pulse.span * pulse.delta / static_cast<double>(n);
    QuadratureGrid grid;
    grid.nu.resize(n);
    grid.weights.resize(n);
    double total = 0;
    for (std::size_t i = 0; i < n; i++) {
        double nu = lo + h * (static_cast<double>(i) + 0.5);
        double x = (nu - pulse.center) / pulse.delta;
        grid.nu[i] = nu;
        grid.weights[i] = std::exp(-x * x);
        total += grid.weights[i];
    }
    for (double &w : grid.weights) {
        w /= total;
    }
    return grid;
}

CavityParams at_frequency(const CavityParams &params, double nu) {
    CavityParams out = params;
    out.trion_detuning = (params.trion_detuning - params.cavity_detuning) - nu;
    out.cavity_detuning = -nu;
    return out;
}

Efficiencies pulse_etas_on_grid(const CavityParams &params, const PulseSpec &pulse) {
    return to_efficiencies(sums_on(constants_of(params), pulse));
}

Efficiencies pulse_etas(const CavityParams &params, const PulseSpec &pulse) {
    const kernels::CavityConstants c = constants_of(params);
    pulse.validate();
    if (refinement_change(c, pulse) > kRefinementTolerance) {
        PulseSpec trial = pulse;
        while (trial.n_points < kMaxSuggestedPoints && refinement_change(c, trial) > kRefinementTolerance) {
            trial.n_points *= 2;
        }
        throw QuadratureError(
            "pulse quadrature with " + std::to_string(pulse.n_points) +
                " points is too coarse; try n_points = " + std::to_string(trial.n_points),
            trial.n_points);
    }
    return to_efficiencies(sums_on(c, pulse));
}

StateVector heralded_component(
    const CavityParams &params, double nu, const StateVector &state, int q1, int q2, Parity parity) {
    const ReflectionPair pair = reflection_pair(at_frequency(params, nu));
    StateVector out = apply_parity_projector(state, q1, q2, parity);
    for (cplx &a : out.mutable_amplitudes()) {
        a *= pair.d;
    }
    return out;
}

double pulse_heralded_fidelity(
    const CavityParams &params, const PulseSpec &pulse, const StateVector &state, int q1, int q2, Parity parity) {
    const StateVector ideal = project_parity(state, q1, q2, parity).state;
    const QuadratureGrid grid = quadrature_grid(pulse);
    // Frequency components are orthogonal photon states, so the heralded spin
    // state is the weight-averaged mixture of the per-frequency rays.
    double weight = 0;
    double overlap = 0;
    for (std::size_t i = 0; i < grid.nu.size(); i++) {
        StateVector component = heralded_component(params, grid.nu[i], state, q1, q2, parity);
        double w = grid.weights[i] * component.norm_sq();
        if (w == 0) {
            continue;
        }
        weight += w;
        overlap += w * fidelity(ideal, component);
    }
    if (!(weight > 0)) {
        throw ZeroProbabilityBranch("heralded branch has zero probability for this pulse");
    }
    return overlap / weight;
}

}  // namespace qdgate
