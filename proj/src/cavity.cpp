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

#include "qdgate/cavity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdgate {

namespace {

void require_finite(double v, const char *name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("cavity parameter '") + name + "' is not finite");
    }
}

}  // namespace

void CavityParams::validate() const {
    require_finite(cavity_detuning, "cavity_detuning");
    require_finite(trion_detuning, "trion_detuning");
    require_finite(kappa, "kappa");
    require_finite(kappa_s, "kappa_s");
    require_finite(gamma, "gamma");
    require_finite(g, "g");
    if (kappa <= 0) {
        throw std::invalid_argument("kappa must be positive");
    }
    if (gamma <= 0) {
        throw std::invalid_argument("gamma must be positive");
    }
    if (kappa_s < 0) {
        throw std::invalid_argument("kappa_s must be non-negative");
    }
    if (g < 0) {
        throw std::invalid_argument("g must be non-negative");
    }
}

CavityParams CavityParams::with_cooperativity(double c) const {
    if (!(c >= 0) || !std::isfinite(c)) {
        throw std::invalid_argument("cooperativity must be finite and non-negative");
    }
    CavityParams out = *this;
    out.g = std::sqrt(c * gamma * kappa_total());
    return out;
}

CavityParams CavityParams::with_kappa_ratio(double ratio) const {
    if (!(ratio > 0)) {
        throw std::invalid_argument("kappa/kappa_s ratio must be positive");
    }
    double c = cooperativity();
    CavityParams out = *this;
    out.kappa_s = std::isinf(ratio) ? 0.0 : kappa / ratio;
    return out.with_cooperativity(c);
}

cplx reflection(const CavityParams &params, bool coupled) {
    params.validate();
    const cplx trion(params.gamma / 2, params.trion_detuning);
    const cplx cavity(params.kappa_total() / 2, params.cavity_detuning);
    const double coupling = coupled ? params.g * params.g : 0.0;
    return 1.0 - params.kappa * trion / (trion * cavity + coupling);
}

ReflectionPair reflection_pair(const CavityParams &params) {
    return ReflectionPair::from_coefficients(reflection(params, false), reflection(params, true));
}

}  // namespace qdgate
