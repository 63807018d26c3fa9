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

#include <cmath>
#include <numbers>

#include "qdgate/kernels.hpp"

namespace qdgate::kernels {
namespace {

double norm_sq(std::span<const cplx> a) {
    double total = 0;
    for (const cplx &v : a) {
        total += std::norm(v);
    }
    return total;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    cplx total = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        total += std::conj(a[i]) * b[i];
    }
    return total;
}

void scale(std::span<cplx> a, double factor) {
    for (cplx &v : a) {
        v *= factor;
    }
}

void hadamard(std::span<cplx> a, std::size_t stride) {
    constexpr double h = std::numbers::sqrt2 / 2;
    for (std::size_t block = 0; block < a.size(); block += 2 * stride) {
        for (std::size_t i = block; i < block + stride; i++) {
            cplx x = a[i];
            cplx y = a[i + stride];
            a[i] = (x + y) * h;
            a[i + stride] = (x - y) * h;
        }
    }
}

void bit_flip(std::span<cplx> a, std::size_t stride) {
    for (std::size_t block = 0; block < a.size(); block += 2 * stride) {
        for (std::size_t i = block; i < block + stride; i++) {
            std::swap(a[i], a[i + stride]);
        }
    }
}

void phase_flip(std::span<cplx> a, std::size_t stride) {
    for (std::size_t i = 0; i < a.size(); i++) {
        if (i & stride) {
            a[i] = -a[i];
        }
    }
}

double bit_weight(std::span<const cplx> a, std::size_t stride) {
    double total = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        if (i & stride) {
            total += std::norm(a[i]);
        }
    }
    return total;
}

void collapse_bit(std::span<cplx> a, std::size_t stride, bool keep_set) {
    for (std::size_t i = 0; i < a.size(); i++) {
        if (((i & stride) != 0) != keep_set) {
            a[i] = 0;
        }
    }
}

double even_weight(std::span<const cplx> a, std::size_t stride1, std::size_t stride2) {
    double total = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        if (((i & stride1) != 0) == ((i & stride2) != 0)) {
            total += std::norm(a[i]);
        }
    }
    return total;
}

void parity_project(std::span<cplx> a, std::size_t stride1, std::size_t stride2, bool even) {
    for (std::size_t i = 0; i < a.size(); i++) {
        bool b1 = (i & stride1) != 0;
        bool b2 = (i & stride2) != 0;
        if ((b1 == b2) != even) {
            a[i] = 0;
        } else if (b1) {
            a[i] = -a[i];
        }
    }
}

void reflection_pair_at(const CavityConstants &c, double nu, cplx &r0, cplx &r1) {
    // r_j = 1 - kappa a / (a b + j g^2), a = i(omega_X - omega) + gamma/2,
    // b = i(omega_c - omega) + (kappa + kappa_s)/2.
    const cplx a(c.gamma / 2, c.trion_offset - nu);
    const cplx b((c.kappa + c.kappa_s) / 2, -nu);
    const cplx ab = a * b;
    r0 = 1.0 - c.kappa * a / ab;
    r1 = 1.0 - c.kappa * a / (ab + c.g_squared);
}

void reflection_batch(const CavityConstants &c, std::span<const double> nu, std::span<cplx> r0, std::span<cplx> r1) {
    for (std::size_t i = 0; i < nu.size(); i++) {
        reflection_pair_at(c, nu[i], r0[i], r1[i]);
    }
}

EtaSums weighted_etas(const CavityConstants &c, std::span<const double> nu, std::span<const double> w) {
    EtaSums sums{0, 0};
    for (std::size_t i = 0; i < nu.size(); i++) {
        cplx r0, r1;
        reflection_pair_at(c, nu[i], r0, r1);
        sums.eta_h += w[i] * std::norm(r1 - r0) / 4;
        sums.eta_v += w[i] * std::norm(r1 + r0) / 4;
    }
    return sums;
}

}  // namespace

const KernelTable &scalar_table() {
    static const KernelTable table{
        .name = "scalar",
        .norm_sq = norm_sq,
        .inner = inner,
        .scale = scale,
        .hadamard = hadamard,
        .bit_flip = bit_flip,
        .phase_flip = phase_flip,
        .bit_weight = bit_weight,
        .collapse_bit = collapse_bit,
        .even_weight = even_weight,
        .parity_project = parity_project,
        .reflection_batch = reflection_batch,
        .weighted_etas = weighted_etas,
    };
    return table;
}

}  // namespace qdgate::kernels
