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

#ifndef QDGATE_KERNELS_HPP
#define QDGATE_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <span>

namespace qdgate::kernels {

using cplx = std::complex<double>;

/// Cavity constants for batched reflection evaluation. Frequencies are probe
/// offsets nu = omega - omega_c in units of kappa.
struct CavityConstants {
    double kappa;
    double kappa_s;
    double gamma;
    double g_squared;
    double trion_offset;  // omega_X - omega_c
};

struct EtaSums {
    double eta_h;  // sum w |r1 - r0|^2 / 4
    double eta_v;  // sum w |r1 + r0|^2 / 4
};

/// One implementation of every data-parallel inner loop. `stride` arguments
/// are the amplitude-index stride of a qubit, 2^(n - 1 - qubit).
struct KernelTable {
    const char *name;

    double (*norm_sq)(std::span<const cplx> a);
    /// sum conj(a_i) * b_i
    cplx (*inner)(std::span<const cplx> a, std::span<const cplx> b);
    void (*scale)(std::span<cplx> a, double factor);

    void (*hadamard)(std::span<cplx> a, std::size_t stride);
    void (*bit_flip)(std::span<cplx> a, std::size_t stride);
    void (*phase_flip)(std::span<cplx> a, std::size_t stride);

    /// Weight of amplitudes whose bit at `stride` is set.
    double (*bit_weight)(std::span<const cplx> a, std::size_t stride);
    /// Zeroes amplitudes whose bit at `stride` differs from `keep_set`.
    void (*collapse_bit)(std::span<cplx> a, std::size_t stride, bool keep_set);

    /// Weight of amplitudes with equal bits at the two strides.
    double (*even_weight)(std::span<const cplx> a, std::size_t stride1, std::size_t stride2);
    /// Signed parity projector: keeps the requested parity subspace and negates
    /// kept amplitudes whose first qubit is down.
    void (*parity_project)(std::span<cplx> a, std::size_t stride1, std::size_t stride2, bool even);

    void (*reflection_batch)(
        const CavityConstants &c, std::span<const double> nu, std::span<cplx> r0, std::span<cplx> r1);
    EtaSums (*weighted_etas)(const CavityConstants &c, std::span<const double> nu, std::span<const double> w);
};

const KernelTable &scalar_table();

/// AVX2+FMA variant, or nullptr when not compiled in or unsupported by the CPU.
const KernelTable *avx2_table();

/// Table chosen at first use: AVX2 when available, unless the environment
/// variable QDGATE_SIMD=scalar forces the reference kernels.
const KernelTable &active();

}  // namespace qdgate::kernels

#endif
