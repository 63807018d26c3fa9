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

// Compiled with -mavx2 -mfma. Only reached through avx2_table(), which checks
// CPU support first. Keep this file on raw pointers and intrinsics so no
// AVX2-encoded copies of shared inline templates leak into other objects.

#include <immintrin.h>

#include <cmath>

#include "qdgate/kernels.hpp"

namespace qdgate::kernels {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline const double *raw(std::span<const cplx> a) {
    return reinterpret_cast<const double *>(a.data());
}

inline double *raw(std::span<cplx> a) {
    return reinterpret_cast<double *>(a.data());
}

double norm_sq(std::span<const cplx> a) {
    const double *p = raw(a);
    std::size_t len = 2 * a.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        __m256d v0 = _mm256_loadu_pd(p + i);
        __m256d v1 = _mm256_loadu_pd(p + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; i + 4 <= len; i += 4) {
        __m256d v = _mm256_loadu_pd(p + i);
        acc0 = _mm256_fmadd_pd(v, v, acc0);
    }
    double total = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < len; i++) {
        total += p[i] * p[i];
    }
    return total;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    const double *pa = raw(a);
    const double *pb = raw(b);
    std::size_t len = 2 * a.size();
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        __m256d va = _mm256_loadu_pd(pa + i);
        __m256d vb = _mm256_loadu_pd(pb + i);
        re = _mm256_fmadd_pd(va, vb, re);
        im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), im);
    }
    alignas(32) double im_lanes[4];
    _mm256_store_pd(im_lanes, im);
    double total_re = hsum(re);
    double total_im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
    for (; i < len; i += 2) {
        total_re += pa[i] * pb[i] + pa[i + 1] * pb[i + 1];
        total_im += pa[i] * pb[i + 1] - pa[i + 1] * pb[i];
    }
    return {total_re, total_im};
}

void scale(std::span<cplx> a, double factor) {
    double *p = raw(a);
    std::size_t len = 2 * a.size();
    __m256d f = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), f));
    }
    for (; i < len; i++) {
        p[i] *= factor;
    }
}

// A register holds two amplitudes. With stride >= 2 the partner amplitudes of
// a block sit in separate registers; with stride == 1 they share a register
// (low lane = bit clear, high lane = bit set). Register vectors always hold
// 2^n >= 2 amplitudes, so strides never split a register.

void hadamard(std::span<cplx> a, std::size_t stride) {
    double *p = raw(a);
    std::size_t n = a.size();
    __m256d h = _mm256_set1_pd(kInvSqrt2);
    if (stride >= 2) {
        for (std::size_t block = 0; block < n; block += 2 * stride) {
            for (std::size_t i = block; i < block + stride; i += 2) {
                __m256d x = _mm256_loadu_pd(p + 2 * i);
                __m256d y = _mm256_loadu_pd(p + 2 * (i + stride));
                _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(_mm256_add_pd(x, y), h));
                _mm256_storeu_pd(p + 2 * (i + stride), _mm256_mul_pd(_mm256_sub_pd(x, y), h));
            }
        }
        return;
    }
    for (std::size_t i = 0; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        __m256d swapped = _mm256_permute2f128_pd(v, v, 0x01);
        __m256d sum = _mm256_add_pd(v, swapped);
        __m256d diff = _mm256_sub_pd(swapped, v);
        _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(_mm256_blend_pd(sum, diff, 0b1100), h));
    }
}

void bit_flip(std::span<cplx> a, std::size_t stride) {
    double *p = raw(a);
    std::size_t n = a.size();
    if (stride >= 2) {
        for (std::size_t block = 0; block < n; block += 2 * stride) {
            for (std::size_t i = block; i < block + stride; i += 2) {
                __m256d x = _mm256_loadu_pd(p + 2 * i);
                __m256d y = _mm256_loadu_pd(p + 2 * (i + stride));
                _mm256_storeu_pd(p + 2 * i, y);
                _mm256_storeu_pd(p + 2 * (i + stride), x);
            }
        }
        return;
    }
    for (std::size_t i = 0; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        _mm256_storeu_pd(p + 2 * i, _mm256_permute2f128_pd(v, v, 0x01));
    }
}

void phase_flip(std::span<cplx> a, std::size_t stride) {
    double *p = raw(a);
    std::size_t n = a.size();
    if (stride >= 2) {
        __m256d sign = _mm256_set1_pd(-0.0);
        for (std::size_t block = 0; block < n; block += 2 * stride) {
            for (std::size_t i = block + stride; i < block + 2 * stride; i += 2) {
                _mm256_storeu_pd(p + 2 * i, _mm256_xor_pd(_mm256_loadu_pd(p + 2 * i), sign));
            }
        }
        return;
    }
    __m256d sign = _mm256_set_pd(-0.0, -0.0, 0.0, 0.0);
    for (std::size_t i = 0; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(p + 2 * i, _mm256_xor_pd(_mm256_loadu_pd(p + 2 * i), sign));
    }
}

double bit_weight(std::span<const cplx> a, std::size_t stride) {
    const double *p = raw(a);
    std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    if (stride >= 2) {
        for (std::size_t block = 0; block < n; block += 2 * stride) {
            for (std::size_t i = block + stride; i < block + 2 * stride; i += 2) {
                __m256d v = _mm256_loadu_pd(p + 2 * i);
                acc = _mm256_fmadd_pd(v, v, acc);
            }
        }
        return hsum(acc);
    }
    __m256d mask = _mm256_set_pd(1.0, 1.0, 0.0, 0.0);
    for (std::size_t i = 0; i + 2 <= n; i += 2) {
        __m256d v = _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), mask);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    return hsum(acc);
}

void collapse_bit(std::span<cplx> a, std::size_t stride, bool keep_set) {
    double *p = raw(a);
    std::size_t n = a.size();
    __m256d zero = _mm256_setzero_pd();
    if (stride >= 2) {
        std::size_t offset = keep_set ? 0 : stride;
        for (std::size_t block = 0; block < n; block += 2 * stride) {
            for (std::size_t i = block + offset; i < block + offset + stride; i += 2) {
                _mm256_storeu_pd(p + 2 * i, zero);
            }
        }
        return;
    }
    __m256d ones = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    __m256d keep = keep_set ? _mm256_blend_pd(zero, ones, 0b1100) : _mm256_blend_pd(zero, ones, 0b0011);
    for (std::size_t i = 0; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(p + 2 * i, _mm256_and_pd(_mm256_loadu_pd(p + 2 * i), keep));
    }
}

inline double parity_factor(std::size_t i, std::size_t stride1, std::size_t stride2, bool even) {
    bool b1 = (i & stride1) != 0;
    bool b2 = (i & stride2) != 0;
    if ((b1 == b2) != even) {
        return 0.0;
    }
    return b1 ? -1.0 : 1.0;
}

double even_weight(std::span<const cplx> a, std::size_t stride1, std::size_t stride2) {
    const double *p = raw(a);
    std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        double f0 = ((i & stride1) != 0) == ((i & stride2) != 0) ? 1.0 : 0.0;
        double f1 = (((i + 1) & stride1) != 0) == (((i + 1) & stride2) != 0) ? 1.0 : 0.0;
        __m256d v = _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), _mm256_set_pd(f1, f1, f0, f0));
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double total = hsum(acc);
    for (; i < n; i++) {
        if (((i & stride1) != 0) == ((i & stride2) != 0)) {
            total += p[2 * i] * p[2 * i] + p[2 * i + 1] * p[2 * i + 1];
        }
    }
    return total;
}

void parity_project(std::span<cplx> a, std::size_t stride1, std::size_t stride2, bool even) {
    double *p = raw(a);
    std::size_t n = a.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        double f0 = parity_factor(i, stride1, stride2, even);
        double f1 = parity_factor(i + 1, stride1, stride2, even);
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(v, _mm256_set_pd(f1, f1, f0, f0)));
    }
    for (; i < n; i++) {
        double f = parity_factor(i, stride1, stride2, even);
        p[2 * i] *= f;
        p[2 * i + 1] *= f;
    }
}

// Four probe frequencies per iteration, split into real and imaginary lanes.
struct Reflections4 {
    __m256d r0_re, r0_im, r1_re, r1_im;
};

inline Reflections4 reflect4(const CavityConstants &c, __m256d nu) {
    const __m256d kappa = _mm256_set1_pd(c.kappa);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d a_re = _mm256_set1_pd(c.gamma / 2);
    const __m256d a_im = _mm256_sub_pd(_mm256_set1_pd(c.trion_offset), nu);
    const __m256d b_re = _mm256_set1_pd((c.kappa + c.kappa_s) / 2);
    const __m256d b_im = _mm256_sub_pd(_mm256_setzero_pd(), nu);

    const __m256d ab_re = _mm256_fmsub_pd(a_re, b_re, _mm256_mul_pd(a_im, b_im));
    const __m256d ab_im = _mm256_fmadd_pd(a_re, b_im, _mm256_mul_pd(a_im, b_re));

    // kappa * a / den = kappa * a * conj(den) / |den|^2
    auto quotient = [&](__m256d den_re, __m256d den_im, __m256d &out_re, __m256d &out_im) {
        __m256d mag = _mm256_fmadd_pd(den_re, den_re, _mm256_mul_pd(den_im, den_im));
        __m256d k = _mm256_div_pd(kappa, mag);
        out_re = _mm256_mul_pd(k, _mm256_fmadd_pd(a_re, den_re, _mm256_mul_pd(a_im, den_im)));
        out_im = _mm256_mul_pd(k, _mm256_fmsub_pd(a_im, den_re, _mm256_mul_pd(a_re, den_im)));
    };

    __m256d q0_re, q0_im, q1_re, q1_im;
    quotient(ab_re, ab_im, q0_re, q0_im);
    quotient(_mm256_add_pd(ab_re, _mm256_set1_pd(c.g_squared)), ab_im, q1_re, q1_im);

    return {
        _mm256_sub_pd(one, q0_re),
        _mm256_sub_pd(_mm256_setzero_pd(), q0_im),
        _mm256_sub_pd(one, q1_re),
        _mm256_sub_pd(_mm256_setzero_pd(), q1_im),
    };
}

inline void store_interleaved(double *dst, __m256d re, __m256d im) {
    __m256d lo = _mm256_unpacklo_pd(re, im);
    __m256d hi = _mm256_unpackhi_pd(re, im);
    _mm256_storeu_pd(dst, _mm256_permute2f128_pd(lo, hi, 0x20));
    _mm256_storeu_pd(dst + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
}

void reflection_tail(const CavityConstants &c, double nu, double *r0, double *r1) {
    alignas(32) double lanes[4] = {nu, nu, nu, nu};
    Reflections4 r = reflect4(c, _mm256_load_pd(lanes));
    r0[0] = _mm256_cvtsd_f64(r.r0_re);
    r0[1] = _mm256_cvtsd_f64(r.r0_im);
    r1[0] = _mm256_cvtsd_f64(r.r1_re);
    r1[1] = _mm256_cvtsd_f64(r.r1_im);
}

void reflection_batch(const CavityConstants &c, std::span<const double> nu, std::span<cplx> r0, std::span<cplx> r1) {
    double *p0 = raw(r0);
    double *p1 = raw(r1);
    std::size_t n = nu.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        Reflections4 r = reflect4(c, _mm256_loadu_pd(nu.data() + i));
        store_interleaved(p0 + 2 * i, r.r0_re, r.r0_im);
        store_interleaved(p1 + 2 * i, r.r1_re, r.r1_im);
    }
    for (; i < n; i++) {
        reflection_tail(c, nu[i], p0 + 2 * i, p1 + 2 * i);
    }
}

EtaSums weighted_etas(const CavityConstants &c, std::span<const double> nu, std::span<const double> w) {
    const __m256d half = _mm256_set1_pd(0.5);
    __m256d acc_h = _mm256_setzero_pd();
    __m256d acc_v = _mm256_setzero_pd();
    std::size_t n = nu.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        Reflections4 r = reflect4(c, _mm256_loadu_pd(nu.data() + i));
        __m256d weight = _mm256_loadu_pd(w.data() + i);
        __m256d d_re = _mm256_mul_pd(half, _mm256_sub_pd(r.r1_re, r.r0_re));
        __m256d d_im = _mm256_mul_pd(half, _mm256_sub_pd(r.r1_im, r.r0_im));
        __m256d s_re = _mm256_mul_pd(half, _mm256_add_pd(r.r1_re, r.r0_re));
        __m256d s_im = _mm256_mul_pd(half, _mm256_add_pd(r.r1_im, r.r0_im));
        __m256d d2 = _mm256_fmadd_pd(d_re, d_re, _mm256_mul_pd(d_im, d_im));
        __m256d s2 = _mm256_fmadd_pd(s_re, s_re, _mm256_mul_pd(s_im, s_im));
        acc_h = _mm256_fmadd_pd(weight, d2, acc_h);
        acc_v = _mm256_fmadd_pd(weight, s2, acc_v);
    }
    EtaSums sums{hsum(acc_h), hsum(acc_v)};
    for (; i < n; i++) {
        double r0[2], r1[2];
        reflection_tail(c, nu[i], r0, r1);
        double d_re = (r1[0] - r0[0]) / 2, d_im = (r1[1] - r0[1]) / 2;
        double s_re = (r1[0] + r0[0]) / 2, s_im = (r1[1] + r0[1]) / 2;
        sums.eta_h += w[i] * (d_re * d_re + d_im * d_im);
        sums.eta_v += w[i] * (s_re * s_re + s_im * s_im);
    }
    return sums;
}

}  // namespace

const KernelTable &avx2_table_unchecked() {
    static const KernelTable table{
        .name = "avx2",
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
