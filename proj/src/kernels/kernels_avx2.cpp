// SPDX-License-Identifier: Apache-2.0
//
// AVX2 kernel variants. This TU is compiled with -mavx2 -mpopcnt and its
// functions are only reached through the dispatch table after a cpuid check.
// All float ops are plain mul/add/div/floor (no FMA) so lanes round exactly
// like the scalar reference.

#include "gfa/kernels.hpp"

#include <immintrin.h>

namespace gfa::kernels::avx2 {

std::size_t extract_points(const double* xs, const double* ys, const double* zs,
                           std::size_t n, const FrameParams& frame,
                           const BoxParams& box, double* out_u, double* out_v,
                           double* out_t) {
    const __m256d t0 = _mm256_set1_pd(frame.t[0]);
    const __m256d t1 = _mm256_set1_pd(frame.t[1]);
    const __m256d t2 = _mm256_set1_pd(frame.t[2]);
    const __m256d r0 = _mm256_set1_pd(frame.r[0]);
    const __m256d r1 = _mm256_set1_pd(frame.r[1]);
    const __m256d r2 = _mm256_set1_pd(frame.r[2]);
    const __m256d r3 = _mm256_set1_pd(frame.r[3]);
    const __m256d r4 = _mm256_set1_pd(frame.r[4]);
    const __m256d r5 = _mm256_set1_pd(frame.r[5]);
    const __m256d r6 = _mm256_set1_pd(frame.r[6]);
    const __m256d r7 = _mm256_set1_pd(frame.r[7]);
    const __m256d r8 = _mm256_set1_pd(frame.r[8]);
    const __m256d hu = _mm256_set1_pd(box.half_u);
    const __m256d hv = _mm256_set1_pd(box.half_v);
    const __m256d neg_hu = _mm256_set1_pd(-box.half_u);
    const __m256d neg_hv = _mm256_set1_pd(-box.half_v);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d depth = _mm256_set1_pd(box.depth);
    const __m256d res = _mm256_set1_pd(box.res);
    const __m256d miu = _mm256_set1_pd(box.max_iu);
    const __m256d miv = _mm256_set1_pd(box.max_iv);
    const __m256d mit = _mm256_set1_pd(box.max_it);

    std::size_t kept = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(xs + i), t0);
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(ys + i), t1);
        const __m256d d2 = _mm256_sub_pd(_mm256_loadu_pd(zs + i), t2);
        // Same association as frame_pullback: (r*d0 + r*d1) + r*d2.
        const __m256d u = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(r0, d0), _mm256_mul_pd(r3, d1)),
            _mm256_mul_pd(r6, d2));
        const __m256d v = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(r1, d0), _mm256_mul_pd(r4, d1)),
            _mm256_mul_pd(r7, d2));
        const __m256d w = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(r2, d0), _mm256_mul_pd(r5, d1)),
            _mm256_mul_pd(r8, d2));

        __m256d m = _mm256_and_pd(_mm256_cmp_pd(u, neg_hu, _CMP_GE_OQ),
                                  _mm256_cmp_pd(u, hu, _CMP_LT_OQ));
        m = _mm256_and_pd(m, _mm256_cmp_pd(v, neg_hv, _CMP_GE_OQ));
        m = _mm256_and_pd(m, _mm256_cmp_pd(v, hv, _CMP_LT_OQ));
        m = _mm256_and_pd(m, _mm256_cmp_pd(w, zero, _CMP_GE_OQ));
        m = _mm256_and_pd(m, _mm256_cmp_pd(w, depth, _CMP_LT_OQ));

        const __m256d fu =
            _mm256_floor_pd(_mm256_div_pd(_mm256_add_pd(u, hu), res));
        const __m256d fv =
            _mm256_floor_pd(_mm256_div_pd(_mm256_add_pd(v, hv), res));
        const __m256d ft = _mm256_floor_pd(_mm256_div_pd(w, res));
        m = _mm256_and_pd(m, _mm256_cmp_pd(fu, miu, _CMP_LE_OQ));
        m = _mm256_and_pd(m, _mm256_cmp_pd(fv, miv, _CMP_LE_OQ));
        m = _mm256_and_pd(m, _mm256_cmp_pd(ft, mit, _CMP_LE_OQ));

        const int mask = _mm256_movemask_pd(m);
        if (mask) {
            alignas(32) double bu[4], bv[4], bw[4];
            _mm256_store_pd(bu, u);
            _mm256_store_pd(bv, v);
            _mm256_store_pd(bw, w);
            for (int lane = 0; lane < 4; ++lane) {
                if (mask & (1 << lane)) {
                    out_u[kept] = bu[lane];
                    out_v[kept] = bv[lane];
                    out_t[kept] = bw[lane];
                    ++kept;
                }
            }
        }
    }
    kept += extract_points_scalar(xs + i, ys + i, zs + i, n - i, frame, box,
                                  out_u + kept, out_v + kept, out_t + kept);
    return kept;
}

namespace {

// Mula nibble-LUT popcount for one 256-bit lane.
inline __m256i popcnt_bytes(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2,
                                         3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2,
                                         2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low);
    return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                           _mm256_shuffle_epi8(lut, hi));
}

} // namespace

std::uint64_t popcount(const std::uint64_t* words, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
        acc = _mm256_add_epi64(
            acc, _mm256_sad_epu8(popcnt_bytes(v), _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(words[i]));
    return total;
}

bool equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i va =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i eq = _mm256_cmpeq_epi64(va, vb);
        if (_mm256_movemask_epi8(eq) != -1) return false;
    }
    for (; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

} // namespace gfa::kernels::avx2
