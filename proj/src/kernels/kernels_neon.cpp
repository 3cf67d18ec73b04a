// SPDX-License-Identifier: Apache-2.0
//
// NEON kernel variants (aarch64, where NEON is baseline). Plain mul/add/div
// with vrndmq (round toward -inf) keeps rounding identical to the scalar
// reference; no fused multiply-add.

#include "gfa/kernels.hpp"

#include <arm_neon.h>

namespace gfa::kernels::neon {

std::size_t extract_points(const double* xs, const double* ys, const double* zs,
                           std::size_t n, const FrameParams& frame,
                           const BoxParams& box, double* out_u, double* out_v,
                           double* out_t) {
    const float64x2_t t0 = vdupq_n_f64(frame.t[0]);
    const float64x2_t t1 = vdupq_n_f64(frame.t[1]);
    const float64x2_t t2 = vdupq_n_f64(frame.t[2]);
    const float64x2_t r0 = vdupq_n_f64(frame.r[0]);
    const float64x2_t r1 = vdupq_n_f64(frame.r[1]);
    const float64x2_t r2 = vdupq_n_f64(frame.r[2]);
    const float64x2_t r3 = vdupq_n_f64(frame.r[3]);
    const float64x2_t r4 = vdupq_n_f64(frame.r[4]);
    const float64x2_t r5 = vdupq_n_f64(frame.r[5]);
    const float64x2_t r6 = vdupq_n_f64(frame.r[6]);
    const float64x2_t r7 = vdupq_n_f64(frame.r[7]);
    const float64x2_t r8 = vdupq_n_f64(frame.r[8]);
    const float64x2_t hu = vdupq_n_f64(box.half_u);
    const float64x2_t hv = vdupq_n_f64(box.half_v);
    const float64x2_t neg_hu = vdupq_n_f64(-box.half_u);
    const float64x2_t neg_hv = vdupq_n_f64(-box.half_v);
    const float64x2_t zero = vdupq_n_f64(0.0);
    const float64x2_t depth = vdupq_n_f64(box.depth);
    const float64x2_t res = vdupq_n_f64(box.res);
    const float64x2_t miu = vdupq_n_f64(box.max_iu);
    const float64x2_t miv = vdupq_n_f64(box.max_iv);
    const float64x2_t mit = vdupq_n_f64(box.max_it);

    std::size_t kept = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d0 = vsubq_f64(vld1q_f64(xs + i), t0);
        const float64x2_t d1 = vsubq_f64(vld1q_f64(ys + i), t1);
        const float64x2_t d2 = vsubq_f64(vld1q_f64(zs + i), t2);
        const float64x2_t u = vaddq_f64(
            vaddq_f64(vmulq_f64(r0, d0), vmulq_f64(r3, d1)), vmulq_f64(r6, d2));
        const float64x2_t v = vaddq_f64(
            vaddq_f64(vmulq_f64(r1, d0), vmulq_f64(r4, d1)), vmulq_f64(r7, d2));
        const float64x2_t w = vaddq_f64(
            vaddq_f64(vmulq_f64(r2, d0), vmulq_f64(r5, d1)), vmulq_f64(r8, d2));

        uint64x2_t m = vandq_u64(vcgeq_f64(u, neg_hu), vcltq_f64(u, hu));
        m = vandq_u64(m, vcgeq_f64(v, neg_hv));
        m = vandq_u64(m, vcltq_f64(v, hv));
        m = vandq_u64(m, vcgeq_f64(w, zero));
        m = vandq_u64(m, vcltq_f64(w, depth));

        const float64x2_t fu = vrndmq_f64(vdivq_f64(vaddq_f64(u, hu), res));
        const float64x2_t fv = vrndmq_f64(vdivq_f64(vaddq_f64(v, hv), res));
        const float64x2_t ft = vrndmq_f64(vdivq_f64(w, res));
        m = vandq_u64(m, vcleq_f64(fu, miu));
        m = vandq_u64(m, vcleq_f64(fv, miv));
        m = vandq_u64(m, vcleq_f64(ft, mit));

        double bu[2] = {vgetq_lane_f64(u, 0), vgetq_lane_f64(u, 1)};
        double bv[2] = {vgetq_lane_f64(v, 0), vgetq_lane_f64(v, 1)};
        double bw[2] = {vgetq_lane_f64(w, 0), vgetq_lane_f64(w, 1)};
        std::uint64_t lanes[2] = {vgetq_lane_u64(m, 0), vgetq_lane_u64(m, 1)};
        for (int lane = 0; lane < 2; ++lane) {
            if (lanes[lane]) {
                out_u[kept] = bu[lane];
                out_v[kept] = bv[lane];
                out_t[kept] = bw[lane];
                ++kept;
            }
        }
    }
    kept += extract_points_scalar(xs + i, ys + i, zs + i, n - i, frame, box,
                                  out_u + kept, out_v + kept, out_t + kept);
    return kept;
}

std::uint64_t popcount(const std::uint64_t* words, std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint8x16_t v =
            vreinterpretq_u8_u64(vld1q_u64(words + i));
        total += vaddlvq_u8(vcntq_u8(v));
    }
    for (; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(words[i]));
    return total;
}

bool equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint64x2_t eq = vceqq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        if (vgetq_lane_u64(eq, 0) != ~0ULL || vgetq_lane_u64(eq, 1) != ~0ULL)
            return false;
    }
    for (; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

} // namespace gfa::kernels::neon
