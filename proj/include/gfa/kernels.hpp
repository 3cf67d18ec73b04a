// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <cmath>
#include <vector>

// Data-parallel inner loops with scalar reference implementations and
// runtime-dispatched SIMD variants (AVX2 on x86-64, NEON on aarch64).
// The variants must match the scalar path bit for bit; equivalence is
// asserted by tests/test_kernels.cpp and by whole-pipeline output checks.

namespace gfa::kernels {

// Gripper frame in world coordinates: r is the row-major rotation taking
// gripper axes to world axes, t the frame origin. Points are pulled back
// with the transpose.
struct FrameParams {
    double r[9];
    double t[3];
};

// Half-open closing box u in [-half_u, half_u), v in [-half_v, half_v),
// t in [0, depth), plus voxel-index guards (max_i* = dim - 1 as doubles).
// res is the voxel edge length.
struct BoxParams {
    double half_u = 0.0;
    double half_v = 0.0;
    double depth = 0.0;
    double res = 1.0;
    double max_iu = 0.0;
    double max_iv = 0.0;
    double max_it = 0.0;
};

// Shared pullback arithmetic. Fixed association so every caller (scalar
// kernel, SIMD kernels, single-point transforms) rounds identically.
inline void frame_pullback(const FrameParams& f, double x, double y, double z,
                           double& u, double& v, double& w) noexcept {
    const double d0 = x - f.t[0];
    const double d1 = y - f.t[1];
    const double d2 = z - f.t[2];
    u = (f.r[0] * d0 + f.r[3] * d1) + f.r[6] * d2;
    v = (f.r[1] * d0 + f.r[4] * d1) + f.r[7] * d2;
    w = (f.r[2] * d0 + f.r[5] * d1) + f.r[8] * d2;
}

// Containment predicate: inside the half-open box AND the voxel index is in
// range. The index guard closes the 1-ulp hole where (u + half_u) rounds up
// onto the box face; lower indices cannot round below zero.
inline bool box_contains(const BoxParams& b, double u, double v, double w) noexcept {
    bool in = u >= -b.half_u && u < b.half_u && v >= -b.half_v && v < b.half_v &&
              w >= 0.0 && w < b.depth;
    if (in) {
        in = std::floor((u + b.half_u) / b.res) <= b.max_iu &&
             std::floor((v + b.half_v) / b.res) <= b.max_iv &&
             std::floor(w / b.res) <= b.max_it;
    }
    return in;
}

// Pulls n world points into the gripper frame and compacts the contained
// ones into out_u/out_v/out_t (input order preserved). Returns kept count.
// Output buffers must have capacity n.
std::size_t extract_points(const double* xs, const double* ys, const double* zs,
                           std::size_t n, const FrameParams& frame,
                           const BoxParams& box, double* out_u, double* out_v,
                           double* out_t);

std::uint64_t popcount(const std::uint64_t* words, std::size_t n);
bool equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

// Scalar reference path, always available; the oracle the SIMD paths are
// tested against.
std::size_t extract_points_scalar(const double* xs, const double* ys,
                                  const double* zs, std::size_t n,
                                  const FrameParams& frame, const BoxParams& box,
                                  double* out_u, double* out_v, double* out_t);
std::uint64_t popcount_scalar(const std::uint64_t* words, std::size_t n);
bool equal_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend b);
std::vector<Backend> available_backends();
Backend active_backend();
// Returns false (and leaves the active backend unchanged) if unavailable.
bool set_backend(Backend b);

} // namespace gfa::kernels
