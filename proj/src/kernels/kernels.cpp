// SPDX-License-Identifier: Apache-2.0
#include "gfa/kernels.hpp"

#include <atomic>
#include <bit>

namespace gfa::kernels {

std::size_t extract_points_scalar(const double* xs, const double* ys,
                                  const double* zs, std::size_t n,
                                  const FrameParams& frame, const BoxParams& box,
                                  double* out_u, double* out_v, double* out_t) {
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double u, v, w;
        frame_pullback(frame, xs[i], ys[i], zs[i], u, v, w);
        if (box_contains(box, u, v, w)) {
            out_u[kept] = u;
            out_v[kept] = v;
            out_t[kept] = w;
            ++kept;
        }
    }
    return kept;
}

std::uint64_t popcount_scalar(const std::uint64_t* words, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += std::popcount(words[i]);
    return total;
}

bool equal_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

#if defined(GFA_HAVE_AVX2_TU)
namespace avx2 {
std::size_t extract_points(const double*, const double*, const double*,
                           std::size_t, const FrameParams&, const BoxParams&,
                           double*, double*, double*);
std::uint64_t popcount(const std::uint64_t*, std::size_t);
bool equal(const std::uint64_t*, const std::uint64_t*, std::size_t);
} // namespace avx2
#endif

#if defined(GFA_HAVE_NEON_TU)
namespace neon {
std::size_t extract_points(const double*, const double*, const double*,
                           std::size_t, const FrameParams&, const BoxParams&,
                           double*, double*, double*);
std::uint64_t popcount(const std::uint64_t*, std::size_t);
bool equal(const std::uint64_t*, const std::uint64_t*, std::size_t);
} // namespace neon
#endif

namespace {

struct Table {
    Backend backend;
    std::size_t (*extract)(const double*, const double*, const double*,
                           std::size_t, const FrameParams&, const BoxParams&,
                           double*, double*, double*);
    std::uint64_t (*popcount)(const std::uint64_t*, std::size_t);
    bool (*equal)(const std::uint64_t*, const std::uint64_t*, std::size_t);
};

constexpr Table kScalarTable{Backend::scalar, &extract_points_scalar,
                             &popcount_scalar, &equal_scalar};

#if defined(GFA_HAVE_AVX2_TU)
constexpr Table kAvx2Table{Backend::avx2, &avx2::extract_points,
                           &avx2::popcount, &avx2::equal};
bool avx2_supported() { return __builtin_cpu_supports("avx2") != 0; }
#endif

#if defined(GFA_HAVE_NEON_TU)
// NEON is baseline on aarch64.
constexpr Table kNeonTable{Backend::neon, &neon::extract_points,
                           &neon::popcount, &neon::equal};
#endif

const Table* pick_default() {
#if defined(GFA_HAVE_AVX2_TU)
    if (avx2_supported()) return &kAvx2Table;
#endif
#if defined(GFA_HAVE_NEON_TU)
    return &kNeonTable;
#endif
    return &kScalarTable;
}

std::atomic<const Table*> g_active{nullptr};

const Table* table() {
    const Table* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = pick_default();
        g_active.store(t, std::memory_order_release);
    }
    return t;
}

} // namespace

std::size_t extract_points(const double* xs, const double* ys, const double* zs,
                           std::size_t n, const FrameParams& frame,
                           const BoxParams& box, double* out_u, double* out_v,
                           double* out_t) {
    return table()->extract(xs, ys, zs, n, frame, box, out_u, out_v, out_t);
}

std::uint64_t popcount(const std::uint64_t* words, std::size_t n) {
    return table()->popcount(words, n);
}

bool equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    return table()->equal(a, b, n);
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out{Backend::scalar};
#if defined(GFA_HAVE_AVX2_TU)
    if (avx2_supported()) out.push_back(Backend::avx2);
#endif
#if defined(GFA_HAVE_NEON_TU)
    out.push_back(Backend::neon);
#endif
    return out;
}

Backend active_backend() { return table()->backend; }

bool set_backend(Backend b) {
    switch (b) {
        case Backend::scalar:
            g_active.store(&kScalarTable, std::memory_order_release);
            return true;
#if defined(GFA_HAVE_AVX2_TU)
        case Backend::avx2:
            if (!avx2_supported()) return false;
            g_active.store(&kAvx2Table, std::memory_order_release);
            return true;
#endif
#if defined(GFA_HAVE_NEON_TU)
        case Backend::neon:
            g_active.store(&kNeonTable, std::memory_order_release);
            return true;
#endif
        default:
            return false;
    }
}

} // namespace gfa::kernels
