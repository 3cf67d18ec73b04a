// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "gfa/kernels.hpp"
#include "test_util.hpp"

using namespace gfa;
namespace k = gfa::kernels;

namespace {

struct ExtractCase {
    std::vector<double> xs, ys, zs;
    k::FrameParams frame;
    k::BoxParams box;
};

ExtractCase random_case(Rng& rng, std::size_t n) {
    ExtractCase c;
    const RigidTransform t = test::random_rigid(rng, 0.05);
    c.frame = t.frame_params();
    GripperSpec spec;
    c.box = spec.box_params();
    c.xs.reserve(n);
    c.ys.reserve(n);
    c.zs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // cluster near the frame so a healthy fraction lands inside the box
        c.xs.push_back(t.translation.x() + rng.uniform(-0.1, 0.1));
        c.ys.push_back(t.translation.y() + rng.uniform(-0.1, 0.1));
        c.zs.push_back(t.translation.z() + rng.uniform(-0.1, 0.1));
    }
    return c;
}

void check_extract_matches_scalar(const ExtractCase& c) {
    const std::size_t n = c.xs.size();
    std::vector<double> su(n), sv(n), st(n), du(n), dv(n), dt(n);
    const std::size_t ks = k::extract_points_scalar(
        c.xs.data(), c.ys.data(), c.zs.data(), n, c.frame, c.box, su.data(),
        sv.data(), st.data());
    const std::size_t kd =
        k::extract_points(c.xs.data(), c.ys.data(), c.zs.data(), n, c.frame,
                          c.box, du.data(), dv.data(), dt.data());
    REQUIRE(ks == kd);
    CHECK(std::memcmp(su.data(), du.data(), ks * sizeof(double)) == 0);
    CHECK(std::memcmp(sv.data(), dv.data(), ks * sizeof(double)) == 0);
    CHECK(std::memcmp(st.data(), dt.data(), ks * sizeof(double)) == 0);
}

} // namespace

TEST_CASE("scalar backend is always available") {
    const auto backends = k::available_backends();
    REQUIRE(!backends.empty());
    CHECK(backends.front() == k::Backend::scalar);
    MESSAGE(std::string("active backend: ") +
            k::backend_name(k::active_backend()));
}

TEST_CASE("extract_points variants match the scalar reference bit for bit") {
    Rng rng(101);
    for (const auto backend : k::available_backends()) {
        REQUIRE(k::set_backend(backend));
        for (int rep = 0; rep < 30; ++rep) {
            // odd sizes exercise the SIMD tail path
            check_extract_matches_scalar(random_case(rng, 1 + rng.below(257)));
        }
        check_extract_matches_scalar(random_case(rng, 0));
    }
    k::set_backend(k::available_backends().back());
}

TEST_CASE("extract_points half-open bounds are exact on every backend") {
    GripperSpec spec;
    const k::BoxParams box = spec.box_params();
    k::FrameParams frame{};
    frame.r[0] = frame.r[4] = frame.r[8] = 1.0; // identity, so u == x exactly
    const double hu = spec.width / 2.0;
    const double hv = spec.height / 2.0;

    // lower bounds closed, upper bounds open, t lower bound at zero
    const std::vector<double> xs = {-hu, hu, 0.0, 0.0, 0.0, 0.0, 0.0};
    const std::vector<double> ys = {0.0, 0.0, -hv, hv, 0.0, 0.0, 0.0};
    const std::vector<double> zs = {0.01, 0.01, 0.01, 0.01, 0.0, spec.depth, 0.01};
    const std::vector<bool> expect_kept = {true, false, true,  false,
                                           true, false, true};

    for (const auto backend : k::available_backends()) {
        REQUIRE(k::set_backend(backend));
        std::vector<double> u(xs.size()), v(xs.size()), t(xs.size());
        const std::size_t kept = k::extract_points(
            xs.data(), ys.data(), zs.data(), xs.size(), frame, box, u.data(),
            v.data(), t.data());
        std::size_t expected = 0;
        for (const bool b : expect_kept) expected += b;
        CHECK(kept == expected);
    }
    k::set_backend(k::available_backends().back());
}

TEST_CASE("popcount variants agree with the scalar reference") {
    Rng rng(202);
    for (const auto backend : k::available_backends()) {
        REQUIRE(k::set_backend(backend));
        for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3},
                              std::size_t{4}, std::size_t{5}, std::size_t{67}}) {
            std::vector<std::uint64_t> words(n);
            for (auto& w : words) w = rng.next_u64();
            CHECK(k::popcount(words.data(), n) ==
                  k::popcount_scalar(words.data(), n));
        }
        std::vector<std::uint64_t> ones(16, ~0ULL);
        CHECK(k::popcount(ones.data(), ones.size()) == 16 * 64);
    }
    k::set_backend(k::available_backends().back());
}

TEST_CASE("equal variants agree with the scalar reference") {
    Rng rng(303);
    for (const auto backend : k::available_backends()) {
        REQUIRE(k::set_backend(backend));
        for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{4},
                              std::size_t{9}, std::size_t{64}}) {
            std::vector<std::uint64_t> a(n);
            for (auto& w : a) w = rng.next_u64();
            std::vector<std::uint64_t> b = a;
            CHECK(k::equal(a.data(), b.data(), n));
            if (n > 0) {
                const std::size_t word = rng.below(n);
                b[word] ^= 1ULL << rng.below(64);
                CHECK_FALSE(k::equal(a.data(), b.data(), n));
                CHECK(k::equal(a.data(), b.data(), n) ==
                      k::equal_scalar(a.data(), b.data(), n));
            }
        }
    }
    k::set_backend(k::available_backends().back());
}

TEST_CASE("set_backend rejects unavailable backends") {
    const auto backends = k::available_backends();
    for (const auto b : {k::Backend::avx2, k::Backend::neon}) {
        const bool available =
            std::find(backends.begin(), backends.end(), b) != backends.end();
        const auto before = k::active_backend();
        CHECK(k::set_backend(b) == available);
        if (!available) CHECK(k::active_backend() == before);
    }
    k::set_backend(backends.back());
}
