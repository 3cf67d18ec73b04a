// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "gfa/dedup.hpp"
#include "test_util.hpp"

using namespace gfa;

namespace {

GripperSpec tiny_spec() {
    GripperSpec spec;
    spec.width = 0.02;
    spec.height = 0.02;
    spec.depth = 0.02;
    spec.resolution = 0.01; // 2 x 2 x 2 voxels
    return spec;
}

} // namespace

TEST_CASE("voxelize: floor formulas put (0,0,depth/2) at voxel (1,1,1)") {
    const GripperSpec spec = tiny_spec();
    GripperFrameCloud region;
    region.points.emplace_back(0.0, 0.0, spec.depth / 2.0);
    const OccupancyGrid grid = voxelize(region, spec);
    CHECK(grid.occupied_count() == 1);
    CHECK(grid.test(1, 1, 1));
}

TEST_CASE("voxelize: occupancy is idempotent per voxel") {
    const GripperSpec spec = tiny_spec();
    GripperFrameCloud region;
    region.points.emplace_back(0.002, 0.002, 0.012);
    region.points.emplace_back(0.004, 0.004, 0.014); // same voxel (1,1,1)
    CHECK(voxelize(region, spec).occupied_count() == 1);
}

TEST_CASE("voxelize: points at every voxel center fill the grid") {
    const GripperSpec spec = tiny_spec();
    GripperFrameCloud region;
    for (std::uint32_t it = 0; it < 2; ++it)
        for (std::uint32_t iv = 0; iv < 2; ++iv)
            for (std::uint32_t iu = 0; iu < 2; ++iu)
                region.points.push_back(test::voxel_center(spec, iu, iv, it));
    const OccupancyGrid grid = voxelize(region, spec);
    CHECK(grid.occupied_count() == 8);
}

TEST_CASE("voxelize: out-of-volume point aborts with internal_error") {
    const GripperSpec spec = tiny_spec();
    GripperFrameCloud region;
    region.points.emplace_back(0.5, 0.0, 0.01); // violates the region invariant
    CHECK_THROWS_AS(voxelize(region, spec), internal_error);
    GripperFrameCloud empty;
    CHECK_THROWS_AS(voxelize(empty, spec), internal_error);
}

TEST_CASE("grids_identical: reflexive, bit-sensitive, dims-checked") {
    Rng rng(31);
    const GridDims dims{5, 4, 3};
    const OccupancyGrid a = test::random_grid(rng, dims, 0.4);
    CHECK(grids_identical(a, a));

    OccupancyGrid b = a;
    // flip one bit by rebuilding from packed bytes
    auto bytes = a.packed();
    bytes[3] ^= 0x10;
    b = OccupancyGrid::from_packed(dims, bytes);
    CHECK_FALSE(grids_identical(a, b));

    const OccupancyGrid other(GridDims{5, 4, 2});
    CHECK_THROWS_AS(grids_identical(a, other), data_error);
}

TEST_CASE("grids_identical agrees with the sum(|a-b|) oracle") {
    Rng rng(32);
    const GridDims dims{6, 5, 4};
    for (int rep = 0; rep < 1000; ++rep) {
        const OccupancyGrid a = test::random_grid(rng, dims, 0.3);
        OccupancyGrid b;
        if (rep % 2 == 0) {
            b = a;
        } else {
            b = test::random_grid(rng, dims, 0.3);
        }
        const bool same = grids_identical(a, b);
        CHECK(same == (test::oracle_sum_abs_diff(a, b) == 0));

        if (same) {
            // complement-power form with 0^0 := 1 evaluates to
            // total - #(both zero) on identical grids
            std::uint64_t power_sum = 0, both_zero = 0;
            test::oracle_complement_power(a, b, power_sum, both_zero);
            CHECK(power_sum == dims.total() - both_zero);
        }
    }
}

TEST_CASE("canonical_key: stable and copy-consistent") {
    Rng rng(33);
    const GridDims dims{4, 3, 2};
    const OccupancyGrid a = test::random_grid(rng, dims, 0.5);
    const OccupancyGrid copy = a;
    CHECK(canonical_key(a) == canonical_key(copy));

    // frozen value: no per-run or per-process randomization
    OccupancyGrid fixed(GridDims{2, 2, 2});
    fixed.set(0, 0, 0);
    fixed.set(1, 1, 1);
    CHECK(canonical_key(fixed) == 0x4f2162f5b2fd1994ULL);
}

TEST_CASE("dedup: K distinct grids duplicated M times") {
    const GripperSpec spec = tiny_spec();
    const std::size_t K = 6, M = 5;
    std::vector<GripperFrameCloud> regions;
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t k = 0; k < K; ++k) {
            // distinct singleton voxel patterns, plus one two-voxel pattern
            std::vector<std::array<std::uint32_t, 3>> voxels = {
                {static_cast<std::uint32_t>(k & 1),
                 static_cast<std::uint32_t>((k >> 1) & 1),
                 static_cast<std::uint32_t>((k >> 2) & 1)}};
            GripperFrameCloud region = test::region_from_voxels(spec, voxels);
            region.source_object = "obj" + std::to_string(m);
            regions.push_back(std::move(region));
        }
    }
    const auto records = dedup(std::move(regions), spec);
    REQUIRE(records.size() == K);
    std::size_t total_sources = 0;
    for (const auto& rec : records) {
        CHECK(rec.sources.size() == M);
        total_sources += rec.sources.size();
        // exemplar voxelization equals the grid exactly
        CHECK(grids_identical(voxelize(rec.exemplar, spec), rec.grid));
    }
    CHECK(total_sources == K * M);
}

TEST_CASE("dedup: empty stream and idempotence") {
    const GripperSpec spec = tiny_spec();
    CHECK(dedup({}, spec).empty());

    Rng rng(34);
    std::vector<GripperFrameCloud> regions;
    for (int i = 0; i < 40; ++i) {
        std::vector<std::array<std::uint32_t, 3>> voxels;
        const std::size_t count = 1 + rng.below(4);
        for (std::size_t v = 0; v < count; ++v)
            voxels.push_back({static_cast<std::uint32_t>(rng.below(2)),
                              static_cast<std::uint32_t>(rng.below(2)),
                              static_cast<std::uint32_t>(rng.below(2))});
        regions.push_back(test::region_from_voxels(spec, voxels));
    }
    const auto first = dedup(std::move(regions), spec);

    std::vector<GripperFrameCloud> exemplars;
    for (const auto& rec : first) exemplars.push_back(rec.exemplar);
    const auto second = dedup(std::move(exemplars), spec);
    REQUIRE(second.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(grids_identical(first[i].grid, second[i].grid));
        CHECK(second[i].sources.size() == 1);
    }
}

TEST_CASE("dedup: mixed dims in the stream is an error") {
    Deduper dd(GridDims{2, 2, 2});
    dd.insert(OccupancyGrid(GridDims{2, 2, 2}), SourceRef{});
    CHECK_THROWS_AS(dd.insert(OccupancyGrid(GridDims{2, 2, 1}), SourceRef{}),
                    data_error);
}

TEST_CASE("dedup matches O(n^2) brute force, including forced collisions") {
    Rng rng(35);
    const GridDims dims{4, 3, 2};
    SUBCASE("canonical key") {}
    bool forced = false;
    SUBCASE("all keys collide") { forced = true; }

    for (int trial = 0; trial < 20; ++trial) {
        // draw from a small pool so duplicates are guaranteed
        std::vector<OccupancyGrid> pool;
        for (int i = 0; i < 12; ++i) pool.push_back(test::random_grid(rng, dims, 0.35));
        std::vector<OccupancyGrid> grids;
        const std::size_t n = 40 + rng.below(160);
        for (std::size_t i = 0; i < n; ++i)
            grids.push_back(pool[rng.below(pool.size())]);

        Deduper dd(dims, forced ? Deduper::KeyFn([](const OccupancyGrid&) {
            return std::uint64_t{42};
        })
                                : Deduper::KeyFn{});
        for (const auto& g : grids) dd.insert(g, SourceRef{});
        const auto records = dd.finalize();

        const auto unique_idx = test::oracle_unique_indices(grids);
        REQUIRE(records.size() == unique_idx.size());

        std::vector<OccupancyGrid> got, want;
        for (const auto& rec : records) got.push_back(rec.grid);
        for (const std::size_t i : unique_idx) want.push_back(grids[i]);
        CHECK(test::grids_equal_as_sets(got, want));

        // conservation: source lists cover every input
        std::size_t total = 0;
        for (const auto& rec : records) total += rec.sources.size();
        CHECK(total == grids.size());
    }
}

TEST_CASE("dedup: input permutation changes exemplars at most") {
    Rng rng(36);
    const GripperSpec spec = tiny_spec();
    std::vector<GripperFrameCloud> regions;
    for (int i = 0; i < 60; ++i) {
        std::vector<std::array<std::uint32_t, 3>> voxels = {
            {static_cast<std::uint32_t>(rng.below(2)),
             static_cast<std::uint32_t>(rng.below(2)),
             static_cast<std::uint32_t>(rng.below(2))},
            {static_cast<std::uint32_t>(rng.below(2)),
             static_cast<std::uint32_t>(rng.below(2)),
             static_cast<std::uint32_t>(rng.below(2))}};
        regions.push_back(test::region_from_voxels(spec, voxels));
    }
    std::vector<GripperFrameCloud> shuffled = regions;
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.below(i)]);

    const auto a = dedup(std::move(regions), spec);
    const auto b = dedup(std::move(shuffled), spec);
    REQUIRE(a.size() == b.size());
    std::vector<OccupancyGrid> ga, gb;
    std::vector<std::size_t> counts_a, counts_b;
    for (const auto& rec : a) {
        ga.push_back(rec.grid);
        counts_a.push_back(rec.sources.size());
    }
    for (const auto& rec : b) {
        gb.push_back(rec.grid);
        counts_b.push_back(rec.sources.size());
    }
    CHECK(test::grids_equal_as_sets(ga, gb));
    std::sort(counts_a.begin(), counts_a.end());
    std::sort(counts_b.begin(), counts_b.end());
    CHECK(counts_a == counts_b);
}
