// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfa/assembly.hpp"
#include "gfa/manifest.hpp"
#include "test_util.hpp"

using namespace gfa;

namespace {

GripperSpec tiny_spec() {
    GripperSpec spec;
    spec.width = 0.02;
    spec.height = 0.02;
    spec.depth = 0.02;
    spec.resolution = 0.01;
    return spec;
}

FeatureRecord record_from_voxels(
    const GripperSpec& spec,
    const std::vector<std::array<std::uint32_t, 3>>& voxels) {
    FeatureRecord rec;
    rec.exemplar = test::region_from_voxels(spec, voxels);
    rec.grid = voxelize(rec.exemplar, spec);
    rec.key = canonical_key(rec.grid);
    rec.sources.push_back(SourceRef{"synthetic", rec.exemplar.pose});
    return rec;
}

} // namespace

TEST_CASE("project: single voxel marks one pixel per plane") {
    const GripperSpec spec = tiny_spec();
    const FeatureRecord rec = record_from_voxels(spec, {{1, 1, 1}});
    for (const auto plane : {GripperPlane::UV, GripperPlane::UT, GripperPlane::VT}) {
        const BinaryImage img = project(rec.grid, plane);
        CHECK(img.count_set() == 1);
        CHECK(img.at(1, 1) == 1);
    }
}

TEST_CASE("project: full grid saturates every plane") {
    const GripperSpec spec = tiny_spec();
    std::vector<std::array<std::uint32_t, 3>> voxels;
    for (std::uint32_t i = 0; i < 8; ++i) voxels.push_back({i & 1, (i >> 1) & 1, (i >> 2) & 1});
    const FeatureRecord rec = record_from_voxels(spec, voxels);
    for (const auto plane : {GripperPlane::UV, GripperPlane::UT, GripperPlane::VT}) {
        const BinaryImage img = project(rec.grid, plane);
        CHECK(img.count_set() == std::uint64_t(img.rows) * img.cols);
    }
}

TEST_CASE("project: areas match the triple-loop oracle on random grids") {
    Rng rng(41);
    const GridDims dims{8, 4, 6};
    for (int rep = 0; rep < 200; ++rep) {
        const OccupancyGrid grid = test::random_grid(rng, dims, 0.15);
        for (const auto plane :
             {GripperPlane::UV, GripperPlane::UT, GripperPlane::VT}) {
            const BinaryImage img = project(grid, plane);
            CHECK(img.count_set() == test::oracle_projection_area(grid, plane));
        }
    }
}

TEST_CASE("corner count: listed corner pattern counts once") {
    BinaryImage img;
    img.rows = 2;
    img.cols = 2;
    img.bits = {1, 1, 1, 0};
    CHECK(count_corner_features(img) == 1);
}

TEST_CASE("corner count: saturated image has no weight-3 windows") {
    BinaryImage img;
    img.rows = 3;
    img.cols = 3;
    img.bits.assign(9, 1);
    CHECK(count_corner_features(img) == 0);
}

TEST_CASE("corner count: all sixteen 2x2 windows, exhaustively") {
    for (int bits = 0; bits < 16; ++bits) {
        BinaryImage img;
        img.rows = 2;
        img.cols = 2;
        img.bits = {static_cast<std::uint8_t>(bits & 1),
                    static_cast<std::uint8_t>((bits >> 1) & 1),
                    static_cast<std::uint8_t>((bits >> 2) & 1),
                    static_cast<std::uint8_t>((bits >> 3) & 1)};
        const int weight = (bits & 1) + ((bits >> 1) & 1) + ((bits >> 2) & 1) +
                           ((bits >> 3) & 1);
        CHECK(count_corner_features(img) == (weight == 3 ? 1u : 0u));
        CHECK(count_corner_features(img) == test::oracle_corner_count(img));
    }
}

TEST_CASE("corner count: 1000 random images match the pattern-matcher oracle") {
    Rng rng(42);
    for (int rep = 0; rep < 1000; ++rep) {
        BinaryImage img;
        img.rows = 16;
        img.cols = 16;
        img.bits.resize(256);
        for (auto& b : img.bits) b = rng.uniform01() < 0.5 ? 1 : 0;
        CHECK(count_corner_features(img) == test::oracle_corner_count(img));
    }
}

TEST_CASE("corner count: degenerate image sizes") {
    BinaryImage img;
    img.rows = 1;
    img.cols = 5;
    img.bits.assign(5, 1);
    CHECK(count_corner_features(img) == 0);
}

TEST_CASE("classify_from_counts: worked example") {
    const auto cls = classify_from_counts({6, 4, 2}, {2, 1, 3});
    CHECK(cls.scores[0] == doctest::Approx(1.0));
    CHECK(cls.scores[1] == doctest::Approx(1.0 / 3.0));
    CHECK(cls.scores[2] == doctest::Approx(0.5));
    CHECK(cls.plane == GripperPlane::UV);
}

TEST_CASE("classify_plane: all-zero scores fall back to UV") {
    const GripperSpec spec = tiny_spec();
    std::vector<std::array<std::uint32_t, 3>> voxels;
    for (std::uint32_t i = 0; i < 8; ++i) voxels.push_back({i & 1, (i >> 1) & 1, (i >> 2) & 1});
    const FeatureRecord rec = record_from_voxels(spec, voxels);
    const PlaneClassification cls = classify_plane(rec.grid);
    CHECK(cls.scores == std::array<double, 3>{0.0, 0.0, 0.0});
    CHECK(cls.plane == GripperPlane::UV);
}

TEST_CASE("classify_plane: v/t-symmetric grids tie and resolve to UV") {
    GripperSpec spec;
    spec.width = 0.04;
    spec.height = 0.03;
    spec.depth = 0.03;
    spec.resolution = 0.01; // dims 4 x 3 x 3 with b == c
    Rng rng(43);
    for (int rep = 0; rep < 20; ++rep) {
        OccupancyGrid grid(GridDims::from_spec(spec));
        for (std::uint32_t iu = 0; iu < 4; ++iu)
            for (std::uint32_t iv = 0; iv < 3; ++iv)
                for (std::uint32_t it = 0; it <= iv; ++it)
                    if (rng.uniform01() < 0.4) {
                        grid.set(iu, iv, it);
                        grid.set(iu, it, iv); // mirror across v = t
                    }
        if (grid.occupied_count() == 0) grid.set(0, 1, 1);
        const PlaneClassification cls = classify_plane(grid);
        CHECK(cls.scores[0] == cls.scores[1]);
        CHECK(cls.areas[0] == cls.areas[1]);
        if (cls.scores[0] >= cls.scores[2]) CHECK(cls.plane == GripperPlane::UV);
    }
}

TEST_CASE("classification is a pure per-grid function") {
    Rng rng(44);
    const GridDims dims{8, 4, 6};
    std::vector<OccupancyGrid> grids;
    for (int i = 0; i < 30; ++i) grids.push_back(test::random_grid(rng, dims, 0.2));
    std::vector<GripperPlane> planes;
    for (const auto& g : grids) planes.push_back(classify_plane(g).plane);
    // permute and classify again: per-grid classes never change
    for (std::size_t i = grids.size(); i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(grids[i - 1], grids[j]);
        std::swap(planes[i - 1], planes[j]);
    }
    for (std::size_t i = 0; i < grids.size(); ++i)
        CHECK(classify_plane(grids[i]).plane == planes[i]);
}

TEST_CASE("layout: empty input") {
    const GripperSpec spec = tiny_spec();
    const AssembledObject empty = layout({}, {}, spec, 0.1);
    CHECK(empty.placements.empty());
    CHECK(compose_cloud(empty, {}).points.empty());
}

TEST_CASE("layout: single UV feature sits at the panel origin") {
    const GripperSpec spec = tiny_spec();
    std::vector<FeatureRecord> records;
    records.push_back(record_from_voxels(spec, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
    std::vector<PlaneClassification> classes{classify_plane(records[0].grid)};
    classes[0].plane = GripperPlane::UV;

    const AssembledObject assembled = layout(records, classes, spec, 0.1);
    REQUIRE(assembled.placements.size() == 1);
    CHECK(assembled.placements[0].translation == Vec3(0, 0, 0));
    const PointCloud composite = compose_cloud(assembled, records);
    CHECK(composite.points.size() == records[0].exemplar.points.size());
}

TEST_CASE("layout: nine UV features tile a 3x3 panel, boxes disjoint") {
    const GripperSpec spec = tiny_spec();
    Rng rng(45);
    std::vector<FeatureRecord> records;
    std::vector<PlaneClassification> classes;
    for (int i = 0; i < 9; ++i) {
        records.push_back(record_from_voxels(
            spec, {{static_cast<std::uint32_t>(rng.below(2)),
                    static_cast<std::uint32_t>(rng.below(2)),
                    static_cast<std::uint32_t>(rng.below(2))}}));
        PlaneClassification cls = classify_plane(records.back().grid);
        cls.plane = GripperPlane::UV;
        classes.push_back(cls);
    }
    const double spacing = 0.1;
    const AssembledObject assembled = layout(records, classes, spec, spacing);
    REQUIRE(assembled.placements.size() == 9);

    std::array<bool, 9> cell_used{};
    for (const auto& pl : assembled.placements) {
        const int col = static_cast<int>(std::round(pl.translation.x() / spacing));
        const int row = static_cast<int>(std::round(pl.translation.y() / spacing));
        REQUIRE(col >= 0);
        REQUIRE(col < 3);
        REQUIRE(row >= 0);
        REQUIRE(row < 3);
        cell_used[static_cast<std::size_t>(3 * row + col)] = true;
        CHECK(pl.translation.z() == 0.0);
    }
    for (const bool used : cell_used) CHECK(used);

    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = i + 1; j < 9; ++j) {
            const double d =
                (assembled.placements[i].translation - assembled.placements[j].translation)
                    .norm();
            CHECK(d >= spacing - 1e-12);
        }

    // padded AABBs disjoint
    const double pad = spec.resolution / 2.0;
    std::vector<std::pair<Vec3, Vec3>> boxes;
    for (const auto& pl : assembled.placements) {
        Vec3 lo = Vec3::Constant(1e30), hi = Vec3::Constant(-1e30);
        for (const auto& p : records[pl.record_id].exemplar.points) {
            const Vec3 q = p + pl.translation;
            lo = lo.cwiseMin(q);
            hi = hi.cwiseMax(q);
        }
        boxes.emplace_back(lo - Vec3::Constant(pad), hi + Vec3::Constant(pad));
    }
    for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            const bool disjoint = (boxes[i].second.array() < boxes[j].first.array()).any() ||
                                  (boxes[j].second.array() < boxes[i].first.array()).any();
            CHECK(disjoint);
        }
}

TEST_CASE("layout: spacing below the minimum is rejected") {
    const GripperSpec spec = tiny_spec(); // min spacing 0.02 + 2*0.01 = 0.04
    std::vector<FeatureRecord> records{record_from_voxels(spec, {{0, 0, 0}})};
    std::vector<PlaneClassification> classes{classify_plane(records[0].grid)};
    CHECK_THROWS_AS(layout(records, classes, spec, 0.039), config_error);
    CHECK_NOTHROW(layout(records, classes, spec, 0.041));
}

TEST_CASE("compose_cloud conserves points and feature grids round-trip") {
    const GripperSpec spec = tiny_spec();
    Rng rng(46);
    std::vector<FeatureRecord> records;
    std::vector<PlaneClassification> classes;
    std::size_t total_points = 0;
    for (int i = 0; i < 12; ++i) {
        std::vector<std::array<std::uint32_t, 3>> voxels;
        const std::size_t count = 1 + rng.below(5);
        for (std::size_t v = 0; v < count; ++v)
            voxels.push_back({static_cast<std::uint32_t>(rng.below(2)),
                              static_cast<std::uint32_t>(rng.below(2)),
                              static_cast<std::uint32_t>(rng.below(2))});
        records.push_back(record_from_voxels(spec, voxels));
        classes.push_back(classify_plane(records.back().grid));
        total_points += records.back().exemplar.points.size();
    }
    const AssembledObject assembled = layout(records, classes, spec, 0.05);
    const PointCloud composite = compose_cloud(assembled, records);
    CHECK(composite.points.size() == total_points);

    // re-extract each placed feature from the composite at its placement pose
    for (const auto& pl : assembled.placements) {
        GraspPose pose;
        pose.frame.translation = pl.translation;
        const auto region = extract_region(composite, pose, spec);
        REQUIRE(region.has_value());
        CHECK(grids_identical(voxelize(*region, spec),
                              records[pl.record_id].grid));
    }
}
