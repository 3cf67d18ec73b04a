// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfa/obj_io.hpp"
#include "gfa/sampling.hpp"
#include "test_util.hpp"

using namespace gfa;

namespace {

Mesh unit_right_triangle() {
    Mesh m;
    m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
    m.triangles = {{0, 1, 2}};
    return m;
}

Mesh cube_mesh(double half) {
    Mesh m;
    for (int i = 0; i < 8; ++i)
        m.vertices.emplace_back((i & 1) ? half : -half, (i & 2) ? half : -half,
                                (i & 4) ? half : -half);
    m.triangles = {{0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6},
                   {0, 1, 5}, {0, 5, 4}, {2, 6, 7}, {2, 7, 3},
                   {0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5}};
    return m;
}

} // namespace

TEST_CASE("gripper spec validation") {
    GripperSpec ok; // defaults: 0.08 x 0.04 x 0.06 at 0.01
    ok.validate();
    CHECK(ok.voxels_u() == 8);
    CHECK(ok.voxels_v() == 4);
    CHECK(ok.voxels_t() == 6);

    GripperSpec ragged = ok;
    ragged.width = 0.085;
    CHECK_THROWS_AS(ragged.validate(), config_error);

    GripperSpec negative = ok;
    negative.depth = -0.01;
    CHECK_THROWS_AS(negative.validate(), config_error);
}

TEST_CASE("surface sampling: single point stays in the triangle") {
    const PointCloud c = sample_surface_points(unit_right_triangle(), 1, 99);
    REQUIRE(c.points.size() == 1);
    const Vec3& p = c.points[0];
    CHECK(p.z() == 0.0);
    CHECK(p.x() >= 0.0);
    CHECK(p.y() >= 0.0);
    CHECK(p.x() + p.y() <= 1.0 + 1e-12);
}

TEST_CASE("surface sampling: cube faces weighted evenly") {
    const double half = 0.05;
    const PointCloud c = sample_surface_points(cube_mesh(half), 60000, 7);
    std::array<std::size_t, 6> face_counts{};
    for (const Vec3& p : c.points) {
        int face = -1;
        for (int axis = 0; axis < 3; ++axis) {
            if (std::abs(std::abs(p[axis]) - half) < 1e-12)
                face = 2 * axis + (p[axis] > 0 ? 1 : 0);
        }
        REQUIRE(face >= 0);
        ++face_counts[face];
    }
    for (const std::size_t count : face_counts) {
        CHECK(count > 10000 * 0.95);
        CHECK(count < 10000 * 1.05);
    }
}

TEST_CASE("surface sampling: deterministic and guarded") {
    const Mesh m = cube_mesh(0.05);
    const PointCloud a = sample_surface_points(m, 500, 123);
    const PointCloud b = sample_surface_points(m, 500, 123);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i)
        CHECK(a.points[i] == b.points[i]); // bit-identical

    Mesh degenerate;
    degenerate.vertices = {Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(0, 0, 0)};
    degenerate.triangles = {{0, 1, 2}};
    CHECK_THROWS_AS(sample_surface_points(degenerate, 10, 1), data_error);
    CHECK_THROWS_AS(sample_surface_points(Mesh{}, 10, 1), data_error);
}

TEST_CASE("normal estimation: plane") {
    PointCloud c;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            c.points.emplace_back(i * 0.01, j * 0.01, 0.0);
    estimate_normals(c, 8);
    c.validate(); // unit normals
    int interior_sign = 0;
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const Vec3& n = c.normals[i * 20 + j];
            CHECK(std::abs(n.z()) > 0.999);
            const bool interior = i > 2 && i < 17 && j > 2 && j < 17;
            if (interior) {
                const int sign = n.z() > 0 ? 1 : -1;
                if (interior_sign == 0) interior_sign = sign;
                CHECK(sign == interior_sign);
            }
        }
    }
}

TEST_CASE("normal estimation: sphere normals point outward") {
    PointCloud c;
    const std::size_t n = 600;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / n;
        const double r = std::sqrt(1.0 - z * z);
        const double a = golden * static_cast<double>(i);
        c.points.emplace_back(0.1 * r * std::cos(a), 0.1 * r * std::sin(a), 0.1 * z);
    }
    estimate_normals(c, 10);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 radial = c.points[i].normalized();
        CHECK(c.normals[i].dot(radial) > 0.99);
    }
}

TEST_CASE("normal estimation: worker count does not change results") {
    Rng rng(4);
    PointCloud a = test::random_cloud(rng, 300);
    PointCloud b = a;
    estimate_normals(a, 10, 1);
    estimate_normals(b, 10, 4);
    for (std::size_t i = 0; i < a.normals.size(); ++i)
        CHECK(a.normals[i] == b.normals[i]);
}

TEST_CASE("normal estimation: k bounds") {
    Rng rng(5);
    PointCloud c = test::random_cloud(rng, 8);
    CHECK_THROWS_AS(estimate_normals(c, 8), config_error);
    CHECK_THROWS_AS(estimate_normals(c, 2), config_error);
}

TEST_CASE("grasp frame construction identity") {
    GripperSpec spec;
    const Vec3 p(0, 0, 0);
    const Vec3 n(0, 0, 1);
    GraspPose pose;
    pose.frame = grasp_frame_from_normal(p, n, 0.0, spec);
    REQUIRE(pose.frame.is_valid());
    const Vec3 g = to_gripper_frame(p, pose);
    CHECK(std::abs(g.x()) < 1e-12);
    CHECK(std::abs(g.y()) < 1e-12);
    CHECK(std::abs(g.z() - spec.depth / 2.0) < 1e-12);
}

TEST_CASE("grasp candidates: frames valid, deterministic, skips counted") {
    GripperSpec spec;
    Rng rng(6);
    PointCloud cloud = test::random_cloud(rng, 200);
    estimate_normals(cloud, 10);

    const CandidateSet a = sample_grasp_candidates(cloud, 100, spec, 77);
    const CandidateSet b = sample_grasp_candidates(cloud, 100, spec, 77);
    REQUIRE(a.poses.size() == b.poses.size());
    CHECK(a.skipped == 0);
    for (std::size_t i = 0; i < a.poses.size(); ++i) {
        CHECK(a.poses[i].frame.is_valid());
        CHECK(a.poses[i].frame.rotation == b.poses[i].frame.rotation);
        CHECK(a.poses[i].frame.translation == b.poses[i].frame.translation);
        CHECK(a.poses[i].source_point_index == b.poses[i].source_point_index);
        // grasp point sits at (0, 0, depth/2) on the closing axis
        const Vec3 g = to_gripper_frame(
            cloud.points[static_cast<std::size_t>(a.poses[i].source_point_index)],
            a.poses[i]);
        CHECK(std::abs(g.x()) < 1e-12);
        CHECK(std::abs(g.y()) < 1e-12);
        CHECK(std::abs(g.z() - spec.depth / 2.0) < 1e-12);
    }

    // degenerate normals are skipped and counted
    for (auto& nv : cloud.normals) nv = Vec3::Zero();
    const CandidateSet z = sample_grasp_candidates(cloud, 50, spec, 1);
    CHECK(z.poses.empty());
    CHECK(z.skipped == 50);
}

TEST_CASE("to_gripper_frame: origin and inverse") {
    Rng rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        GraspPose pose;
        pose.frame = test::random_rigid(rng);
        CHECK(to_gripper_frame(pose.frame.translation, pose).norm() == 0.0);
        const Vec3 q(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        const Vec3 back = to_gripper_frame(pose.frame.apply(q), pose);
        CHECK((back - q).norm() < 1e-9);
    }
}

TEST_CASE("to_gripper_frame: invariance under joint rigid motion") {
    Rng rng(8);
    for (int rep = 0; rep < 100; ++rep) {
        GraspPose pose;
        pose.frame = test::random_rigid(rng);
        const RigidTransform world = test::random_rigid(rng);
        const Vec3 p(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));

        GraspPose moved;
        moved.frame = world.compose(pose.frame);
        const Vec3 a = to_gripper_frame(p, pose);
        const Vec3 b = to_gripper_frame(world.apply(p), moved);
        CHECK((a - b).norm() < 1e-9);
    }
}
