// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "gfa/common.hpp"
#include "gfa/kernels.hpp"

namespace gfa {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;

    bool empty() const { return vertices.empty() || triangles.empty(); }
    // Checks index bounds and rejects degenerate triangles.
    void validate() const;
};

struct PointCloud {
    std::vector<Vec3> points;
    std::vector<Vec3> normals; // empty, or one unit normal per point

    std::size_t size() const { return points.size(); }
    bool has_normals() const { return !normals.empty(); }
    void validate() const;
};

// Rigid motion; rotation must be orthonormal with determinant +1.
struct RigidTransform {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    bool is_valid(double tol = 1e-9) const;

    // World point from frame coordinates / frame coordinates from a world
    // point. Both go through the shared kernel arithmetic so that single-point
    // transforms round exactly like the batched extraction kernels.
    Vec3 apply(const Vec3& p) const;
    Vec3 apply_inverse(const Vec3& p) const;

    // this ∘ other: apply `other` first, then this.
    RigidTransform compose(const RigidTransform& other) const;

    kernels::FrameParams frame_params() const;
};

// Parallel-jaw closing volume and its voxelization.
//
// Axis convention used throughout: u = closing direction (between the
// fingers), v = finger-height direction, t = approach direction. The closing
// volume is the box u in [-width/2, width/2], v in [-height/2, height/2],
// t in [0, depth] with t = 0 at the gripper mouth.
struct GripperSpec {
    double width = 0.08;
    double height = 0.04;
    double depth = 0.06;
    double resolution = 0.01; // meters per voxel edge

    // Throws config_error unless all extents are positive and each is an
    // integer voxel count within 1e-9.
    void validate() const;

    std::uint32_t voxels_u() const;
    std::uint32_t voxels_v() const;
    std::uint32_t voxels_t() const;

    double diagonal() const; // full box diagonal length

    kernels::BoxParams box_params() const;
};

// Pose of the gripper frame in object/world coordinates: frame maps gripper
// (u,v,t) coordinates into the object frame.
struct GraspPose {
    RigidTransform frame;
    std::int64_t source_point_index = -1;
};

inline Vec3 to_gripper_frame(const Vec3& p, const GraspPose& pose) {
    return pose.frame.apply_inverse(p);
}

} // namespace gfa
