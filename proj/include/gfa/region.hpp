// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gfa/geometry.hpp"

namespace gfa {

// Object points inside the gripper closing volume, in gripper (u,v,t)
// coordinates. Never empty: empty intersections are filtered out before this
// type exists.
struct GripperFrameCloud {
    std::vector<Vec3> points;
    std::string source_object;
    GraspPose pose;
};

// Structure-of-arrays view of a point cloud for the extraction kernels.
// Built once per object and reused across all of its grasp candidates.
struct CloudSoA {
    std::vector<double> xs, ys, zs;

    std::size_t size() const { return xs.size(); }
    static CloudSoA from(const PointCloud& cloud);
};

// Pulls the cloud into the gripper frame of `pose` and keeps the points
// inside the closing box (closed lower bounds, open upper bounds).
// Returns nullopt when nothing survives.
std::optional<GripperFrameCloud> extract_region(const CloudSoA& cloud,
                                                const GraspPose& pose,
                                                const GripperSpec& spec,
                                                std::string source_object = {});
std::optional<GripperFrameCloud> extract_region(const PointCloud& cloud,
                                                const GraspPose& pose,
                                                const GripperSpec& spec,
                                                std::string source_object = {});

struct FilterResult {
    std::vector<GripperFrameCloud> kept; // input order preserved
    std::size_t dropped = 0;
};

FilterResult filter_nonempty(std::vector<std::optional<GripperFrameCloud>> regions);

} // namespace gfa
