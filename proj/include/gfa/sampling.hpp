// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "gfa/geometry.hpp"

namespace gfa {

// Area-weighted uniform surface sampling: triangle chosen proportional to
// area, then a uniform barycentric point. Bit-reproducible for a given seed.
PointCloud sample_surface_points(const Mesh& mesh, std::size_t n, std::uint64_t seed);

// Per-point normal from the k nearest neighbors: smallest-eigenvalue
// eigenvector of the neighborhood covariance, unit length, flipped to point
// away from the cloud centroid. Requires k >= 3 and at least k+1 points.
void estimate_normals(PointCloud& cloud, std::size_t k, std::size_t workers = 1);

struct CandidateSet {
    std::vector<GraspPose> poses;
    std::size_t skipped = 0; // candidates dropped for degenerate normals
};

// One grasp frame from a surface point and its normal: u (closing axis) along
// the normal, approach axis t at the given roll angle about u, v = t x u, and
// the point placed at gripper coordinates (0, 0, depth/2).
RigidTransform grasp_frame_from_normal(const Vec3& point, const Vec3& normal,
                                       double roll, const GripperSpec& spec);

// m random grasp candidates from a cloud with normals; deterministic in seed.
CandidateSet sample_grasp_candidates(const PointCloud& cloud, std::size_t m,
                                     const GripperSpec& spec, std::uint64_t seed);

} // namespace gfa
