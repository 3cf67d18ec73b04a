// SPDX-License-Identifier: Apache-2.0
#include "gfa/geometry.hpp"

#include <cmath>

namespace gfa {

void Mesh::validate() const {
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        const auto& t = triangles[i];
        for (int k = 0; k < 3; ++k) {
            if (t[k] >= n)
                throw data_error("mesh: triangle " + std::to_string(i) +
                                 " references vertex " + std::to_string(t[k]) +
                                 " out of " + std::to_string(n));
        }
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            throw data_error("mesh: triangle " + std::to_string(i) +
                             " is degenerate");
    }
}

void PointCloud::validate() const {
    if (!normals.empty()) {
        if (normals.size() != points.size())
            throw data_error("point cloud: " + std::to_string(normals.size()) +
                             " normals for " + std::to_string(points.size()) +
                             " points");
        for (std::size_t i = 0; i < normals.size(); ++i) {
            if (std::abs(normals[i].norm() - 1.0) > 1e-6)
                throw data_error("point cloud: normal " + std::to_string(i) +
                                 " is not unit length");
        }
    }
}

bool RigidTransform::is_valid(double tol) const {
    const Mat3 should_be_identity = rotation.transpose() * rotation;
    if ((should_be_identity - Mat3::Identity()).cwiseAbs().maxCoeff() > tol)
        return false;
    return std::abs(rotation.determinant() - 1.0) <= tol;
}

kernels::FrameParams RigidTransform::frame_params() const {
    kernels::FrameParams f;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) f.r[3 * r + c] = rotation(r, c);
    for (int i = 0; i < 3; ++i) f.t[i] = translation(i);
    return f;
}

Vec3 RigidTransform::apply(const Vec3& p) const {
    const auto& m = rotation;
    return Vec3((m(0, 0) * p.x() + m(0, 1) * p.y()) + m(0, 2) * p.z() + translation.x(),
                (m(1, 0) * p.x() + m(1, 1) * p.y()) + m(1, 2) * p.z() + translation.y(),
                (m(2, 0) * p.x() + m(2, 1) * p.y()) + m(2, 2) * p.z() + translation.z());
}

Vec3 RigidTransform::apply_inverse(const Vec3& p) const {
    const kernels::FrameParams f = frame_params();
    double u, v, w;
    kernels::frame_pullback(f, p.x(), p.y(), p.z(), u, v, w);
    return Vec3(u, v, w);
}

RigidTransform RigidTransform::compose(const RigidTransform& other) const {
    RigidTransform out;
    out.rotation = rotation * other.rotation;
    out.translation = apply(other.translation);
    return out;
}

namespace {

std::uint32_t voxel_count(double extent, double resolution, const char* axis) {
    const double q = extent / resolution;
    const double n = std::round(q);
    if (n < 1.0 || std::abs(q - n) > 1e-9)
        throw config_error(std::string("gripper ") + axis + " extent " +
                           std::to_string(extent) +
                           " is not an integer number of voxels at resolution " +
                           std::to_string(resolution));
    if (n > 65535.0)
        throw config_error(std::string("gripper ") + axis +
                           " voxel count exceeds 65535");
    return static_cast<std::uint32_t>(n);
}

} // namespace

void GripperSpec::validate() const {
    if (!(width > 0.0) || !(height > 0.0) || !(depth > 0.0) || !(resolution > 0.0))
        throw config_error("gripper extents and resolution must be positive");
    voxel_count(width, resolution, "width");
    voxel_count(height, resolution, "height");
    voxel_count(depth, resolution, "depth");
}

std::uint32_t GripperSpec::voxels_u() const { return voxel_count(width, resolution, "width"); }
std::uint32_t GripperSpec::voxels_v() const { return voxel_count(height, resolution, "height"); }
std::uint32_t GripperSpec::voxels_t() const { return voxel_count(depth, resolution, "depth"); }

double GripperSpec::diagonal() const {
    return std::sqrt(width * width + height * height + depth * depth);
}

kernels::BoxParams GripperSpec::box_params() const {
    kernels::BoxParams b;
    b.half_u = width / 2.0;
    b.half_v = height / 2.0;
    b.depth = depth;
    b.res = resolution;
    b.max_iu = static_cast<double>(voxels_u() - 1);
    b.max_iv = static_cast<double>(voxels_v() - 1);
    b.max_it = static_cast<double>(voxels_t() - 1);
    return b;
}

} // namespace gfa
