// SPDX-License-Identifier: Apache-2.0
#include "gfa/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "gfa/parallel.hpp"
#include "gfa/rng.hpp"

namespace gfa {

PointCloud sample_surface_points(const Mesh& mesh, std::size_t n, std::uint64_t seed) {
    if (mesh.empty()) throw data_error("cannot sample an empty mesh");
    if (n == 0) throw config_error("sample count must be at least 1");

    std::vector<double> cumulative;
    cumulative.reserve(mesh.triangles.size());
    double total = 0.0;
    for (const auto& t : mesh.triangles) {
        const Vec3& a = mesh.vertices[t[0]];
        const Vec3& b = mesh.vertices[t[1]];
        const Vec3& c = mesh.vertices[t[2]];
        total += 0.5 * (b - a).cross(c - a).norm();
        cumulative.push_back(total);
    }
    if (!(total > 0.0)) throw data_error("mesh has zero surface area");

    Rng rng(seed);
    PointCloud cloud;
    cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform01() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
        const std::size_t ti = it == cumulative.end()
                                   ? cumulative.size() - 1
                                   : std::size_t(it - cumulative.begin());
        const auto& t = mesh.triangles[ti];
        const Vec3& a = mesh.vertices[t[0]];
        const Vec3& b = mesh.vertices[t[1]];
        const Vec3& c = mesh.vertices[t[2]];
        const double s = std::sqrt(rng.uniform01());
        const double r = rng.uniform01();
        // p = (1-s) a + s (1-r) b + s r c, uniform over the triangle
        cloud.points.push_back((1.0 - s) * a + (s * (1.0 - r)) * b + (s * r) * c);
    }
    return cloud;
}

void estimate_normals(PointCloud& cloud, std::size_t k, std::size_t workers) {
    const std::size_t n = cloud.points.size();
    if (k < 3) throw config_error("normal estimation needs k >= 3");
    if (n < k + 1)
        throw config_error("normal estimation needs at least k+1 = " +
                           std::to_string(k + 1) + " points, have " +
                           std::to_string(n));

    Vec3 centroid = Vec3::Zero();
    for (const auto& p : cloud.points) centroid += p;
    centroid /= static_cast<double>(n);

    cloud.normals.assign(n, Vec3::Zero());
    parallel_for(n, workers, [&](std::size_t lo, std::size_t hi) {
        std::vector<std::pair<double, std::size_t>> dist(n);
        for (std::size_t i = lo; i < hi; ++i) {
            const Vec3& p = cloud.points[i];
            std::size_t m = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                dist[m++] = {(cloud.points[j] - p).squaredNorm(), j};
            }
            std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.begin() + m);
            // Value-ordered accumulation keeps the covariance independent of
            // how nth_element arranged the prefix.
            std::sort(dist.begin(), dist.begin() + k);

            Vec3 mean = Vec3::Zero();
            for (std::size_t q = 0; q < k; ++q) mean += cloud.points[dist[q].second];
            mean /= static_cast<double>(k);
            Mat3 cov = Mat3::Zero();
            for (std::size_t q = 0; q < k; ++q) {
                const Vec3 d = cloud.points[dist[q].second] - mean;
                cov += d * d.transpose();
            }

            Eigen::SelfAdjointEigenSolver<Mat3> eig;
            eig.computeDirect(cov);
            Vec3 normal = eig.eigenvectors().col(0); // smallest eigenvalue
            normal.normalize();
            if (normal.dot(p - centroid) < 0.0) normal = -normal;
            cloud.normals[i] = normal;
        }
    });
}

RigidTransform grasp_frame_from_normal(const Vec3& point, const Vec3& normal,
                                       double roll, const GripperSpec& spec) {
    const Vec3 u = normal.normalized();

    int least = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(u[i]) < std::abs(u[least])) least = i;
    const Vec3 axis = Vec3::Unit(least);
    const Vec3 e1 = u.cross(axis).normalized();
    const Vec3 e2 = u.cross(e1);
    const Vec3 t = (std::cos(roll) * e1 + std::sin(roll) * e2).normalized();
    const Vec3 v = t.cross(u);

    RigidTransform frame;
    frame.rotation.col(0) = u;
    frame.rotation.col(1) = v;
    frame.rotation.col(2) = t;
    frame.translation = point - (spec.depth / 2.0) * t;
    return frame;
}

CandidateSet sample_grasp_candidates(const PointCloud& cloud, std::size_t m,
                                     const GripperSpec& spec, std::uint64_t seed) {
    if (!cloud.has_normals()) throw data_error("grasp sampling needs normals");
    if (cloud.points.empty()) throw data_error("grasp sampling needs a nonempty cloud");
    if (m == 0) throw config_error("candidate count must be at least 1");

    Rng rng(seed);
    CandidateSet out;
    out.poses.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t idx = static_cast<std::size_t>(rng.below(cloud.points.size()));
        const Vec3& normal = cloud.normals[idx];
        if (normal.squaredNorm() < 1e-24) {
            ++out.skipped;
            continue;
        }
        const double roll = rng.uniform(0.0, 2.0 * std::numbers::pi);
        GraspPose pose;
        pose.frame = grasp_frame_from_normal(cloud.points[idx], normal, roll, spec);
        pose.source_point_index = static_cast<std::int64_t>(idx);
        out.poses.push_back(pose);
    }
    return out;
}

} // namespace gfa
