// SPDX-License-Identifier: Apache-2.0
#include "gfa/region.hpp"

#include "gfa/kernels.hpp"

namespace gfa {

CloudSoA CloudSoA::from(const PointCloud& cloud) {
    CloudSoA soa;
    soa.xs.reserve(cloud.points.size());
    soa.ys.reserve(cloud.points.size());
    soa.zs.reserve(cloud.points.size());
    for (const auto& p : cloud.points) {
        soa.xs.push_back(p.x());
        soa.ys.push_back(p.y());
        soa.zs.push_back(p.z());
    }
    return soa;
}

std::optional<GripperFrameCloud> extract_region(const CloudSoA& cloud,
                                                const GraspPose& pose,
                                                const GripperSpec& spec,
                                                std::string source_object) {
    const std::size_t n = cloud.size();
    std::vector<double> u(n), v(n), t(n);
    const kernels::FrameParams frame = pose.frame.frame_params();
    const kernels::BoxParams box = spec.box_params();
    const std::size_t kept = kernels::extract_points(
        cloud.xs.data(), cloud.ys.data(), cloud.zs.data(), n, frame, box,
        u.data(), v.data(), t.data());
    if (kept == 0) return std::nullopt;

    GripperFrameCloud region;
    region.points.reserve(kept);
    for (std::size_t i = 0; i < kept; ++i) region.points.emplace_back(u[i], v[i], t[i]);
    region.source_object = std::move(source_object);
    region.pose = pose;
    return region;
}

std::optional<GripperFrameCloud> extract_region(const PointCloud& cloud,
                                                const GraspPose& pose,
                                                const GripperSpec& spec,
                                                std::string source_object) {
    return extract_region(CloudSoA::from(cloud), pose, spec, std::move(source_object));
}

FilterResult filter_nonempty(std::vector<std::optional<GripperFrameCloud>> regions) {
    FilterResult out;
    out.kept.reserve(regions.size());
    for (auto& r : regions) {
        if (r.has_value())
            out.kept.push_back(std::move(*r));
        else
            ++out.dropped;
    }
    return out;
}

} // namespace gfa
