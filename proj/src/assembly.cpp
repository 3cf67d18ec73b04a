// SPDX-License-Identifier: Apache-2.0
#include "gfa/assembly.hpp"

#include <algorithm>
#include <cmath>

namespace gfa {

double min_spacing(const GripperSpec& spec) {
    const double max_extent = std::max({spec.width, spec.height, spec.depth});
    return max_extent + 2.0 * spec.resolution;
}

AssembledObject layout(const std::vector<FeatureRecord>& records,
                       const std::vector<PlaneClassification>& classes,
                       const GripperSpec& spec, double spacing) {
    if (records.size() != classes.size())
        throw internal_error("layout: record/classification count mismatch");
    if (spacing < min_spacing(spec))
        throw config_error("spacing " + std::to_string(spacing) +
                           " below minimum " + std::to_string(min_spacing(spec)));

    const double max_extent = std::max({spec.width, spec.height, spec.depth});

    AssembledObject out;
    out.spacing = spacing;
    out.panel_offset = spacing + max_extent;

    std::array<std::size_t, 3> panel_counts{};
    for (const auto& cls : classes) ++panel_counts[static_cast<int>(cls.plane)];
    std::array<std::size_t, 3> side{};
    for (int p = 0; p < 3; ++p)
        side[p] = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(panel_counts[p]))));

    std::array<std::size_t, 3> next_cell{};
    out.placements.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const int p = static_cast<int>(classes[i].plane);
        const std::size_t cell = next_cell[p]++;
        const double row = static_cast<double>(cell / side[p]);
        const double col = static_cast<double>(cell % side[p]);

        Placement pl;
        pl.record_id = i;
        pl.plane = classes[i].plane;
        pl.score = classes[i].chosen_score();
        pl.point_count = records[i].exemplar.points.size();
        switch (classes[i].plane) {
            case GripperPlane::UV:
                pl.translation = Vec3(col * spacing, row * spacing, 0.0);
                break;
            case GripperPlane::UT:
                pl.translation = Vec3(col * spacing, -out.panel_offset, row * spacing);
                break;
            case GripperPlane::VT:
                pl.translation = Vec3(-out.panel_offset, col * spacing, row * spacing);
                break;
        }
        out.placements.push_back(pl);
    }
    return out;
}

PointCloud compose_cloud(const AssembledObject& assembled,
                         const std::vector<FeatureRecord>& records) {
    PointCloud cloud;
    std::size_t total = 0;
    for (const auto& pl : assembled.placements)
        total += records[pl.record_id].exemplar.points.size();
    cloud.points.reserve(total);
    for (const auto& pl : assembled.placements) {
        const auto& exemplar = records[pl.record_id].exemplar;
        for (const auto& p : exemplar.points) cloud.points.push_back(p + pl.translation);
    }
    return cloud;
}

} // namespace gfa
