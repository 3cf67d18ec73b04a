// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gfa/assembly.hpp"

namespace gfa {

struct ManifestFeature {
    std::size_t id = 0;
    std::string source_object;
    RigidTransform grasp_pose; // source grasp frame, object coordinates
    GripperPlane plane = GripperPlane::UV;
    double score = 0.0;
    Vec3 placement = Vec3::Zero(); // composite-frame translation
    std::size_t point_count = 0;
};

struct Manifest {
    GripperSpec gripper;
    double spacing = 0.0;
    double panel_offset = 0.0;
    std::vector<ManifestFeature> features;
};

Manifest build_manifest(const AssembledObject& assembled,
                        const std::vector<FeatureRecord>& records,
                        const GripperSpec& spec);

// JSON text; grasp poses are stored as position plus unit quaternion
// [x, y, z, w]. Non-finite numbers are a serialization error. Numbers are
// written in round-trip-exact form, so parse_manifest(write_manifest(m))
// reproduces every placement bit for bit.
std::string write_manifest(const Manifest& manifest);
Manifest parse_manifest(const std::string& text);

Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

} // namespace gfa
