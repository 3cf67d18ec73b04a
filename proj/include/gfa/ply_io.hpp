// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gfa/geometry.hpp"

namespace gfa {

// ASCII PLY, vertex element only, properties x y z and optionally
// nx ny nz (float or double typed). Binary PLY is rejected.
PointCloud parse_ply_ascii(std::string_view text, std::string_view name = "<ply>");

// Coordinates are written in shortest round-trip decimal form, so
// parse(write(cloud)) reproduces every coordinate exactly.
std::string write_ply_ascii(const PointCloud& cloud);

PointCloud load_ply(const std::filesystem::path& path);
void save_ply(const PointCloud& cloud, const std::filesystem::path& path);

} // namespace gfa
