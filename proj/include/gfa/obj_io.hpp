// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gfa/geometry.hpp"

namespace gfa {

// Parses the OBJ subset this tool writes and consumes: `v x y z` vertices,
// `f i j k ...` faces (1-based indices, optional "/..." suffixes ignored),
// `#` comments and blank lines. Faces with more than three vertices are
// fan-triangulated. Anything else is a parse error with a line number.
Mesh parse_obj(std::string_view text, std::string_view name = "<obj>");

std::string write_obj(const Mesh& mesh);

Mesh load_obj(const std::filesystem::path& path);
void save_obj(const Mesh& mesh, const std::filesystem::path& path);

} // namespace gfa
