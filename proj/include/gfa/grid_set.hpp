// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gfa/occupancy.hpp"

namespace gfa {

// Packed grid-set container (.gfa). Byte-exact layout, all integers
// little-endian:
//
//   magic   "GFA1"                       4 bytes
//   a, b, c voxel counts                 3 x u16
//   record count                         u32
//   per record:
//     metadata length                    u32
//     metadata (UTF-8 JSON)              variable
//     packed grid bits                   ceil(a*b*c/8) bytes
//
// Bit index ((i_t*b)+i_v)*a + i_u, LSB-first within each byte; padding bits
// are zero. The same logical content always serializes to the same bytes.
struct GridSetRecord {
    std::string metadata; // UTF-8 JSON blob
    OccupancyGrid grid;
};

struct GridSet {
    GridDims dims;
    std::vector<GridSetRecord> records;
};

std::vector<std::uint8_t> write_grid_set(const GridSet& set);
GridSet read_grid_set(std::span<const std::uint8_t> bytes);

GridSet load_grid_set(const std::filesystem::path& path);
void save_grid_set(const GridSet& set, const std::filesystem::path& path);

} // namespace gfa
