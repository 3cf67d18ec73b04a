// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gfa/common.hpp"
#include "gfa/geometry.hpp"

namespace gfa {

struct GridDims {
    std::uint16_t a = 0; // voxels along u
    std::uint16_t b = 0; // voxels along v
    std::uint16_t c = 0; // voxels along t

    std::uint64_t total() const {
        return std::uint64_t(a) * std::uint64_t(b) * std::uint64_t(c);
    }
    std::size_t packed_bytes() const { return std::size_t((total() + 7) / 8); }
    std::size_t word_count() const { return std::size_t((total() + 63) / 64); }

    bool operator==(const GridDims&) const = default;

    static GridDims from_spec(const GripperSpec& spec);
};

// Binary voxel grid over the gripper closing volume. Bit index
// ((i_t * b) + i_v) * a + i_u, stored LSB-first in 64-bit words; bits past
// a*b*c are always zero so packed words compare and hash directly.
class OccupancyGrid {
public:
    OccupancyGrid() = default;
    explicit OccupancyGrid(GridDims dims);

    const GridDims& dims() const { return dims_; }
    std::span<const std::uint64_t> words() const { return words_; }
    std::uint64_t occupied_count() const { return occupied_; }

    std::uint64_t bit_index(std::uint32_t iu, std::uint32_t iv, std::uint32_t it) const;
    void set(std::uint32_t iu, std::uint32_t iv, std::uint32_t it);
    bool test(std::uint32_t iu, std::uint32_t iv, std::uint32_t it) const;

    // Serialization layout: ceil(a*b*c/8) bytes, LSB-first within each byte,
    // zero padding bits.
    std::vector<std::uint8_t> packed() const;
    static OccupancyGrid from_packed(GridDims dims, std::span<const std::uint8_t> bytes);

    bool operator==(const OccupancyGrid&) const = default;

private:
    GridDims dims_;
    std::vector<std::uint64_t> words_;
    std::uint64_t occupied_ = 0;
};

// Exact bit equality; the feature filter's core predicate.
// Throws data_error on dimension mismatch rather than answering false.
bool grids_identical(const OccupancyGrid& a, const OccupancyGrid& b);

// Stable non-cryptographic 64-bit key over (dims, packed bits). Identical
// grids always share a key; collisions are legal and resolved by
// grids_identical.
std::uint64_t canonical_key(const OccupancyGrid& grid);

} // namespace gfa
