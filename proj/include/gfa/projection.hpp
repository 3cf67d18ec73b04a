// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gfa/occupancy.hpp"

namespace gfa {

struct BinaryImage {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<std::uint8_t> bits; // row-major, values 0/1

    std::uint8_t at(std::uint32_t r, std::uint32_t c) const {
        return bits[std::size_t(r) * cols + c];
    }
    std::uint64_t count_set() const;
};

// The three gripper planes a grid can be projected onto.
enum class GripperPlane : int { UV = 0, UT = 1, VT = 2 };

std::string_view plane_name(GripperPlane p);            // "uv" / "ut" / "vt"
GripperPlane plane_from_name(std::string_view name);

// OR-reduction of the grid along the dropped axis:
//   UV -> (a, b) image, OR over i_t
//   UT -> (a, c) image, OR over i_v
//   VT -> (b, c) image, OR over i_u
BinaryImage project(const OccupancyGrid& grid, GripperPlane plane);

// Number of 2x2 windows whose four pixels sum to exactly 3 — equivalently,
// windows matching one of the four corner patterns
//   [1 1] [1 1] [1 0] [0 1]
//   [1 0] [0 1] [1 1] [1 1]
// Images smaller than 2x2 have no windows and count 0.
std::uint64_t count_corner_features(const BinaryImage& img);

struct PlaneClassification {
    GripperPlane plane = GripperPlane::UV;
    std::array<std::uint64_t, 3> corner_counts{}; // N per plane, UV/UT/VT order
    std::array<std::uint64_t, 3> areas{};         // occupied pixels S per plane
    std::array<double, 3> scores{};

    double chosen_score() const { return scores[static_cast<int>(plane)]; }
};

// Plane scoring on precomputed areas and corner counts:
// score_p = (S_p / (S_uv + S_ut + S_vt)) * N_p, argmax with ties broken in
// UV > UT > VT order.
PlaneClassification classify_from_counts(const std::array<std::uint64_t, 3>& areas,
                                         const std::array<std::uint64_t, 3>& corners);

// Projects the grid onto all three planes and classifies it.
PlaneClassification classify_plane(const OccupancyGrid& grid);

} // namespace gfa
