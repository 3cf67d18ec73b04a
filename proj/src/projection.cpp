// SPDX-License-Identifier: Apache-2.0
#include "gfa/projection.hpp"

#include <bit>

namespace gfa {

std::uint64_t BinaryImage::count_set() const {
    std::uint64_t n = 0;
    for (const std::uint8_t b : bits) n += b;
    return n;
}

std::string_view plane_name(GripperPlane p) {
    switch (p) {
        case GripperPlane::UV: return "uv";
        case GripperPlane::UT: return "ut";
        case GripperPlane::VT: return "vt";
    }
    return "?";
}

GripperPlane plane_from_name(std::string_view name) {
    if (name == "uv") return GripperPlane::UV;
    if (name == "ut") return GripperPlane::UT;
    if (name == "vt") return GripperPlane::VT;
    throw data_error("unknown plane '" + std::string(name) + "'");
}

BinaryImage project(const OccupancyGrid& grid, GripperPlane plane) {
    const GridDims d = grid.dims();
    BinaryImage img;
    switch (plane) {
        case GripperPlane::UV: img.rows = d.a; img.cols = d.b; break;
        case GripperPlane::UT: img.rows = d.a; img.cols = d.c; break;
        case GripperPlane::VT: img.rows = d.b; img.cols = d.c; break;
    }
    img.bits.assign(std::size_t(img.rows) * img.cols, 0);

    // Walk set bits word by word and scatter them onto the image.
    const auto words = grid.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        while (bits) {
            const int lane = std::countr_zero(bits);
            bits &= bits - 1;
            const std::uint64_t idx = (std::uint64_t(w) << 6) + std::uint64_t(lane);
            const std::uint32_t iu = static_cast<std::uint32_t>(idx % d.a);
            const std::uint64_t rest = idx / d.a;
            const std::uint32_t iv = static_cast<std::uint32_t>(rest % d.b);
            const std::uint32_t it = static_cast<std::uint32_t>(rest / d.b);
            switch (plane) {
                case GripperPlane::UV: img.bits[std::size_t(iu) * img.cols + iv] = 1; break;
                case GripperPlane::UT: img.bits[std::size_t(iu) * img.cols + it] = 1; break;
                case GripperPlane::VT: img.bits[std::size_t(iv) * img.cols + it] = 1; break;
            }
        }
    }
    return img;
}

std::uint64_t count_corner_features(const BinaryImage& img) {
    if (img.rows < 2 || img.cols < 2) return 0;
    std::uint64_t count = 0;
    for (std::uint32_t r = 0; r + 1 < img.rows; ++r) {
        const std::uint8_t* top = img.bits.data() + std::size_t(r) * img.cols;
        const std::uint8_t* bot = top + img.cols;
        for (std::uint32_t c = 0; c + 1 < img.cols; ++c) {
            const int sum = top[c] + top[c + 1] + bot[c] + bot[c + 1];
            count += (sum == 3);
        }
    }
    return count;
}

PlaneClassification classify_from_counts(const std::array<std::uint64_t, 3>& areas,
                                         const std::array<std::uint64_t, 3>& corners) {
    PlaneClassification out;
    out.areas = areas;
    out.corner_counts = corners;
    const double total = static_cast<double>(areas[0] + areas[1] + areas[2]);
    if (!(total > 0.0))
        throw internal_error("plane classification on an empty grid");
    for (int p = 0; p < 3; ++p)
        out.scores[p] =
            (static_cast<double>(areas[p]) / total) * static_cast<double>(corners[p]);

    // argmax, ties resolved toward UV then UT
    int best = 0;
    for (int p = 1; p < 3; ++p)
        if (out.scores[p] > out.scores[best]) best = p;
    out.plane = static_cast<GripperPlane>(best);
    return out;
}

PlaneClassification classify_plane(const OccupancyGrid& grid) {
    if (grid.occupied_count() == 0)
        throw internal_error("plane classification on an empty grid");
    std::array<std::uint64_t, 3> areas{};
    std::array<std::uint64_t, 3> corners{};
    for (int p = 0; p < 3; ++p) {
        const BinaryImage img = project(grid, static_cast<GripperPlane>(p));
        areas[p] = img.count_set();
        corners[p] = count_corner_features(img);
    }
    return classify_from_counts(areas, corners);
}

} // namespace gfa
