// SPDX-License-Identifier: Apache-2.0
#include "gfa/occupancy.hpp"

#include "gfa/kernels.hpp"
#include "gfa/rng.hpp"

namespace gfa {

GridDims GridDims::from_spec(const GripperSpec& spec) {
    return GridDims{static_cast<std::uint16_t>(spec.voxels_u()),
                    static_cast<std::uint16_t>(spec.voxels_v()),
                    static_cast<std::uint16_t>(spec.voxels_t())};
}

OccupancyGrid::OccupancyGrid(GridDims dims) : dims_(dims) {
    if (dims.a == 0 || dims.b == 0 || dims.c == 0)
        throw internal_error("occupancy grid with zero dimension");
    words_.assign(dims.word_count(), 0);
}

std::uint64_t OccupancyGrid::bit_index(std::uint32_t iu, std::uint32_t iv,
                                       std::uint32_t it) const {
    if (iu >= dims_.a || iv >= dims_.b || it >= dims_.c)
        throw internal_error("voxel index out of range");
    return (std::uint64_t(it) * dims_.b + iv) * dims_.a + iu;
}

void OccupancyGrid::set(std::uint32_t iu, std::uint32_t iv, std::uint32_t it) {
    const std::uint64_t idx = bit_index(iu, iv, it);
    std::uint64_t& word = words_[idx >> 6];
    const std::uint64_t mask = 1ULL << (idx & 63);
    occupied_ += (word & mask) == 0;
    word |= mask;
}

bool OccupancyGrid::test(std::uint32_t iu, std::uint32_t iv, std::uint32_t it) const {
    const std::uint64_t idx = bit_index(iu, iv, it);
    return (words_[idx >> 6] >> (idx & 63)) & 1ULL;
}

std::vector<std::uint8_t> OccupancyGrid::packed() const {
    std::vector<std::uint8_t> out(dims_.packed_bytes());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(words_[i >> 3] >> (8 * (i & 7)));
    return out;
}

OccupancyGrid OccupancyGrid::from_packed(GridDims dims,
                                         std::span<const std::uint8_t> bytes) {
    if (dims.a == 0 || dims.b == 0 || dims.c == 0)
        throw format_error("grid dimensions must be nonzero");
    if (bytes.size() != dims.packed_bytes())
        throw format_error("packed grid has " + std::to_string(bytes.size()) +
                           " bytes, expected " + std::to_string(dims.packed_bytes()));
    OccupancyGrid grid(dims);
    for (std::size_t i = 0; i < bytes.size(); ++i)
        grid.words_[i >> 3] |= std::uint64_t(bytes[i]) << (8 * (i & 7));

    const std::uint64_t total = dims.total();
    const std::size_t tail = total & 63;
    if (tail != 0) {
        const std::uint64_t pad_mask = ~((1ULL << tail) - 1);
        if (grid.words_.back() & pad_mask)
            throw format_error("nonzero padding bits in packed grid");
    }
    grid.occupied_ = kernels::popcount(grid.words_.data(), grid.words_.size());
    return grid;
}

bool grids_identical(const OccupancyGrid& a, const OccupancyGrid& b) {
    if (!(a.dims() == b.dims()))
        throw data_error("grid dimension mismatch: " + std::to_string(a.dims().a) +
                         "x" + std::to_string(a.dims().b) + "x" +
                         std::to_string(a.dims().c) + " vs " +
                         std::to_string(b.dims().a) + "x" +
                         std::to_string(b.dims().b) + "x" +
                         std::to_string(b.dims().c));
    return kernels::equal(a.words().data(), b.words().data(), a.words().size());
}

std::uint64_t canonical_key(const OccupancyGrid& grid) {
    Fnv1a64 h;
    const GridDims& d = grid.dims();
    const std::uint8_t dim_bytes[6] = {
        static_cast<std::uint8_t>(d.a & 0xff), static_cast<std::uint8_t>(d.a >> 8),
        static_cast<std::uint8_t>(d.b & 0xff), static_cast<std::uint8_t>(d.b >> 8),
        static_cast<std::uint8_t>(d.c & 0xff), static_cast<std::uint8_t>(d.c >> 8)};
    h.update(dim_bytes, sizeof(dim_bytes));
    const auto bytes = grid.packed();
    h.update(bytes.data(), bytes.size());
    return h.digest();
}

} // namespace gfa
