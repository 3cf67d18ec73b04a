// SPDX-License-Identifier: Apache-2.0
#include "gfa/grid_set.hpp"

#include <fstream>

namespace gfa {

namespace {

constexpr char kMagic[4] = {'G', 'F', 'A', '1'};
// Memory guard for hostile headers; far above any practical grid.
constexpr std::uint64_t kMaxVoxels = 1ULL << 31;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct Cursor {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    std::span<const std::uint8_t> take(std::size_t n) {
        if (bytes.size() - pos < n) throw format_error("truncated grid-set stream");
        auto out = bytes.subspan(pos, n);
        pos += n;
        return out;
    }

    std::uint16_t u16() {
        auto b = take(2);
        return static_cast<std::uint16_t>(b[0] | (std::uint16_t(b[1]) << 8));
    }

    std::uint32_t u32() {
        auto b = take(4);
        return b[0] | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
               (std::uint32_t(b[3]) << 24);
    }
};

} // namespace

std::vector<std::uint8_t> write_grid_set(const GridSet& set) {
    if (set.dims.a == 0 || set.dims.b == 0 || set.dims.c == 0)
        throw format_error("grid-set dimensions must be in [1, 65535]");
    if (set.records.size() > 0xffffffffULL)
        throw format_error("too many grid-set records");

    const std::size_t grid_bytes = set.dims.packed_bytes();
    std::vector<std::uint8_t> out;
    std::size_t total = 14;
    for (const auto& r : set.records) total += 4 + r.metadata.size() + grid_bytes;
    out.reserve(total);

    out.insert(out.end(), kMagic, kMagic + 4);
    put_u16(out, set.dims.a);
    put_u16(out, set.dims.b);
    put_u16(out, set.dims.c);
    put_u32(out, static_cast<std::uint32_t>(set.records.size()));
    for (const auto& r : set.records) {
        if (!(r.grid.dims() == set.dims))
            throw format_error("record grid dimensions differ from the set header");
        put_u32(out, static_cast<std::uint32_t>(r.metadata.size()));
        out.insert(out.end(), r.metadata.begin(), r.metadata.end());
        const auto packed = r.grid.packed();
        out.insert(out.end(), packed.begin(), packed.end());
    }
    return out;
}

GridSet read_grid_set(std::span<const std::uint8_t> bytes) {
    Cursor cur{bytes};
    const auto magic = cur.take(4);
    if (!std::equal(magic.begin(), magic.end(), kMagic))
        throw format_error("bad grid-set magic");

    GridSet set;
    set.dims.a = cur.u16();
    set.dims.b = cur.u16();
    set.dims.c = cur.u16();
    if (set.dims.a == 0 || set.dims.b == 0 || set.dims.c == 0)
        throw format_error("grid-set dimensions must be nonzero");
    if (set.dims.total() > kMaxVoxels)
        throw format_error("grid-set dimensions exceed the size limit");

    const std::uint32_t count = cur.u32();
    const std::size_t grid_bytes = set.dims.packed_bytes();
    set.records.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint32_t meta_len = cur.u32();
        const auto meta = cur.take(meta_len);
        GridSetRecord rec;
        rec.metadata.assign(meta.begin(), meta.end());
        rec.grid = OccupancyGrid::from_packed(set.dims, cur.take(grid_bytes));
        set.records.push_back(std::move(rec));
    }
    if (cur.pos != bytes.size())
        throw format_error("trailing bytes after last grid-set record");
    return set;
}

GridSet load_grid_set(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open '" + path.string() + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return read_grid_set(bytes);
    } catch (const format_error& e) {
        throw format_error(path.string() + ": " + e.what());
    }
}

void save_grid_set(const GridSet& set, const std::filesystem::path& path) {
    const auto bytes = write_grid_set(set);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw data_error("write failed for '" + path.string() + "'");
}

} // namespace gfa
