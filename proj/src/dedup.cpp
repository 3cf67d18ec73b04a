// SPDX-License-Identifier: Apache-2.0
#include "gfa/dedup.hpp"

#include <algorithm>
#include <cmath>

namespace gfa {

OccupancyGrid voxelize(const GripperFrameCloud& region, const GripperSpec& spec) {
    if (region.points.empty())
        throw internal_error("voxelize: region has no points");
    OccupancyGrid grid(GridDims::from_spec(spec));
    const double half_u = spec.width / 2.0;
    const double half_v = spec.height / 2.0;
    const double res = spec.resolution;
    const double max_iu = static_cast<double>(grid.dims().a - 1);
    const double max_iv = static_cast<double>(grid.dims().b - 1);
    const double max_it = static_cast<double>(grid.dims().c - 1);
    for (const auto& p : region.points) {
        // Same expressions as the extraction containment guard, so indices
        // here can never land outside the grid for a real region.
        const double fu = std::floor((p.x() + half_u) / res);
        const double fv = std::floor((p.y() + half_v) / res);
        const double ft = std::floor(p.z() / res);
        if (!(fu >= 0.0 && fu <= max_iu && fv >= 0.0 && fv <= max_iv &&
              ft >= 0.0 && ft <= max_it))
            throw internal_error("voxelize: point outside the closing volume; "
                                 "extraction produced an invalid region");
        grid.set(static_cast<std::uint32_t>(fu), static_cast<std::uint32_t>(fv),
                 static_cast<std::uint32_t>(ft));
    }
    return grid;
}

Deduper::Deduper(GridDims dims, KeyFn key_fn)
    : dims_(dims), key_fn_(std::move(key_fn)) {
    if (!key_fn_) key_fn_ = [](const OccupancyGrid& g) { return canonical_key(g); };
}

FeatureRecord* Deduper::find_or_create(OccupancyGrid& grid) {
    if (!(grid.dims() == dims_))
        throw data_error("dedup: mixed grid dimensions in the input stream");
    const std::uint64_t key = key_fn_(grid);
    auto& bucket = buckets_[key];
    for (std::size_t idx : bucket) {
        if (grids_identical(records_[idx].grid, grid)) {
            ++inserted_;
            return &records_[idx];
        }
    }
    FeatureRecord rec;
    rec.grid = std::move(grid);
    rec.key = key;
    rec.first_seen = inserted_;
    bucket.push_back(records_.size());
    records_.push_back(std::move(rec));
    ++inserted_;
    return &records_.back();
}

void Deduper::insert(OccupancyGrid grid, GripperFrameCloud exemplar) {
    FeatureRecord* rec = find_or_create(grid);
    rec->sources.push_back(SourceRef{exemplar.source_object, exemplar.pose});
    if (rec->exemplar.points.empty() && rec->sources.size() == 1)
        rec->exemplar = std::move(exemplar);
}

void Deduper::insert(OccupancyGrid grid, SourceRef source) {
    FeatureRecord* rec = find_or_create(grid);
    if (rec->sources.empty()) {
        rec->exemplar.source_object = source.object;
        rec->exemplar.pose = source.pose;
    }
    rec->sources.push_back(std::move(source));
}

std::vector<FeatureRecord> Deduper::finalize() {
    std::vector<FeatureRecord> out = std::move(records_);
    records_.clear();
    buckets_.clear();
    std::sort(out.begin(), out.end(),
              [](const FeatureRecord& a, const FeatureRecord& b) {
                  if (a.grid.occupied_count() != b.grid.occupied_count())
                      return a.grid.occupied_count() < b.grid.occupied_count();
                  if (a.key != b.key) return a.key < b.key;
                  return a.first_seen < b.first_seen;
              });
    return out;
}

std::vector<FeatureRecord> dedup(std::vector<GripperFrameCloud> regions,
                                 const GripperSpec& spec) {
    Deduper dd(GridDims::from_spec(spec));
    for (auto& region : regions) {
        OccupancyGrid grid = voxelize(region, spec);
        dd.insert(std::move(grid), std::move(region));
    }
    return dd.finalize();
}

} // namespace gfa
