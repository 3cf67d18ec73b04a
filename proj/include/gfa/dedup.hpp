// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gfa/occupancy.hpp"
#include "gfa/region.hpp"

namespace gfa {

// Binary occupancy of a gripper-frame region: voxel (i_u, i_v, i_t) is 1 iff
// at least one point maps into it. Region invariants guarantee every index is
// in range; a violation aborts with internal_error because it means the
// extraction step is broken.
OccupancyGrid voxelize(const GripperFrameCloud& region, const GripperSpec& spec);

struct SourceRef {
    std::string object;
    GraspPose pose;
};

// One distinct grid with the first region that produced it and every
// contributor that mapped onto it.
struct FeatureRecord {
    OccupancyGrid grid;
    GripperFrameCloud exemplar; // first-seen region; points may be absent when
                                // deduping from a grid-set file
    std::vector<SourceRef> sources;
    std::uint64_t key = 0;
    std::size_t first_seen = 0;
};

// Hash-then-verify duplicate filter: records are bucketed by canonical_key
// and confirmed by exact bit equality, so the result is identical to pairwise
// comparison of every grid. Insertion order decides exemplars; the finalized
// list is sorted by (occupied_count, key, first_seen) and is therefore
// independent of thread scheduling upstream.
class Deduper {
public:
    using KeyFn = std::function<std::uint64_t(const OccupancyGrid&)>;

    // key_fn exists for tests that force collisions; defaults to canonical_key.
    explicit Deduper(GridDims dims, KeyFn key_fn = {});

    void insert(OccupancyGrid grid, GripperFrameCloud exemplar);
    void insert(OccupancyGrid grid, SourceRef source);

    std::size_t total_inserted() const { return inserted_; }
    std::size_t unique_count() const { return records_.size(); }

    // Sorted records; the deduper is left empty.
    std::vector<FeatureRecord> finalize();

private:
    FeatureRecord* find_or_create(OccupancyGrid& grid);

    GridDims dims_;
    KeyFn key_fn_;
    std::vector<FeatureRecord> records_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
    std::size_t inserted_ = 0;
};

// Convenience: voxelize and dedup a whole region list in order.
std::vector<FeatureRecord> dedup(std::vector<GripperFrameCloud> regions,
                                 const GripperSpec& spec);

} // namespace gfa
