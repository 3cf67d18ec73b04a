// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "gfa/dedup.hpp"
#include "gfa/projection.hpp"

namespace gfa {

struct Placement {
    std::size_t record_id = 0; // index into the finalized record list
    GripperPlane plane = GripperPlane::UV;
    double score = 0.0;
    Vec3 translation = Vec3::Zero(); // composite frame, translation only
    std::size_t point_count = 0;
};

// Unique features tiled into one composite object. Features are grouped into
// three panels by plane class; inside a panel they sit on a row-major
// square-ish grid with pitch = spacing. Placement is translation only: under
// the identity axis mapping (u,v,t) -> (x,y,z), the UV plane already lies in
// XY, UT in XZ and VT in YZ, so each panel shows its features face on.
//   panel UV: cells at (col*s, row*s, 0)
//   panel UT: cells at (col*s, -panel_offset, row*s)
//   panel VT: cells at (-panel_offset, col*s, row*s)
struct AssembledObject {
    std::vector<Placement> placements; // record order
    double spacing = 0.0;
    double panel_offset = 0.0;
};

// Smallest spacing that keeps padded feature bounding boxes (and the full
// closing boxes used for re-extraction) pairwise disjoint.
double min_spacing(const GripperSpec& spec);

AssembledObject layout(const std::vector<FeatureRecord>& records,
                       const std::vector<PlaneClassification>& classes,
                       const GripperSpec& spec, double spacing);

// Concatenation of every translated exemplar cloud, in placement order.
PointCloud compose_cloud(const AssembledObject& assembled,
                         const std::vector<FeatureRecord>& records);

} // namespace gfa
