#pragma once

#include <cstdint>
#include <string>

#include "qalign/point_set.hpp"

namespace qalign::datasets {

// 91-point fish-shaped outline (the classic quartic fish curve), the same
// cardinality as the reference benchmark shape. Coordinates are O(1).
PointSetd fish();

// Synthetic 2D sets bundled for self-contained runs.
PointSetd ring(Eigen::Index count = 64);
PointSetd grid(Eigen::Index rows = 8, Eigen::Index cols = 8);
PointSetd gaussian_blobs(Eigen::Index count = 60, std::uint64_t seed = 7);

bool is_builtin(const std::string& name);
PointSetd by_name(const std::string& name);

}  // namespace qalign::datasets
