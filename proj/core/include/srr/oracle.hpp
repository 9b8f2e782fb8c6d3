#pragma once

#include <vector>

#include "srr/rank_space.hpp"
#include "srr/three_sided.hpp"

namespace srr::oracle {

// Brute-force answers by a linear scan of the point set.

OptPoint leftmost(const PointSet& ps, const RankRect& q);
OptPoint lowest(const PointSet& ps, const RankRect& q);
/// Points of S ∩ Q in increasing x, truncated to k.
std::vector<Point> report_sorted(const PointSet& ps, const RankRect& q, std::size_t k = kNoLimit);

}  // namespace srr::oracle
