#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "srr/range_tree.hpp"
#include "srr/rmq.hpp"

namespace srr {

/// Min- and max-sense RMQ over the y sequence of every tree node. Nodes of a
/// level are contiguous in that level's sequence, so one index per level
/// serves all of its nodes; leaves hold at most one point and need none.
class NodeRmqBundle {
 public:
  NodeRmqBundle() = default;
  NodeRmqBundle(const PointSet& ps, unsigned height);

  /// Extreme-y position among S(v)[i..j]. Counts one rmq probe.
  std::size_t argopt(const RangeTree& t, NodeRef v, std::size_t i, std::size_t j, Sense sense,
                     QueryStats& stats) const;

  const RmqIndex& level(unsigned l) const { return levels_.at(l); }
  std::uint64_t size_in_bits() const noexcept;

  void save(BinaryWriter& w) const;
  static NodeRmqBundle load(BinaryReader& r);

 private:
  std::vector<RmqIndex> levels_;
};

using EmitFn = std::function<void(Point)>;
inline constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

/// True iff no point of S(v) has x in [a..b] and y on the kept side of
/// `threshold` (y <= threshold for Below, y >= threshold for Above).
bool emptiness(const RangeTree& t, const NodeRmqBundle& bundle, NodeRef v, rank_t a, rank_t b,
               std::uint64_t threshold, HalfPlane side, QueryStats& stats);

/// Reports the points of S(v)[first..last] on the kept side of `threshold`
/// by recursive extremum splitting, left part before right part. The first
/// point emitted is the extreme one (lowest for Below, highest for Above).
/// Stops after `limit` points and returns the number emitted.
std::size_t report_halfplane(const RangeTree& t, const NodeRmqBundle& bundle, NodeRef v,
                             std::size_t first, std::size_t last, std::uint64_t threshold,
                             HalfPlane side, const EmitFn& emit, std::size_t limit,
                             QueryStats& stats);

/// Unsorted 4-sided reporting: splits Q at the LCA of c and d into an Above
/// query on the left child and a Below query on the right child.
std::size_t report_rect(const RangeTree& t, const NodeRmqBundle& bundle, const RankRect& q,
                        const EmitFn& emit, std::size_t limit, QueryStats& stats);

/// Throws OutOfRange unless q is empty or 1 <= a <= b <= n and 1 <= c <= d <= n.
/// Returns false when the query has no possible answer (empty rect or n = 0).
bool check_rank_rect(const RangeTree& t, const RankRect& q);

}  // namespace srr
