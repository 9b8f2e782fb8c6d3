#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "srr/oracle.hpp"
#include "srr/rank_space.hpp"
#include "srr/sorted_iter.hpp"
#include "srr/successor.hpp"
#include "srr/three_sided.hpp"

namespace srr {

struct IndexConfig {
  BallInheritanceConfig ball;
  SuccessorConfig successor;
};

struct IndexSpaceReport {
  std::size_t n = 0;
  std::size_t n_hat = 0;
  std::uint64_t rank_map_bits = 0;
  RangeTree::SpaceReport tree;
  std::uint64_t rmq_bundle_bits = 0;
  NodeAux::SpaceReport aux;

  std::uint64_t total_bits() const;
  /// ceil(lg lg n_hat), at least 1.
  unsigned lglg() const;
  /// total_bits / (n * ceil(lg lg n_hat) * 64); 0 for n = 0.
  double words_ratio() const;
};

/// The complete static index: rank-space map, range tree, per-node RMQ, and
/// the block structure for range successor queries.
class SrrIndex {
 public:
  static constexpr char kMagic[4] = {'S', 'R', 'R', '1'};
  static constexpr std::uint16_t kFormatVersion = 1;

  SrrIndex() = default;
  SrrIndex(ReducedPoints reduced, const IndexConfig& cfg);
  /// Rank-space input; the map is the identity on [1..n].
  SrrIndex(const PointSet& ps, const IndexConfig& cfg);

  std::size_t size() const noexcept { return tree_.n(); }
  const RankSpaceMap& map() const noexcept { return map_; }
  const RangeTree& tree() const noexcept { return tree_; }
  const NodeRmqBundle& bundle() const noexcept { return bundle_; }
  const NodeAux& aux() const noexcept { return aux_; }
  const BallInheritanceConfig& ball_config() const noexcept { return tree_.config(); }
  const ResolvedSuccessorConfig& successor_config() const noexcept { return aux_.config(); }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  /// Rebuilt from the tree's point table.
  PointSet point_set() const;

  OptPoint leftmost(const RankRect& q, QueryStats& stats) const;
  OptPoint lowest(const RankRect& q, QueryStats& stats) const;
  std::vector<Point> report(const RankRect& q, QueryStats& stats, std::size_t limit = kNoLimit) const;
  std::vector<Point> report_sorted(const RankRect& q, QueryStats& stats,
                                   std::size_t k = kNoLimit) const;
  SortedCursor open_sorted(const RankRect& q) const { return SortedCursor(tree_, aux_, q); }

  RankRect to_rank(const OriginalRect& r) const { return map_.rect_to_rank(r); }
  std::pair<coord_t, coord_t> restore(Point p) const { return map_.restore_point(p); }

  IndexSpaceReport space() const;

  void save(std::ostream& os) const;
  static SrrIndex load(std::istream& is);
  void save_file(const std::string& path) const;
  static SrrIndex load_file(const std::string& path);

 private:
  void build(const PointSet& ps, const IndexConfig& cfg);

  RankSpaceMap map_;
  RangeTree tree_;
  NodeRmqBundle bundle_;
  NodeAux aux_;
  std::vector<std::string> warnings_;
};

}  // namespace srr
