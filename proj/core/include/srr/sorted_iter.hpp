#pragma once

#include <vector>

#include "srr/successor.hpp"

namespace srr {

/// Online sorted reporting: yields the points of S ∩ Q in increasing x, one
/// range-successor query per call. Opening issues no query.
class SortedCursor {
 public:
  SortedCursor(const RangeTree& tree, const NodeAux& aux, const RankRect& q);

  OptPoint next();
  bool exhausted() const noexcept { return exhausted_; }
  rank_t next_a() const noexcept { return next_a_; }
  const RankRect& rect() const noexcept { return rect_; }
  const QueryStats& stats() const noexcept { return stats_; }

 private:
  const RangeTree* tree_;
  const NodeAux* aux_;
  RankRect rect_;
  rank_t next_a_ = 1;
  bool exhausted_ = false;
  QueryStats stats_;
};

/// The same contract in the transposed orientation: increasing y, driven by
/// the baseline lowest-point query with a shrinking [c..d].
class LowestFirstCursor {
 public:
  LowestFirstCursor(const RangeTree& tree, const NodeRmqBundle& bundle, const RankRect& q);

  OptPoint next();
  bool exhausted() const noexcept { return exhausted_; }
  const QueryStats& stats() const noexcept { return stats_; }

 private:
  const RangeTree* tree_;
  const NodeRmqBundle* bundle_;
  RankRect rect_;
  rank_t next_c_ = 1;
  bool exhausted_ = false;
  QueryStats stats_;
};

/// First min(k, |S ∩ Q|) points in increasing x. Adds the cursor's counters
/// to `stats` when given.
std::vector<Point> collect_sorted(const RangeTree& tree, const NodeAux& aux, const RankRect& q,
                                  std::size_t k = kNoLimit, QueryStats* stats = nullptr);

}  // namespace srr
