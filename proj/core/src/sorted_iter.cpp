#include "srr/sorted_iter.hpp"

namespace srr {

SortedCursor::SortedCursor(const RangeTree& tree, const NodeAux& aux, const RankRect& q)
    : tree_(&tree), aux_(&aux), rect_(q) {
  exhausted_ = !check_rank_rect(tree, q);
  if (!exhausted_) next_a_ = q.a;
}

OptPoint SortedCursor::next() {
  if (exhausted_) return std::nullopt;
  if (next_a_ > rect_.b) {
    exhausted_ = true;
    return std::nullopt;
  }
  RankRect q = rect_;
  q.a = next_a_;
  ++stats_.successor_calls;
  const OptPoint p = leftmost_in_rect(*tree_, *aux_, q, stats_);
  if (!p) {
    exhausted_ = true;
    return std::nullopt;
  }
  next_a_ = p->x + 1;
  return p;
}

LowestFirstCursor::LowestFirstCursor(const RangeTree& tree, const NodeRmqBundle& bundle,
                                     const RankRect& q)
    : tree_(&tree), bundle_(&bundle), rect_(q) {
  exhausted_ = !check_rank_rect(tree, q);
  if (!exhausted_) next_c_ = q.c;
}

OptPoint LowestFirstCursor::next() {
  if (exhausted_) return std::nullopt;
  if (next_c_ > rect_.d) {
    exhausted_ = true;
    return std::nullopt;
  }
  RankRect q = rect_;
  q.c = next_c_;
  ++stats_.successor_calls;
  const OptPoint p = lowest_in_rect_baseline(*tree_, *bundle_, q, stats_);
  if (!p) {
    exhausted_ = true;
    return std::nullopt;
  }
  next_c_ = p->y + 1;
  return p;
}

std::vector<Point> collect_sorted(const RangeTree& tree, const NodeAux& aux, const RankRect& q,
                                  std::size_t k, QueryStats* stats) {
  SortedCursor cur(tree, aux, q);
  std::vector<Point> out;
  while (out.size() < k) {
    const OptPoint p = cur.next();
    if (!p) break;
    out.push_back(*p);
  }
  if (stats != nullptr) *stats += cur.stats();
  return out;
}

}  // namespace srr
