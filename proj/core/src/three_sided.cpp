#include "srr/three_sided.hpp"

#include <string>
#include <utility>

namespace srr {

NodeRmqBundle::NodeRmqBundle(const PointSet& ps, unsigned height) {
  levels_.resize(height);
  for_each_level_sequence(ps, height, [&](unsigned level, std::span<const rank_t> ys,
                                          std::span<const rank_t>) {
    if (level < height) levels_[level] = RmqIndex::build(ys);
  });
}

std::size_t NodeRmqBundle::argopt(const RangeTree& t, NodeRef v, std::size_t i, std::size_t j,
                                  Sense sense, QueryStats& stats) const {
  if (i < 1 || i > j || j > t.node_size(v)) throw OutOfRange("NodeRmqBundle::argopt: invalid range");
  ++stats.rmq_probes;
  if (i == j) return i;
  const std::size_t off = t.offset(v);
  return levels_[v.level].argopt_unchecked(off + i, off + j, sense) - off;
}

std::uint64_t NodeRmqBundle::size_in_bits() const noexcept {
  std::uint64_t bits = 0;
  for (const auto& ix : levels_) bits += ix.size_in_bits();
  return bits;
}

void NodeRmqBundle::save(BinaryWriter& w) const {
  w.put<std::uint32_t>(static_cast<std::uint32_t>(levels_.size()));
  for (const auto& ix : levels_) ix.save(w);
}

NodeRmqBundle NodeRmqBundle::load(BinaryReader& r) {
  NodeRmqBundle b;
  const auto count = r.get<std::uint32_t>();
  if (count > 64) throw FormatError("NodeRmqBundle: too many levels");
  for (std::uint32_t l = 0; l < count; ++l) b.levels_.push_back(RmqIndex::load(r));
  return b;
}

namespace {

Sense sense_for(HalfPlane side) { return side == HalfPlane::Below ? Sense::Min : Sense::Max; }

bool kept(rank_t y, std::uint64_t threshold, HalfPlane side) {
  return side == HalfPlane::Below ? y <= threshold : y >= threshold;
}

}  // namespace

bool emptiness(const RangeTree& t, const NodeRmqBundle& bundle, NodeRef v, rank_t a, rank_t b,
               std::uint64_t threshold, HalfPlane side, QueryStats& stats) {
  ++stats.emptiness_queries;
  const auto range = t.noderange(v, a, b, stats);
  if (!range) return true;
  const std::size_t p = bundle.argopt(t, v, range->first, range->second, sense_for(side), stats);
  return !kept(t.resolve_point(v, p, stats).y, threshold, side);
}

std::size_t report_halfplane(const RangeTree& t, const NodeRmqBundle& bundle, NodeRef v,
                             std::size_t first, std::size_t last, std::uint64_t threshold,
                             HalfPlane side, const EmitFn& emit, std::size_t limit,
                             QueryStats& stats) {
  if (first < 1 || first > last || last > t.node_size(v)) {
    throw OutOfRange("report_halfplane: positions [" + std::to_string(first) + ".." +
                     std::to_string(last) + "] outside S(v)");
  }
  std::size_t emitted = 0;
  std::vector<std::pair<std::size_t, std::size_t>> work{{first, last}};
  const Sense sense = sense_for(side);
  while (!work.empty() && emitted < limit) {
    const auto [i, j] = work.back();
    work.pop_back();
    const std::size_t l = bundle.argopt(t, v, i, j, sense, stats);
    const Point p = t.resolve_point(v, l, stats);
    if (!kept(p.y, threshold, side)) continue;
    emit(p);
    ++emitted;
    if (l < j) work.emplace_back(l + 1, j);
    if (i < l) work.emplace_back(i, l - 1);
  }
  return emitted;
}

bool check_rank_rect(const RangeTree& t, const RankRect& q) {
  if (q.empty || t.n() == 0) return false;
  if (q.a < 1 || q.a > q.b || q.b > t.n() || q.c < 1 || q.c > q.d || q.d > t.n()) {
    throw OutOfRange("rank rectangle [" + std::to_string(q.a) + ".." + std::to_string(q.b) +
                     "]x[" + std::to_string(q.c) + ".." + std::to_string(q.d) +
                     "] invalid for n=" + std::to_string(t.n()));
  }
  return true;
}

std::size_t report_rect(const RangeTree& t, const NodeRmqBundle& bundle, const RankRect& q,
                        const EmitFn& emit, std::size_t limit, QueryStats& stats) {
  if (!check_rank_rect(t, q) || limit == 0) return 0;
  const NodeRef v = t.lca_node(q.c, q.d);
  if (t.is_leaf(v)) {
    const Point p = t.point_by_y(q.c);
    if (p.x < q.a || p.x > q.b) return 0;
    emit(p);
    return 1;
  }
  std::size_t emitted = 0;
  if (const auto r = t.noderange(v.left(), q.a, q.b, stats)) {
    emitted += report_halfplane(t, bundle, v.left(), r->first, r->second, q.c, HalfPlane::Above,
                                emit, limit, stats);
  }
  if (emitted < limit) {
    if (const auto r = t.noderange(v.right(), q.a, q.b, stats)) {
      emitted += report_halfplane(t, bundle, v.right(), r->first, r->second, q.d, HalfPlane::Below,
                                  emit, limit - emitted, stats);
    }
  }
  return emitted;
}

}  // namespace srr
