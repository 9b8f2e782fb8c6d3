#include "srr/range_tree.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace srr {

std::size_t padded_size(std::size_t n) { return n <= 1 ? 1 : std::bit_ceil(n); }

unsigned tree_height(std::size_t n) {
  return static_cast<unsigned>(std::countr_zero(padded_size(n)));
}

unsigned BallInheritanceConfig::default_stride(unsigned height) {
  if (height <= 1) return 1;
  const unsigned lg = static_cast<unsigned>(std::bit_width(height - 1));  // ceil(lg L)
  return std::max(1u, (height + lg - 1) / lg);
}

unsigned BallInheritanceConfig::effective_stride(unsigned height) const {
  switch (mode) {
    case BallMode::Walk:
      return 0;
    case BallMode::Full:
      return 1;
    case BallMode::Skip:
      return stride == 0 ? default_stride(height) : stride;
  }
  return 0;
}

std::string BallInheritanceConfig::to_string() const {
  switch (mode) {
    case BallMode::Walk:
      return "WALK";
    case BallMode::Full:
      return "FULL";
    case BallMode::Skip:
      return stride == 0 ? "SKIP" : "SKIP:" + std::to_string(stride);
  }
  return "?";
}

BallInheritanceConfig BallInheritanceConfig::parse(const std::string& text) {
  std::string up;
  for (char ch : text) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  if (up == "WALK") return walk();
  if (up == "FULL") return full();
  if (up == "SKIP") return skip();
  if (up.rfind("SKIP:", 0) == 0) {
    const std::string num = up.substr(5);
    if (!num.empty() && std::all_of(num.begin(), num.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const auto t = std::stoul(num);
      if (t >= 1 && t <= 64) return skip(static_cast<unsigned>(t));
    }
  }
  throw InvalidConfig("ball mode must be WALK, SKIP, SKIP:t (t >= 1) or FULL, got '" + text + "'");
}

void for_each_level_sequence(const PointSet& ps, unsigned height,
                             const std::function<void(unsigned, std::span<const rank_t>,
                                                      std::span<const rank_t>)>& fn) {
  const std::size_t n = ps.size();
  const std::size_t n_hat = std::size_t{1} << height;
  std::vector<rank_t> ys(ps.y_of_x());
  std::vector<rank_t> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<rank_t>(i + 1);
  std::vector<rank_t> next_ys(n);
  std::vector<rank_t> next_xs(n);

  for (unsigned level = 0;; ++level) {
    fn(level, ys, xs);
    if (level == height) break;
    // Stable partition of every node into its children; child offsets follow
    // from the rank-space property that S(child) covers a contiguous y range.
    const std::size_t child_width = n_hat >> (level + 1);
    const unsigned shift = height - level - 1;
    std::vector<std::size_t> cursor(std::size_t{2} << level, 0);
    for (std::size_t k = 0; k < cursor.size(); ++k) cursor[k] = std::min(k * child_width, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t child = (ys[i] - 1) >> shift;
      const std::size_t at = cursor[child]++;
      next_ys[at] = ys[i];
      next_xs[at] = xs[i];
    }
    ys.swap(next_ys);
    xs.swap(next_xs);
  }
}

RangeTree::RangeTree(const PointSet& ps, BallInheritanceConfig cfg)
    : n_(ps.size()),
      n_hat_(padded_size(ps.size())),
      height_(tree_height(ps.size())),
      cfg_(cfg),
      stride_(cfg.effective_stride(tree_height(ps.size()))) {
  const unsigned coord_bits = PackedArray::bits_for(n_);
  x_to_y_ = PackedArray(n_, coord_bits);
  y_to_x_ = PackedArray(n_, coord_bits);
  for (std::size_t i = 0; i < n_; ++i) {
    x_to_y_.set(i, ps.y_of_x()[i]);
    y_to_x_.set(ps.y_of_x()[i] - 1, i + 1);
  }

  levels_.resize(height_);
  materialized_.resize(height_ + 1);
  for_each_level_sequence(ps, height_, [&](unsigned level, std::span<const rank_t> ys,
                                           std::span<const rank_t> xs) {
    if (level < height_) {
      const unsigned shift = height_ - level - 1;
      std::vector<std::uint64_t> words((n_ + 63) / 64, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        if (((ys[i] - 1) >> shift) & 1u) words[i >> 6] |= std::uint64_t{1} << (i & 63);
      }
      levels_[level] = BitVector(std::move(words), n_);
    }
    if (stride_ != 0 && level > 0 && level < height_ && level % stride_ == 0) {
      PackedArray arr(n_, coord_bits);
      for (std::size_t i = 0; i < n_; ++i) arr.set(i, xs[i]);
      materialized_[level] = std::move(arr);
    }
  });
}

std::size_t RangeTree::offset(NodeRef v) const { return std::min(v.index * width(v), n_); }

std::size_t RangeTree::node_size(NodeRef v) const {
  return std::min((v.index + 1) * width(v), n_) - offset(v);
}

void RangeTree::check_node(NodeRef v) const {
  if (!valid(v)) {
    throw OutOfRange("node (" + std::to_string(v.level) + "," + std::to_string(v.index) +
                     ") not in tree of height " + std::to_string(height_));
  }
}

NodeRef RangeTree::lca_node(rank_t c, rank_t d) const {
  if (c < 1 || c > d || d > n_) {
    throw OutOfRange("lca_node: need 1 <= c <= d <= n, got c=" + std::to_string(c) +
                     " d=" + std::to_string(d));
  }
  const std::size_t diff = static_cast<std::size_t>(c - 1) ^ static_cast<std::size_t>(d - 1);
  if (diff == 0) return {height_, static_cast<std::size_t>(c - 1)};
  const auto h = static_cast<unsigned>(std::bit_width(diff));  // differing bits below level
  return {height_ - h, static_cast<std::size_t>(c - 1) >> h};
}

std::size_t RangeTree::child_rank(NodeRef v, std::size_t i, bool right) const {
  const BitVector& bits = levels_[v.level];
  const std::size_t off = offset(v);
  const std::size_t ones = bits.rank1_unchecked(off + i) - bits.rank1_unchecked(off);
  return right ? ones : i - ones;
}

std::optional<PosRange> RangeTree::noderange(NodeRef v, rank_t a, rank_t b, QueryStats& stats) const {
  check_node(v);
  if (a < 1 || a > b || b > n_) {
    throw OutOfRange("noderange: need 1 <= a <= b <= n, got a=" + std::to_string(a) +
                     " b=" + std::to_string(b));
  }
  std::size_t before = a - 1;  // points of S(u) with x < a
  std::size_t upto = b;        // points of S(u) with x <= b
  for (unsigned level = 0; level < v.level; ++level) {
    const NodeRef u{level, v.index >> (v.level - level)};
    const bool right = ((v.index >> (v.level - level - 1)) & 1u) != 0;
    before = child_rank(u, before, right);
    upto = child_rank(u, upto, right);
    ++stats.descent_rank_ops;
    if (before >= upto) return std::nullopt;
  }
  if (before >= upto) return std::nullopt;
  return PosRange{before + 1, upto};
}

Point RangeTree::resolve_point(NodeRef v, std::size_t i, QueryStats& stats) const {
  check_node(v);
  if (i < 1 || i > node_size(v)) {
    throw OutOfRange("resolve_point: position " + std::to_string(i) + " outside [1.." +
                     std::to_string(node_size(v)) + "]");
  }
  ++stats.point_resolutions;
  NodeRef u = v;
  std::size_t pos = i;
  for (;;) {
    if (u.level == 0) return point_by_x(static_cast<rank_t>(pos));
    if (u.level == height_) return point_by_y(static_cast<rank_t>(u.index + 1));
    if (materialized_[u.level]) {
      return point_by_x(static_cast<rank_t>((*materialized_[u.level])[offset(u) + pos - 1]));
    }
    const bool right = levels_[u.level].bit_at(offset(u) + pos - 1);
    pos = child_rank(u, pos, right);
    u = right ? u.right() : u.left();
    ++stats.descent_rank_ops;
  }
}

std::optional<std::size_t> RangeTree::translate_edge(NodeRef v, std::size_t i, EdgeDirection dir) const {
  check_node(v);
  if (is_leaf(v)) throw OutOfRange("translate_edge: leaf has no children");
  const BitVector& bits = levels_[v.level];
  const std::size_t off = offset(v);
  switch (dir) {
    case EdgeDirection::ToLeftChild:
    case EdgeDirection::ToRightChild: {
      if (i < 1 || i > node_size(v)) throw OutOfRange("translate_edge: position outside S(v)");
      const bool right = dir == EdgeDirection::ToRightChild;
      if (bits.bit_at(off + i - 1) != right) return std::nullopt;
      return child_rank(v, i, right);
    }
    case EdgeDirection::FromLeftChild:
    case EdgeDirection::FromRightChild: {
      const bool right = dir == EdgeDirection::FromRightChild;
      const std::size_t child_size = child_rank(v, node_size(v), right);
      if (i < 1 || i > child_size) throw OutOfRange("translate_edge: position outside child");
      const std::size_t before = right ? bits.rank1_unchecked(off) : off - bits.rank1_unchecked(off);
      return bits.select(right, before + i) - off;
    }
  }
  return std::nullopt;
}

Point RangeTree::point_by_y(rank_t y) const {
  if (y < 1 || y > n_) throw OutOfRange("point_by_y: rank outside [1..n]");
  return {static_cast<rank_t>(y_to_x_[y - 1]), y};
}

Point RangeTree::point_by_x(rank_t x) const {
  if (x < 1 || x > n_) throw OutOfRange("point_by_x: rank outside [1..n]");
  return {x, static_cast<rank_t>(x_to_y_[x - 1])};
}

RangeTree::SpaceReport RangeTree::space() const {
  SpaceReport r;
  for (const auto& bv : levels_) r.level_bits += bv.size_in_bits();
  for (const auto& m : materialized_) {
    if (m) r.materialized_bits += m->size_in_bits();
  }
  r.point_table_bits = x_to_y_.size_in_bits() + y_to_x_.size_in_bits();
  return r;
}

void RangeTree::save(BinaryWriter& w) const {
  w.put<std::uint64_t>(n_);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(cfg_.mode));
  w.put<std::uint32_t>(cfg_.stride);
  x_to_y_.save(w);
  y_to_x_.save(w);
  for (const auto& bv : levels_) bv.save(w);
  for (unsigned level = 0; level <= height_; ++level) {
    w.put<std::uint8_t>(materialized_[level] ? 1 : 0);
    if (materialized_[level]) materialized_[level]->save(w);
  }
}

RangeTree RangeTree::load(BinaryReader& r) {
  RangeTree t;
  t.n_ = r.get<std::uint64_t>();
  t.n_hat_ = padded_size(t.n_);
  t.height_ = tree_height(t.n_);
  const auto mode = r.get<std::uint8_t>();
  if (mode > 2) throw FormatError("RangeTree: bad ball mode");
  t.cfg_ = {static_cast<BallMode>(mode), r.get<std::uint32_t>()};
  t.stride_ = t.cfg_.effective_stride(t.height_);
  t.x_to_y_ = PackedArray::load(r);
  t.y_to_x_ = PackedArray::load(r);
  if (t.x_to_y_.size() != t.n_ || t.y_to_x_.size() != t.n_) throw FormatError("RangeTree: point table size");
  t.levels_.reserve(t.height_);
  for (unsigned level = 0; level < t.height_; ++level) {
    t.levels_.push_back(BitVector::load(r));
    if (t.levels_.back().size() != t.n_) throw FormatError("RangeTree: level length");
  }
  t.materialized_.resize(t.height_ + 1);
  for (unsigned level = 0; level <= t.height_; ++level) {
    if (r.get<std::uint8_t>() != 0) {
      t.materialized_[level] = PackedArray::load(r);
      if (t.materialized_[level]->size() != t.n_) throw FormatError("RangeTree: materialized length");
    }
  }
  return t;
}

}  // namespace srr
