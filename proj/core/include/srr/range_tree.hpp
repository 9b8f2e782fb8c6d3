#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srr/bit_vector.hpp"
#include "srr/packed_array.hpp"
#include "srr/rank_space.hpp"
#include "srr/types.hpp"

namespace srr {

/// A node of the conceptual range tree over y. Level 0 is the root; at level
/// `level` the node with index k covers y ranks [k*w + 1 .. (k+1)*w] with
/// w = n_hat >> level.
struct NodeRef {
  unsigned level = 0;
  std::size_t index = 0;

  NodeRef left() const { return {level + 1, 2 * index}; }
  NodeRef right() const { return {level + 1, 2 * index + 1}; }
  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

enum class BallMode : std::uint8_t { Walk, Skip, Full };

/// Trade-off between stored coordinate arrays and point-resolution probes.
/// Walk stores nothing and resolves by descending to the leaf array. Skip(t)
/// stores x ranks at every level divisible by t. Full is Skip(1).
struct BallInheritanceConfig {
  BallMode mode = BallMode::Skip;
  unsigned stride = 0;  // Skip only; 0 selects the default for the tree height

  static BallInheritanceConfig walk() { return {BallMode::Walk, 0}; }
  static BallInheritanceConfig skip(unsigned t = 0) { return {BallMode::Skip, t}; }
  static BallInheritanceConfig full() { return {BallMode::Full, 1}; }

  /// max(1, ceil(L / ceil(lg L))), the default Skip stride.
  static unsigned default_stride(unsigned height);
  /// Effective stride for a tree of the given height; 0 means no materialized levels.
  unsigned effective_stride(unsigned height) const;

  /// "WALK", "SKIP:t" or "FULL"; the Skip form accepts "SKIP" for the default stride.
  std::string to_string() const;
  static BallInheritanceConfig parse(const std::string& text);
};

enum class EdgeDirection : std::uint8_t { ToLeftChild, ToRightChild, FromLeftChild, FromRightChild };

/// Positions [first..last] inside S(v), both 1-based.
using PosRange = std::pair<std::size_t, std::size_t>;

/// Generates the y sequence S(v) of every node, level by level, each level
/// being the concatenation of its nodes in y-range order.
void for_each_level_sequence(const PointSet& ps, unsigned height,
                             const std::function<void(unsigned level, std::span<const rank_t> ys,
                                                      std::span<const rank_t> xs)>& fn);

/// Smallest power of two >= n (1 for n <= 1) and its base-2 logarithm.
std::size_t padded_size(std::size_t n);
unsigned tree_height(std::size_t n);

/// The range tree over y stored as one concatenated bit-vector per level.
class RangeTree {
 public:
  RangeTree() = default;
  RangeTree(const PointSet& ps, BallInheritanceConfig cfg);

  std::size_t n() const noexcept { return n_; }
  std::size_t n_hat() const noexcept { return n_hat_; }
  unsigned height() const noexcept { return height_; }
  const BallInheritanceConfig& config() const noexcept { return cfg_; }
  unsigned stride() const noexcept { return stride_; }

  NodeRef root() const { return {0, 0}; }
  bool is_leaf(NodeRef v) const { return v.level == height_; }
  std::size_t width(NodeRef v) const { return n_hat_ >> v.level; }
  std::size_t y_lo(NodeRef v) const { return v.index * width(v) + 1; }
  std::size_t y_hi(NodeRef v) const { return y_lo(v) + width(v) - 1; }
  /// 0-based offset of S(v) inside its level's concatenated sequence.
  std::size_t offset(NodeRef v) const;
  std::size_t node_size(NodeRef v) const;
  bool valid(NodeRef v) const { return v.level <= height_ && v.index < (std::size_t{1} << v.level); }

  /// Deepest node whose y range contains both c and d.
  NodeRef lca_node(rank_t c, rank_t d) const;
  /// Positions in S(v) of the points with x in [a..b]; nullopt if none.
  std::optional<PosRange> noderange(NodeRef v, rank_t a, rank_t b, QueryStats& stats) const;
  /// Coordinates of S(v)[i].
  Point resolve_point(NodeRef v, std::size_t i, QueryStats& stats) const;
  std::optional<std::size_t> translate_edge(NodeRef v, std::size_t i, EdgeDirection dir) const;
  /// Number of points among S(v)[1..i] that go to the given child.
  std::size_t child_rank(NodeRef v, std::size_t i, bool right) const;

  Point point_by_y(rank_t y) const;
  Point point_by_x(rank_t x) const;
  const BitVector& level_bits(unsigned level) const { return levels_.at(level); }
  bool materialized(unsigned level) const {
    return level < materialized_.size() && materialized_[level].has_value();
  }

  struct SpaceReport {
    std::uint64_t level_bits = 0;
    std::uint64_t materialized_bits = 0;
    std::uint64_t point_table_bits = 0;
  };
  SpaceReport space() const;

  void save(BinaryWriter& w) const;
  static RangeTree load(BinaryReader& r);

 private:
  void check_node(NodeRef v) const;

  std::size_t n_ = 0;
  std::size_t n_hat_ = 1;
  unsigned height_ = 0;
  BallInheritanceConfig cfg_;
  unsigned stride_ = 0;
  std::vector<BitVector> levels_;                     // levels 0..height-1
  std::vector<std::optional<PackedArray>> materialized_;  // x ranks per position
  PackedArray x_to_y_;
  PackedArray y_to_x_;
};

}  // namespace srr
