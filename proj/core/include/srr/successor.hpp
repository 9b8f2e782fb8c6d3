#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srr/packed_array.hpp"
#include "srr/range_tree.hpp"
#include "srr/rmq.hpp"
#include "srr/three_sided.hpp"

namespace srr {

enum class SubblockMode : std::uint8_t { Scan, Table };
enum class PredMode : std::uint8_t { Probe, StoreY };

/// Block and sub-block sizing for the range-successor structure. Unset sizes
/// select the defaults ceil(lg^3 n_hat) and ceil(lg^epsilon n_hat) (at least 2,
/// at most the block size).
struct SuccessorConfig {
  std::optional<std::size_t> block_size;
  std::optional<std::size_t> sub_block_size;
  double epsilon = 0.5;
  SubblockMode subblock_mode = SubblockMode::Table;
  PredMode pred_mode = PredMode::Probe;
};

/// SuccessorConfig with every size fixed for a concrete tree.
struct ResolvedSuccessorConfig {
  std::size_t block_size = 1;
  std::size_t sub_block_size = 1;
  SubblockMode subblock_mode = SubblockMode::Scan;  // after the table width check
  PredMode pred_mode = PredMode::Probe;
  unsigned table_key_bits = 0;  // 0 unless the table is in use
};

/// Throws InvalidConfig when an override breaks 1 <= s <= B or epsilon is outside (0, 1).
/// Table mode falls back to Scan, with a warning, when the key would be too wide.
ResolvedSuccessorConfig resolve_config(const SuccessorConfig& cfg, std::size_t n_hat,
                                       std::size_t n, std::vector<std::string>* warnings = nullptr);

/// Widest sub-block lookup key the table mode accepts.
inline constexpr unsigned kMaxTableKeyBits = 22;

/// Per-level auxiliary data for every node: per-block extreme y (D), local
/// y-ranks inside blocks and their inverse, per-sub-block extreme local ranks
/// (E), optional sorted y per block, and the optional sub-block table.
class NodeAux {
 public:
  NodeAux() = default;
  NodeAux(const PointSet& ps, unsigned height, const ResolvedSuccessorConfig& cfg);

  const ResolvedSuccessorConfig& config() const noexcept { return cfg_; }

  std::size_t block_count(const RangeTree& t, NodeRef v) const;
  std::size_t block_length(const RangeTree& t, NodeRef v, std::size_t g) const;
  std::size_t subblock_count(const RangeTree& t, NodeRef v, std::size_t g) const;

  /// Local y-rank (1-based) of local position p (1-based) of block g of v.
  std::size_t local_rank(const RangeTree& t, NodeRef v, std::size_t g, std::size_t p) const;
  /// Local position holding local y-rank r.
  std::size_t position_of_rank(const RangeTree& t, NodeRef v, std::size_t g, std::size_t r) const;
  rank_t block_min_y(const RangeTree& t, NodeRef v, std::size_t g) const;
  rank_t block_max_y(const RangeTree& t, NodeRef v, std::size_t g) const;
  std::size_t subblock_min_rank(const RangeTree& t, NodeRef v, std::size_t g, std::size_t h) const;
  std::size_t subblock_max_rank(const RangeTree& t, NodeRef v, std::size_t g, std::size_t h) const;

  struct SpaceReport {
    std::uint64_t block_summary_bits = 0;     // D arrays and their RMQ
    std::uint64_t local_rank_bits = 0;        // ranks within blocks and inverse
    std::uint64_t subblock_summary_bits = 0;  // E arrays and their RMQ
    std::uint64_t stored_y_bits = 0;
    std::uint64_t table_bits = 0;
    std::uint64_t total() const {
      return block_summary_bits + local_rank_bits + subblock_summary_bits + stored_y_bits + table_bits;
    }
  };
  SpaceReport space() const;

  void save(BinaryWriter& w) const;
  static NodeAux load(BinaryReader& r);

  struct Level {
    PackedArray d_min;
    PackedArray d_max;
    RmqIndex d_min_rmq;
    RmqIndex d_max_rmq;
    PackedArray rank;         // local rank - 1, by position
    PackedArray rank_to_pos;  // local position - 1, by block start + rank - 1
    PackedArray e_min;        // local rank - 1, by sub-block
    PackedArray e_max;
    RmqIndex e_min_rmq;
    RmqIndex e_max_rmq;
    PackedArray stored_y;     // StoreY only: sorted y, by block start + rank - 1
  };
  const Level& level(unsigned l) const { return levels_.at(l); }

  /// Index of block 0 of v among its level's blocks.
  std::size_t block_base(const RangeTree& t, NodeRef v) const;
  /// Index of sub-block 0 of block g of v among its level's sub-blocks.
  std::size_t subblock_base(const RangeTree& t, NodeRef v, std::size_t g) const;

  bool has_table() const noexcept { return !table_.empty(); }
  /// Table answer for the sub-block whose first entry sits at level position
  /// `start`: leftmost offset in [p..q] (0-based) qualifying against the
  /// rank-minus-one threshold, or nullopt.
  std::optional<std::size_t> table_lookup(unsigned level, std::size_t start, std::size_t p,
                                          std::size_t q, std::size_t threshold0,
                                          Threshold sense) const;

 private:
  std::size_t subblocks_in_length(std::size_t len) const;
  void build_table();

  ResolvedSuccessorConfig cfg_;
  std::size_t n_ = 0;
  unsigned rank_bits_ = 0;
  std::vector<Level> levels_;
  std::vector<std::uint8_t> table_;
};

/// Probe accounting for one half-plane successor query.
struct BlockQueryTrace {
  std::size_t block_length = 0;
  std::size_t subblock_count = 0;
  std::uint64_t predecessor_probes = 0;
  std::uint64_t boundary_subblocks = 0;
  std::uint64_t middle_subblocks = 0;
  std::uint64_t e_probes = 0;
};

struct HalfplaneTrace {
  std::size_t block_count = 0;
  std::uint64_t d_probes = 0;
  std::vector<BlockQueryTrace> blocks;
};

struct SuccessorTrace {
  HalfplaneTrace left;   // Above part, left child of the LCA
  HalfplaneTrace right;  // Below part, right child of the LCA
};

/// A point found inside node v together with its position in S(v).
struct NodeHit {
  Point point;
  std::size_t position = 0;
};

/// Number of points of block g with y <= d.
std::size_t pred_rank_in_block(const RangeTree& t, const NodeAux& aux, NodeRef v, std::size_t g,
                               std::uint64_t d, QueryStats& stats);

/// Leftmost local position in [p..q] of block g whose local rank is <= (LE)
/// or >= (GE) `rank_threshold`.
std::optional<std::size_t> leftmost_in_block(const RangeTree& t, const NodeAux& aux, NodeRef v,
                                             std::size_t g, std::size_t p, std::size_t q,
                                             std::size_t rank_threshold, Threshold sense,
                                             QueryStats& stats, BlockQueryTrace* trace = nullptr);

/// Leftmost point of S(v) with x in [a..b] on the kept side of `threshold`.
std::optional<NodeHit> leftmost_halfplane_in_node(const RangeTree& t, const NodeAux& aux,
                                                  NodeRef v, rank_t a, rank_t b,
                                                  std::uint64_t threshold, HalfPlane side,
                                                  QueryStats& stats, HalfplaneTrace* trace = nullptr);

/// Range successor: the point of S ∩ Q with minimum x.
OptPoint leftmost_in_rect(const RangeTree& t, const NodeAux& aux, const RankRect& q,
                          QueryStats& stats, SuccessorTrace* trace = nullptr);

/// Baseline range successor in the transposed orientation: the point of
/// S ∩ Q with minimum y, via binary search for the deepest nonempty node on
/// the root-to-leaf(c) path.
OptPoint lowest_in_rect_baseline(const RangeTree& t, const NodeRmqBundle& bundle,
                                 const RankRect& q, QueryStats& stats);

}  // namespace srr
