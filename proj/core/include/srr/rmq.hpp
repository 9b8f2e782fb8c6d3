#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "srr/bit_vector.hpp"
#include "srr/serialize.hpp"
#include "srr/types.hpp"

namespace srr {

/// Position-only range-extremum index for one sense.
///
/// The build values are encoded as the balanced-parentheses sequence of the
/// stack that tracks "no later value beats me" candidates: every pop writes a
/// 0 and every push writes a 1. The answer to argmin(i, j) is the element
/// pushed right after the last excess minimum between the pushes of i and j,
/// or i itself if the excess never drops below its push depth. Excess minima
/// are found with per-word and per-superblock summaries plus a sparse table
/// over superblocks, all derived from the parentheses alone.
class CartesianRmq {
 public:
  CartesianRmq() = default;
  CartesianRmq(std::span<const std::uint32_t> values, Sense sense);

  std::size_t size() const noexcept { return size_; }
  Sense sense() const noexcept { return sense_; }
  /// 1-based positions, i <= j. Ties go to the smallest position.
  std::size_t argopt(std::size_t i, std::size_t j) const;

  std::uint64_t size_in_bits() const noexcept;

  void save(BinaryWriter& w) const;
  static CartesianRmq load(BinaryReader& r);

 private:
  struct MinAt {
    std::int64_t value;
    std::int64_t pos;  // bit position, or unit index before resolution
  };

  explicit CartesianRmq(BitVector bp, std::size_t size, Sense sense);
  void build_summaries();
  std::int64_t excess_before(std::size_t bit) const noexcept {
    return 2 * static_cast<std::int64_t>(bp_.rank1_unchecked(bit)) - static_cast<std::int64_t>(bit);
  }
  MinAt scan(std::size_t lo, std::size_t hi, std::int64_t e_before) const noexcept;
  MinAt last_min(std::size_t lo, std::size_t hi) const noexcept;
  std::size_t best_super(std::size_t s1, std::size_t s2) const noexcept;

  BitVector bp_;
  std::size_t size_ = 0;
  Sense sense_ = Sense::Min;
  std::vector<std::int8_t> word_min_;     // min prefix excess within a word, relative
  std::vector<std::int32_t> super_min_;   // absolute min excess within a superblock
  std::vector<std::vector<std::uint32_t>> sparse_;  // superblock argmin, later wins ties
};

/// Min- and max-sense indices over one value sequence. Values are not kept.
class RmqIndex {
 public:
  RmqIndex() = default;
  static RmqIndex build(std::span<const std::uint32_t> values, bool with_min = true,
                        bool with_max = true);

  std::size_t size() const noexcept { return size_; }
  bool has(Sense s) const noexcept { return s == Sense::Min ? has_min_ : has_max_; }

  /// Position p in [i..j] holding the extreme build value; smallest p on ties.
  /// Throws OutOfRange unless 1 <= i <= j <= size().
  std::size_t argopt(std::size_t i, std::size_t j, Sense sense) const;
  std::size_t argopt_unchecked(std::size_t i, std::size_t j, Sense sense) const {
    return sense == Sense::Min ? min_.argopt(i, j) : max_.argopt(i, j);
  }

  std::uint64_t size_in_bits() const noexcept;

  void save(BinaryWriter& w) const;
  static RmqIndex load(BinaryReader& r);

 private:
  std::size_t size_ = 0;
  bool has_min_ = false;
  bool has_max_ = false;
  CartesianRmq min_;
  CartesianRmq max_;
};

enum class Threshold : std::uint8_t { LE, GE };

/// Smallest p in [i..j] with access(p) <= threshold (LE) or >= threshold (GE).
///
/// Binary descent: one extremum probe on the whole range rules out a miss,
/// then each step probes the left half and keeps the half that must hold the
/// answer. Uses at most ceil(lg(j-i+1)) + 1 argopt probes and as many access
/// calls. `access` must return the build-time value at a position.
template <typename Access>
std::optional<std::size_t> leftmost_beyond(const RmqIndex& ix, std::size_t i, std::size_t j,
                                           std::uint64_t threshold, Threshold sense,
                                           Access&& access, QueryStats* stats = nullptr) {
  if (i < 1 || i > j || j > ix.size()) throw OutOfRange("leftmost_beyond: invalid range");
  const Sense rmq_sense = sense == Threshold::LE ? Sense::Min : Sense::Max;
  auto qualifies = [&](std::size_t p) {
    const std::uint64_t v = access(p);
    return sense == Threshold::LE ? v <= threshold : v >= threshold;
  };
  auto probe = [&](std::size_t lo, std::size_t hi) {
    if (stats != nullptr) ++stats->rmq_probes;
    return ix.argopt_unchecked(lo, hi, rmq_sense);
  };

  const std::size_t first = probe(i, j);
  if (!qualifies(first)) return std::nullopt;
  // Invariant: [lo..hi] holds the answer and hi qualifies.
  std::size_t lo = i;
  std::size_t hi = first;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::size_t p = probe(lo, mid);
    if (qualifies(p)) {
      hi = p;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace srr
