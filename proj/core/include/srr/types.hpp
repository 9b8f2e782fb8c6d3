#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace srr {

/// Rank coordinates and node-local positions are 1-based throughout.
using rank_t = std::uint32_t;
using coord_t = std::int64_t;

struct Point {
  rank_t x = 0;
  rank_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

using OptPoint = std::optional<Point>;

/// Axis-aligned query rectangle [a..b] x [c..d]. Bounds are inclusive.
/// A rank-space rectangle may be `empty`, in which case every query on it
/// answers "none".
struct RankRect {
  rank_t a = 1;
  rank_t b = 0;
  rank_t c = 1;
  rank_t d = 0;
  bool empty = false;

  static RankRect make_empty() { return RankRect{1, 0, 1, 0, true}; }
  bool contains(Point p) const {
    return !empty && a <= p.x && p.x <= b && c <= p.y && p.y <= d;
  }
  friend bool operator==(const RankRect&, const RankRect&) = default;
};

struct OriginalRect {
  coord_t a = 0;
  coord_t b = 0;
  coord_t c = 0;
  coord_t d = 0;
};

enum class Sense : std::uint8_t { Min, Max };

/// Side of a 3-sided query inside a tree node: `Below` keeps y <= threshold,
/// `Above` keeps y >= threshold.
enum class HalfPlane : std::uint8_t { Below, Above };

/// Probe counters. Counters only grow; callers reset explicitly.
struct QueryStats {
  std::uint64_t emptiness_queries = 0;
  std::uint64_t rmq_probes = 0;
  std::uint64_t point_resolutions = 0;
  std::uint64_t descent_rank_ops = 0;
  std::uint64_t block_queries = 0;
  std::uint64_t subblock_scans = 0;
  std::uint64_t predecessor_probes = 0;
  std::uint64_t successor_calls = 0;

  void reset() { *this = QueryStats{}; }
  QueryStats& operator+=(const QueryStats& o);
  friend QueryStats operator-(QueryStats lhs, const QueryStats& rhs);
  friend bool operator==(const QueryStats&, const QueryStats&) = default;
};

inline QueryStats& QueryStats::operator+=(const QueryStats& o) {
  emptiness_queries += o.emptiness_queries;
  rmq_probes += o.rmq_probes;
  point_resolutions += o.point_resolutions;
  descent_rank_ops += o.descent_rank_ops;
  block_queries += o.block_queries;
  subblock_scans += o.subblock_scans;
  predecessor_probes += o.predecessor_probes;
  successor_calls += o.successor_calls;
  return *this;
}

inline QueryStats operator-(QueryStats lhs, const QueryStats& rhs) {
  lhs.emptiness_queries -= rhs.emptiness_queries;
  lhs.rmq_probes -= rhs.rmq_probes;
  lhs.point_resolutions -= rhs.point_resolutions;
  lhs.descent_rank_ops -= rhs.descent_rank_ops;
  lhs.block_queries -= rhs.block_queries;
  lhs.subblock_scans -= rhs.subblock_scans;
  lhs.predecessor_probes -= rhs.predecessor_probes;
  lhs.successor_calls -= rhs.successor_calls;
  return lhs;
}

// Errors. Everything derives from a standard exception so callers that only
// care about "bad input" can catch std::exception.

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateCoordinate : public std::invalid_argument {
 public:
  DuplicateCoordinate(char axis, coord_t value, std::size_t first_line, std::size_t second_line);

  char axis() const noexcept { return axis_; }
  coord_t value() const noexcept { return value_; }
  std::size_t first_line() const noexcept { return first_line_; }
  std::size_t second_line() const noexcept { return second_line_; }

 private:
  char axis_;
  coord_t value_;
  std::size_t first_line_;
  std::size_t second_line_;
};

}  // namespace srr
