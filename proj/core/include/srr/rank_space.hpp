#pragma once

#include <span>
#include <utility>
#include <vector>

#include "srr/types.hpp"

namespace srr {

/// Points in rank space: a permutation grid sorted by x. `y_of_x[x-1]` is the
/// y rank of the unique point with x rank `x`.
class PointSet {
 public:
  PointSet() = default;
  /// Validates that `y_of_x` is a permutation of [1..n]. Throws
  /// DuplicateCoordinate or OutOfRange otherwise.
  explicit PointSet(std::vector<rank_t> y_of_x);
  static PointSet from_points(std::span<const Point> points);

  std::size_t size() const noexcept { return y_of_x_.size(); }
  bool empty() const noexcept { return y_of_x_.empty(); }
  Point operator[](std::size_t i) const { return {static_cast<rank_t>(i + 1), y_of_x_[i]}; }
  Point at_x(rank_t x) const;
  const std::vector<rank_t>& y_of_x() const noexcept { return y_of_x_; }
  std::vector<Point> points() const;

 private:
  std::vector<rank_t> y_of_x_;
};

class RankSpaceMap {
 public:
  RankSpaceMap() = default;
  RankSpaceMap(std::vector<coord_t> xs_sorted, std::vector<coord_t> ys_sorted);

  std::size_t size() const noexcept { return xs_.size(); }
  const std::vector<coord_t>& xs_sorted() const noexcept { return xs_; }
  const std::vector<coord_t>& ys_sorted() const noexcept { return ys_; }

  /// Maps an ORIGINAL rectangle to RANK space. Inverted bounds or an
  /// interval that contains no stored coordinate give an empty rectangle.
  RankRect rect_to_rank(const OriginalRect& r) const;
  std::pair<coord_t, coord_t> restore_point(Point p) const;

 private:
  std::vector<coord_t> xs_;
  std::vector<coord_t> ys_;
};

struct RawPoint {
  coord_t x = 0;
  coord_t y = 0;
  /// Source line, used in error messages. 0 means "use the input index + 1".
  std::size_t line = 0;
};

struct ReducedPoints {
  PointSet points;
  RankSpaceMap map;
};

ReducedPoints reduce_to_rank(std::span<const RawPoint> raw);
ReducedPoints reduce_to_rank(std::span<const std::pair<coord_t, coord_t>> raw);

}  // namespace srr
