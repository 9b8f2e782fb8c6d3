#include "srr/rank_space.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace srr {

namespace {

std::string duplicate_message(char axis, coord_t value, std::size_t first, std::size_t second) {
  return "DuplicateCoordinate(" + std::string(1, axis) + ", " + std::to_string(value) +
         ", line " + std::to_string(first) + ", line " + std::to_string(second) + ")";
}

// Sorts indices by one coordinate and assigns 1-based ranks, rejecting ties.
std::vector<rank_t> assign_ranks(std::span<const RawPoint> raw, char axis,
                                 std::vector<coord_t>& sorted_out) {
  auto key = [&](std::size_t i) { return axis == 'x' ? raw[i].x : raw[i].y; };
  auto line = [&](std::size_t i) { return raw[i].line != 0 ? raw[i].line : i + 1; };

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return key(l) < key(r); });

  std::vector<rank_t> ranks(raw.size());
  sorted_out.clear();
  sorted_out.reserve(raw.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && key(order[k]) == key(order[k - 1])) {
      auto first = std::min(line(order[k - 1]), line(order[k]));
      auto second = std::max(line(order[k - 1]), line(order[k]));
      throw DuplicateCoordinate(axis, key(order[k]), first, second);
    }
    ranks[order[k]] = static_cast<rank_t>(k + 1);
    sorted_out.push_back(key(order[k]));
  }
  return ranks;
}

}  // namespace

DuplicateCoordinate::DuplicateCoordinate(char axis, coord_t value, std::size_t first_line,
                                         std::size_t second_line)
    : std::invalid_argument(duplicate_message(axis, value, first_line, second_line)),
      axis_(axis),
      value_(value),
      first_line_(first_line),
      second_line_(second_line) {}

PointSet::PointSet(std::vector<rank_t> y_of_x) : y_of_x_(std::move(y_of_x)) {
  const std::size_t n = y_of_x_.size();
  std::vector<std::size_t> seen(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    rank_t y = y_of_x_[i];
    if (y < 1 || y > n) {
      throw OutOfRange("PointSet: y rank " + std::to_string(y) + " outside [1.." +
                       std::to_string(n) + "]");
    }
    if (seen[y] != 0) throw DuplicateCoordinate('y', y, seen[y], i + 1);
    seen[y] = i + 1;
  }
}

PointSet PointSet::from_points(std::span<const Point> points) {
  const std::size_t n = points.size();
  std::vector<rank_t> y_of_x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = points[i];
    if (p.x < 1 || p.x > n) {
      throw OutOfRange("PointSet: x rank " + std::to_string(p.x) + " outside [1.." +
                       std::to_string(n) + "]");
    }
    if (y_of_x[p.x - 1] != 0) throw DuplicateCoordinate('x', p.x, 0, i + 1);
    y_of_x[p.x - 1] = p.y;
  }
  return PointSet(std::move(y_of_x));
}

Point PointSet::at_x(rank_t x) const {
  if (x < 1 || x > size()) throw OutOfRange("PointSet::at_x: rank out of range");
  return {x, y_of_x_[x - 1]};
}

std::vector<Point> PointSet::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i]);
  return out;
}

RankSpaceMap::RankSpaceMap(std::vector<coord_t> xs_sorted, std::vector<coord_t> ys_sorted)
    : xs_(std::move(xs_sorted)), ys_(std::move(ys_sorted)) {
  if (xs_.size() != ys_.size()) throw FormatError("RankSpaceMap: axis lengths differ");
  auto strictly_increasing = [](const std::vector<coord_t>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!strictly_increasing(xs_) || !strictly_increasing(ys_)) {
    throw FormatError("RankSpaceMap: coordinates must be strictly increasing");
  }
}

namespace {

// [lo..hi] in original space -> [first..last] 1-based ranks, first > last if empty.
std::pair<std::size_t, std::size_t> interval_to_rank(const std::vector<coord_t>& sorted,
                                                     coord_t lo, coord_t hi) {
  auto first = std::lower_bound(sorted.begin(), sorted.end(), lo) - sorted.begin();
  auto last = std::upper_bound(sorted.begin(), sorted.end(), hi) - sorted.begin();
  return {static_cast<std::size_t>(first) + 1, static_cast<std::size_t>(last)};
}

}  // namespace

RankRect RankSpaceMap::rect_to_rank(const OriginalRect& r) const {
  if (r.a > r.b || r.c > r.d) return RankRect::make_empty();
  auto [a, b] = interval_to_rank(xs_, r.a, r.b);
  auto [c, d] = interval_to_rank(ys_, r.c, r.d);
  if (a > b || c > d) return RankRect::make_empty();
  return RankRect{static_cast<rank_t>(a), static_cast<rank_t>(b), static_cast<rank_t>(c),
                  static_cast<rank_t>(d), false};
}

std::pair<coord_t, coord_t> RankSpaceMap::restore_point(Point p) const {
  if (p.x < 1 || p.x > size() || p.y < 1 || p.y > size()) {
    throw OutOfRange("restore_point: rank (" + std::to_string(p.x) + "," +
                     std::to_string(p.y) + ") outside [1.." + std::to_string(size()) + "]");
  }
  return {xs_[p.x - 1], ys_[p.y - 1]};
}

ReducedPoints reduce_to_rank(std::span<const RawPoint> raw) {
  std::vector<coord_t> xs;
  std::vector<coord_t> ys;
  auto xr = assign_ranks(raw, 'x', xs);
  auto yr = assign_ranks(raw, 'y', ys);
  std::vector<rank_t> y_of_x(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) y_of_x[xr[i] - 1] = yr[i];
  return {PointSet(std::move(y_of_x)), RankSpaceMap(std::move(xs), std::move(ys))};
}

ReducedPoints reduce_to_rank(std::span<const std::pair<coord_t, coord_t>> raw) {
  std::vector<RawPoint> pts;
  pts.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) pts.push_back({raw[i].first, raw[i].second, i + 1});
  return reduce_to_rank(std::span<const RawPoint>(pts));
}

}  // namespace srr
