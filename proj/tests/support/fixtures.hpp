#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "srr/index.hpp"

namespace srr::testing {

/// The eight-point example grid used throughout the unit tests.
inline PointSet p8() { return PointSet({3, 7, 1, 6, 4, 8, 2, 5}); }

inline RankRect rect(rank_t a, rank_t b, rank_t c, rank_t d) { return RankRect{a, b, c, d, false}; }

inline PointSet random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<rank_t> y(n);
  std::iota(y.begin(), y.end(), rank_t{1});
  std::mt19937_64 rng(seed);
  std::shuffle(y.begin(), y.end(), rng);
  return PointSet(std::move(y));
}

inline RankRect random_rect(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<rank_t> dist(1, static_cast<rank_t>(n));
  rank_t a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  return rect(a, b, c, d);
}

/// Calls fn on every rectangle 1 <= a <= b <= n, 1 <= c <= d <= n.
template <typename Fn>
void for_each_rect(std::size_t n, Fn&& fn) {
  for (rank_t a = 1; a <= n; ++a)
    for (rank_t b = a; b <= n; ++b)
      for (rank_t c = 1; c <= n; ++c)
        for (rank_t d = c; d <= n; ++d) fn(rect(a, b, c, d));
}

inline IndexConfig small_blocks(std::size_t B = 4, std::size_t s = 2) {
  IndexConfig cfg;
  cfg.successor.block_size = B;
  cfg.successor.sub_block_size = s;
  return cfg;
}

/// Every configuration of the cross product used for config invariance.
inline std::vector<IndexConfig> config_grid() {
  std::vector<IndexConfig> out;
  const std::vector<std::optional<std::size_t>> blocks = {2, 4, 8, std::nullopt};
  const std::vector<std::size_t> subs = {2, 3};
  const std::vector<BallInheritanceConfig> balls = {BallInheritanceConfig::walk(),
                                                    BallInheritanceConfig::skip(),
                                                    BallInheritanceConfig::full()};
  for (auto B : blocks)
    for (auto s : subs)
      for (auto sm : {SubblockMode::Scan, SubblockMode::Table})
        for (auto pm : {PredMode::Probe, PredMode::StoreY})
          for (const auto& ball : balls) {
            IndexConfig cfg;
            cfg.ball = ball;
            cfg.successor.block_size = B;
            // s must not exceed B; a block of 2 takes sub-blocks of at most 2.
            cfg.successor.sub_block_size = B ? std::min(*B, s) : s;
            cfg.successor.subblock_mode = sm;
            cfg.successor.pred_mode = pm;
            out.push_back(cfg);
          }
  return out;
}

inline std::string describe(const IndexConfig& cfg) {
  std::string s = "B=" + (cfg.successor.block_size ? std::to_string(*cfg.successor.block_size) : "default");
  s += " s=" + (cfg.successor.sub_block_size ? std::to_string(*cfg.successor.sub_block_size) : "default");
  s += cfg.successor.subblock_mode == SubblockMode::Scan ? " scan" : " table";
  s += cfg.successor.pred_mode == PredMode::Probe ? " probe" : " store-y";
  s += " " + cfg.ball.to_string();
  return s;
}

inline std::vector<Point> sorted_by_x(std::vector<Point> v) {
  std::sort(v.begin(), v.end(), [](Point p, Point q) { return p.x < q.x; });
  return v;
}

}  // namespace srr::testing

namespace srr {

inline std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << '(' << p.x << ',' << p.y << ')';
}

inline std::ostream& operator<<(std::ostream& os, const OptPoint& p) {
  if (!p) return os << "none";
  return os << *p;
}

}  // namespace srr
