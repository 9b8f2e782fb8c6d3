#include "srr/oracle.hpp"

namespace srr::oracle {

OptPoint leftmost(const PointSet& ps, const RankRect& q) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (q.contains(ps[i])) return ps[i];
  }
  return std::nullopt;
}

OptPoint lowest(const PointSet& ps, const RankRect& q) {
  OptPoint best;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Point p = ps[i];
    if (q.contains(p) && (!best || p.y < best->y)) best = p;
  }
  return best;
}

std::vector<Point> report_sorted(const PointSet& ps, const RankRect& q, std::size_t k) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < ps.size() && out.size() < k; ++i) {
    if (q.contains(ps[i])) out.push_back(ps[i]);
  }
  return out;
}

}  // namespace srr::oracle
