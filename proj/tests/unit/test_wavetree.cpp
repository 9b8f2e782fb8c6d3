#include "doctest.h"

#include "fixtures.hpp"

using namespace srr;
using namespace srr::testing;

namespace {

// S(v) by filtering the point set on v's y range.
std::vector<Point> filter_node(const RangeTree& t, const PointSet& ps, NodeRef v) {
  std::vector<Point> out;
  for (const Point& p : ps.points()) {
    if (p.y >= t.y_lo(v) && p.y <= t.y_hi(v)) out.push_back(p);
  }
  return out;
}

const std::vector<BallInheritanceConfig> kBalls = {
    BallInheritanceConfig::walk(), BallInheritanceConfig::skip(), BallInheritanceConfig::skip(2),
    BallInheritanceConfig::full()};

}  // namespace

TEST_CASE("P8 root bits and node sequences") {
  const auto ps = p8();
  const RangeTree t(ps, BallInheritanceConfig::walk());
  CHECK(t.n() == 8);
  CHECK(t.n_hat() == 8);
  CHECK(t.height() == 3);
  const BitVector& root = t.level_bits(0);
  std::string bits;
  for (std::size_t i = 1; i <= root.size(); ++i) bits += root.access(i) ? '1' : '0';
  CHECK(bits == "01010101");

  QueryStats st;
  const NodeRef vl = t.root().left();
  CHECK(t.node_size(vl) == 4);
  CHECK(t.resolve_point(vl, 1, st) == Point{1, 3});
  CHECK(t.resolve_point(vl, 2, st) == Point{3, 1});
  CHECK(t.resolve_point(vl, 3, st) == Point{5, 4});
  CHECK(t.resolve_point(vl, 4, st) == Point{7, 2});
  CHECK(t.resolve_point(t.root(), 5, st) == Point{5, 4});
  CHECK(t.resolve_point(NodeRef{3, 0}, 1, st) == Point{3, 1});
  CHECK_THROWS_AS(t.resolve_point(vl, 5, st), OutOfRange);
}

TEST_CASE("degenerate trees") {
  const RangeTree one(PointSet({1}), BallInheritanceConfig::skip());
  CHECK(one.n_hat() == 1);
  CHECK(one.height() == 0);
  CHECK(one.is_leaf(one.root()));

  const RangeTree three(PointSet({2, 3, 1}), BallInheritanceConfig::walk());
  CHECK(three.n_hat() == 4);
  CHECK(three.node_size(NodeRef{2, 3}) == 0);

  const RangeTree none(PointSet{}, BallInheritanceConfig::skip());
  CHECK(none.n() == 0);
  CHECK(none.node_size(none.root()) == 0);
}

TEST_CASE("lca_node") {
  const RangeTree t(p8(), BallInheritanceConfig::walk());
  CHECK(t.lca_node(3, 6) == t.root());
  const NodeRef v = t.lca_node(5, 6);
  CHECK(v.level == 2);
  CHECK(t.y_lo(v) == 5);
  CHECK(t.y_hi(v) == 6);
  const NodeRef leaf = t.lca_node(4, 4);
  CHECK(t.is_leaf(leaf));
  CHECK(t.y_lo(leaf) == 4);
  CHECK_THROWS_AS(t.lca_node(3, 9), OutOfRange);
  CHECK_THROWS_AS(t.lca_node(4, 3), OutOfRange);
}

TEST_CASE("noderange") {
  const RangeTree t(p8(), BallInheritanceConfig::walk());
  QueryStats st;
  CHECK(t.noderange(t.root(), 3, 6, st) == std::optional<PosRange>{{3, 6}});
  CHECK(t.noderange(t.root().left(), 3, 6, st) == std::optional<PosRange>{{2, 3}});
  CHECK_FALSE(t.noderange(NodeRef{3, 7}, 1, 5, st));
  CHECK(st.descent_rank_ops > 0);
  CHECK_THROWS_AS(t.noderange(t.root(), 0, 3, st), OutOfRange);
}

TEST_CASE("translate_edge on the P8 root") {
  const RangeTree t(p8(), BallInheritanceConfig::walk());
  CHECK(t.translate_edge(t.root(), 1, EdgeDirection::FromRightChild) == std::optional<std::size_t>{2});
  CHECK(t.translate_edge(t.root(), 4, EdgeDirection::FromLeftChild) == std::optional<std::size_t>{7});
  CHECK(t.translate_edge(t.root(), 7, EdgeDirection::ToLeftChild) == std::optional<std::size_t>{4});
  CHECK_FALSE(t.translate_edge(t.root(), 2, EdgeDirection::ToLeftChild));
}

TEST_CASE("ball inheritance config text form") {
  CHECK(BallInheritanceConfig::parse("WALK").mode == BallMode::Walk);
  CHECK(BallInheritanceConfig::parse("FULL").mode == BallMode::Full);
  const auto s = BallInheritanceConfig::parse("SKIP:3");
  CHECK(s.mode == BallMode::Skip);
  CHECK(s.stride == 3);
  CHECK(BallInheritanceConfig::parse("SKIP").stride == 0);
  CHECK(s.to_string() == "SKIP:3");
  CHECK_THROWS_AS(BallInheritanceConfig::parse("SKIP:0"), InvalidConfig);
  CHECK_THROWS_AS(BallInheritanceConfig::parse("FAST"), InvalidConfig);
  CHECK(BallInheritanceConfig::default_stride(20) == 4);
  CHECK(BallInheritanceConfig::default_stride(16) == 4);
  CHECK(BallInheritanceConfig::default_stride(1) == 1);
}

TEST_CASE("property: every node agrees with a filter oracle") {
  for (std::size_t n : {1, 2, 3, 5, 16, 31, 64, 100, 256}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto ps = random_permutation(n, seed);
      for (const auto& ball : kBalls) {
        const RangeTree t(ps, ball);
        bool ok = true;
        for (unsigned l = 0; l <= t.height(); ++l) {
          std::size_t level_total = 0;
          for (std::size_t k = 0; k < (std::size_t{1} << l); ++k) {
            const NodeRef v{l, k};
            const auto expect = filter_node(t, ps, v);
            ok = ok && t.node_size(v) == expect.size();
            level_total += expect.size();
            QueryStats st;
            for (std::size_t i = 1; i <= expect.size(); ++i) {
              ok = ok && t.resolve_point(v, i, st) == expect[i - 1];
            }
            ok = ok && st.point_resolutions == expect.size();
            if (!t.is_leaf(v)) {
              // Children partition S(v) and edges translate both ways.
              ok = ok && t.node_size(v.left()) + t.node_size(v.right()) == expect.size();
              for (std::size_t i = 1; i <= expect.size(); ++i) {
                const bool right = expect[i - 1].y > t.y_hi(v.left());
                const auto down = t.translate_edge(
                    v, i, right ? EdgeDirection::ToRightChild : EdgeDirection::ToLeftChild);
                ok = ok && down.has_value();
                if (!down) continue;
                const auto up = t.translate_edge(
                    v, *down, right ? EdgeDirection::FromRightChild : EdgeDirection::FromLeftChild);
                ok = ok && up == std::optional<std::size_t>{i};
              }
            }
            // noderange on a sample of x intervals.
            for (rank_t a = 1; a <= n; a += 1 + static_cast<rank_t>(n / 9)) {
              for (rank_t b = a; b <= n; b += 1 + static_cast<rank_t>(n / 7)) {
                std::size_t first = 0, last = 0;
                for (std::size_t i = 0; i < expect.size(); ++i) {
                  if (expect[i].x >= a && expect[i].x <= b) {
                    if (first == 0) first = i + 1;
                    last = i + 1;
                  }
                }
                const auto got = t.noderange(v, a, b, st);
                if (first == 0) {
                  ok = ok && !got;
                } else {
                  ok = ok && got == std::optional<PosRange>{{first, last}};
                }
              }
            }
          }
          ok = ok && level_total == n;
        }
        for (rank_t y = 1; y <= n; ++y) ok = ok && t.point_by_y(y).y == y && ps.at_x(t.point_by_y(y).x).y == y;
        CHECK_MESSAGE(ok, "n=" << n << " seed=" << seed << " ball=" << ball.to_string());
      }
    }
  }
}

TEST_CASE("skip strides bound the resolution walk") {
  const auto ps = random_permutation(1000, 4);
  const RangeTree walk(ps, BallInheritanceConfig::walk());
  const RangeTree full(ps, BallInheritanceConfig::full());
  const RangeTree skip(ps, BallInheritanceConfig::skip(3));
  for (unsigned l = 0; l < walk.height(); ++l) {
    const NodeRef v{l, 0};
    QueryStats sw, sf, ss;
    walk.resolve_point(v, 1, sw);
    full.resolve_point(v, 1, sf);
    skip.resolve_point(v, 1, ss);
    CHECK(sf.descent_rank_ops == 0);
    CHECK(ss.descent_rank_ops < 3);
    CHECK(sw.descent_rank_ops == (l == 0 ? 0u : walk.height() - l));
  }
  CHECK(walk.space().materialized_bits == 0);
  CHECK(full.space().materialized_bits > skip.space().materialized_bits);
}
