#include "doctest.h"

#include <algorithm>
#include <bit>
#include <random>

#include "fixtures.hpp"

using namespace srr;
using namespace srr::testing;

namespace {

unsigned ceil_lg(std::size_t m) { return m <= 1 ? 0 : static_cast<unsigned>(std::bit_width(m - 1)); }

struct Built {
  PointSet ps;
  RangeTree tree;
  NodeRmqBundle bundle;
  NodeAux aux;
  Built(PointSet p, const IndexConfig& cfg)
      : ps(std::move(p)),
        tree(ps, cfg.ball),
        bundle(ps, tree.height()),
        aux(ps, tree.height(), resolve_config(cfg.successor, tree.n_hat(), ps.size())) {}
};

}  // namespace

TEST_CASE("resolve_config defaults and overrides") {
  const auto d8 = resolve_config(SuccessorConfig{}, 8, 8);
  CHECK(d8.block_size == 27);
  CHECK(d8.sub_block_size == 2);

  const auto d16 = resolve_config(SuccessorConfig{}, 1 << 16, 1 << 16);
  CHECK(d16.block_size == 4096);
  CHECK(d16.sub_block_size == 4);

  SuccessorConfig bad;
  bad.block_size = 2;
  bad.sub_block_size = 3;
  CHECK_THROWS_AS(resolve_config(bad, 8, 8), InvalidConfig);
  bad.block_size = 0;
  bad.sub_block_size = std::nullopt;
  CHECK_THROWS_AS(resolve_config(bad, 8, 8), InvalidConfig);
  SuccessorConfig eps;
  eps.epsilon = 1.0;
  CHECK_THROWS_AS(resolve_config(eps, 8, 8), InvalidConfig);

  SuccessorConfig s3;
  s3.sub_block_size = 3;
  CHECK(resolve_config(s3, 2, 2).block_size == 3);
}

TEST_CASE("table mode falls back to scan when the key is too wide") {
  std::vector<std::string> warnings;
  const auto big = resolve_config(SuccessorConfig{}, 1 << 20, 1 << 20, &warnings);
  CHECK(big.subblock_mode == SubblockMode::Scan);
  CHECK(warnings.size() == 1);

  SuccessorConfig small;
  small.block_size = 4;
  small.sub_block_size = 2;
  const auto ok = resolve_config(small, 1 << 20, 1 << 20);
  CHECK(ok.subblock_mode == SubblockMode::Table);
  CHECK(ok.table_key_bits <= kMaxTableKeyBits);
}

TEST_CASE("NodeAux layout on P8") {
  const Built b(p8(), small_blocks(4, 2));
  const NodeRef vl = b.tree.root().left();
  CHECK(b.aux.block_count(b.tree, vl) == 1);
  std::vector<std::size_t> ranks;
  for (std::size_t p = 1; p <= 4; ++p) ranks.push_back(b.aux.local_rank(b.tree, vl, 0, p));
  CHECK(ranks == std::vector<std::size_t>{3, 1, 4, 2});
  CHECK(b.aux.subblock_count(b.tree, vl, 0) == 2);
  CHECK(b.aux.subblock_min_rank(b.tree, vl, 0, 0) == 1);
  CHECK(b.aux.subblock_min_rank(b.tree, vl, 0, 1) == 2);
  CHECK(b.aux.block_count(b.tree, b.tree.root()) == 2);

  const Built d(p8(), IndexConfig{});
  for (unsigned l = 0; l <= d.tree.height(); ++l)
    for (std::size_t k = 0; k < (std::size_t{1} << l); ++k) {
      const NodeRef v{l, k};
      CHECK(d.aux.block_count(d.tree, v) == (d.tree.node_size(v) > 0 ? 1u : 0u));
    }

  const Built three(PointSet({2, 3, 1}), small_blocks(2, 2));
  CHECK(three.aux.block_count(three.tree, NodeRef{2, 3}) == 0);
}

TEST_CASE("pred_rank_in_block") {
  for (PredMode pm : {PredMode::Probe, PredMode::StoreY}) {
    auto cfg = small_blocks(4, 2);
    cfg.successor.pred_mode = pm;
    const Built b(p8(), cfg);
    QueryStats st;
    CHECK(pred_rank_in_block(b.tree, b.aux, b.tree.root(), 0, 5, st) == 2);
    CHECK(pred_rank_in_block(b.tree, b.aux, b.tree.root(), 0, 8, st) == 4);
    CHECK(pred_rank_in_block(b.tree, b.aux, b.tree.root(), 0, 0, st) == 0);
    CHECK(st.predecessor_probes <= ceil_lg(4) + 1);
  }
}

TEST_CASE("leftmost_in_block") {
  for (SubblockMode sm : {SubblockMode::Scan, SubblockMode::Table}) {
    auto cfg = small_blocks(4, 2);
    cfg.successor.subblock_mode = sm;
    const Built b(p8(), cfg);
    const NodeRef vl = b.tree.root().left();
    QueryStats st;
    CHECK(leftmost_in_block(b.tree, b.aux, vl, 0, 2, 4, 2, Threshold::LE, st) ==
          std::optional<std::size_t>{2});
    CHECK_FALSE(leftmost_in_block(b.tree, b.aux, vl, 0, 3, 3, 1, Threshold::LE, st));
    CHECK(leftmost_in_block(b.tree, b.aux, vl, 0, 1, 4, 4, Threshold::LE, st) ==
          std::optional<std::size_t>{1});
    CHECK(leftmost_in_block(b.tree, b.aux, vl, 0, 2, 4, 4, Threshold::GE, st) ==
          std::optional<std::size_t>{3});
    CHECK_THROWS_AS(leftmost_in_block(b.tree, b.aux, vl, 0, 3, 5, 1, Threshold::LE, st), OutOfRange);
    CHECK(st.subblock_scans > 0);
  }
}

TEST_CASE("leftmost_halfplane_in_node") {
  const Built b(p8(), small_blocks(4, 2));
  QueryStats st;
  const auto h1 = leftmost_halfplane_in_node(b.tree, b.aux, b.tree.root().left(), 3, 7, 2,
                                             HalfPlane::Below, st);
  REQUIRE(h1);
  CHECK(h1->point == Point{3, 1});
  const auto h2 = leftmost_halfplane_in_node(b.tree, b.aux, b.tree.root().right(), 1, 8, 5,
                                             HalfPlane::Below, st);
  REQUIRE(h2);
  CHECK(h2->point == Point{8, 5});
  CHECK_FALSE(leftmost_halfplane_in_node(b.tree, b.aux, b.tree.root().left(), 1, 8, 9,
                                         HalfPlane::Above, st));
}

TEST_CASE("leftmost_in_rect and lowest_in_rect_baseline on P8") {
  for (const auto& cfg : {IndexConfig{}, small_blocks(4, 2), small_blocks(2, 2)}) {
    const Built b(p8(), cfg);
    QueryStats st;
    CHECK(leftmost_in_rect(b.tree, b.aux, rect(2, 6, 2, 5), st) == OptPoint{Point{5, 4}});
    CHECK(leftmost_in_rect(b.tree, b.aux, rect(1, 8, 1, 8), st) == OptPoint{Point{1, 3}});
    CHECK_FALSE(leftmost_in_rect(b.tree, b.aux, rect(2, 3, 4, 6), st));
    CHECK(lowest_in_rect_baseline(b.tree, b.bundle, rect(2, 6, 2, 5), st) == OptPoint{Point{5, 4}});
    CHECK(lowest_in_rect_baseline(b.tree, b.bundle, rect(1, 8, 5, 8), st) == OptPoint{Point{8, 5}});
    CHECK_FALSE(lowest_in_rect_baseline(b.tree, b.bundle, rect(2, 3, 4, 6), st));
    CHECK_FALSE(leftmost_in_rect(b.tree, b.aux, RankRect::make_empty(), st));
    CHECK_THROWS_AS(leftmost_in_rect(b.tree, b.aux, rect(0, 3, 1, 1), st), OutOfRange);
  }
}

TEST_CASE("property: NodeAux summaries match their definitions") {
  for (std::size_t n : {7, 40, 130}) {
    for (auto [B, s] : {std::pair<std::size_t, std::size_t>{4, 2}, {5, 3}, {8, 8}}) {
      const Built b(random_permutation(n, n + B), small_blocks(B, s));
      bool ok = true;
      for (unsigned l = 0; l <= b.tree.height(); ++l) {
        for (std::size_t k = 0; k < (std::size_t{1} << l); ++k) {
          const NodeRef v{l, k};
          QueryStats st;
          for (std::size_t g = 0; g < b.aux.block_count(b.tree, v); ++g) {
            const std::size_t len = b.aux.block_length(b.tree, v, g);
            std::vector<rank_t> ys;
            for (std::size_t p = 1; p <= len; ++p) ys.push_back(b.tree.resolve_point(v, g * B + p, st).y);
            std::vector<rank_t> sorted = ys;
            std::sort(sorted.begin(), sorted.end());
            ok = ok && b.aux.block_min_y(b.tree, v, g) == sorted.front();
            ok = ok && b.aux.block_max_y(b.tree, v, g) == sorted.back();
            for (std::size_t p = 1; p <= len; ++p) {
              const std::size_t r = b.aux.local_rank(b.tree, v, g, p);
              ok = ok && sorted[r - 1] == ys[p - 1];
              ok = ok && b.aux.position_of_rank(b.tree, v, g, r) == p;
            }
            for (std::size_t h = 0; h < b.aux.subblock_count(b.tree, v, g); ++h) {
              std::size_t lo = len, hi = 1;
              for (std::size_t p = h * s + 1; p <= std::min(len, (h + 1) * s); ++p) {
                lo = std::min(lo, b.aux.local_rank(b.tree, v, g, p));
                hi = std::max(hi, b.aux.local_rank(b.tree, v, g, p));
              }
              ok = ok && b.aux.subblock_min_rank(b.tree, v, g, h) == lo;
              ok = ok && b.aux.subblock_max_rank(b.tree, v, g, h) == hi;
            }
          }
        }
      }
      CHECK_MESSAGE(ok, "n=" << n << " B=" << B << " s=" << s);
    }
  }
}

TEST_CASE("property: successor answers and probe budgets on all rectangles") {
  const std::vector<IndexConfig> cfgs = {IndexConfig{}, small_blocks(4, 2), small_blocks(2, 2),
                                         small_blocks(8, 3)};
  for (const auto& cfg : cfgs) {
    for (std::size_t n : {1, 2, 5, 9, 16, 27}) {
      const Built b(random_permutation(n, 100 + n), cfg);
      const std::size_t B = b.aux.config().block_size;
      bool ok = true;
      for_each_rect(n, [&](RankRect q) {
        QueryStats st;
        SuccessorTrace tr;
        ok = ok && leftmost_in_rect(b.tree, b.aux, q, st, &tr) == oracle::leftmost(b.ps, q);
        for (const HalfplaneTrace* h : {&tr.left, &tr.right}) {
          ok = ok && h->blocks.size() <= 3;
          ok = ok && h->d_probes <= ceil_lg(h->block_count) + 1;
          for (const auto& bq : h->blocks) {
            ok = ok && bq.predecessor_probes <= ceil_lg(B) + 1;
            ok = ok && bq.boundary_subblocks <= 2;
            ok = ok && bq.e_probes <= ceil_lg(bq.subblock_count) + 1;
          }
        }
        QueryStats lst;
        ok = ok && lowest_in_rect_baseline(b.tree, b.bundle, q, lst) == oracle::lowest(b.ps, q);
        ok = ok && lst.emptiness_queries <= ceil_lg(b.tree.height() + 1) + 2;
      });
      CHECK_MESSAGE(ok, describe(cfg) << " n=" << n);
    }
  }
}

TEST_CASE("property: emptiness along the search path is monotone") {
  const Built b(random_permutation(64, 3), IndexConfig{});
  bool ok = true;
  std::mt19937_64 rng(4);
  for (int k = 0; k < 3000; ++k) {
    const RankRect q = random_rect(64, rng);
    const NodeRef v = b.tree.lca_node(q.c, q.d);
    bool prev_nonempty = true;
    std::optional<unsigned> deepest;
    for (unsigned l = v.level + 1; l <= b.tree.height(); ++l) {
      const NodeRef u{l, static_cast<std::size_t>(q.c - 1) >> (b.tree.height() - l)};
      QueryStats st;
      const bool nonempty = !emptiness(b.tree, b.bundle, u, q.a, q.b, q.c, HalfPlane::Above, st);
      ok = ok && (prev_nonempty || !nonempty);
      if (nonempty) deepest = l;
      prev_nonempty = nonempty;
    }
    // When the deepest nonempty path node is internal, the path continues left.
    if (deepest && *deepest < b.tree.height()) {
      ok = ok && ((((q.c - 1) >> (b.tree.height() - *deepest - 1)) & 1u) == 0);
    }
  }
  CHECK(ok);
}

TEST_CASE("property: random rectangles at larger n") {
  for (std::size_t n : {1000, 5000}) {
    for (const auto& cfg : {IndexConfig{}, small_blocks(16, 4), small_blocks(64, 8)}) {
      const Built b(random_permutation(n, n), cfg);
      std::mt19937_64 rng(n);
      bool ok = true;
      for (int k = 0; k < 3000; ++k) {
        const RankRect q = random_rect(n, rng);
        QueryStats st;
        ok = ok && leftmost_in_rect(b.tree, b.aux, q, st) == oracle::leftmost(b.ps, q);
        ok = ok && lowest_in_rect_baseline(b.tree, b.bundle, q, st) == oracle::lowest(b.ps, q);
      }
      CHECK_MESSAGE(ok, describe(cfg) << " n=" << n);
    }
  }
}
