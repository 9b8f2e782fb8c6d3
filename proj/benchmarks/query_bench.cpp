#include <benchmark/benchmark.h>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <tuple>

#include "srr/index.hpp"

using namespace srr;

namespace {

PointSet permutation(std::size_t n) {
  std::vector<rank_t> y(n);
  std::iota(y.begin(), y.end(), rank_t{1});
  std::mt19937_64 rng(n);
  std::shuffle(y.begin(), y.end(), rng);
  return PointSet(std::move(y));
}

std::vector<RankRect> rects(std::size_t n, std::size_t count) {
  std::mt19937_64 rng(n + 1);
  std::uniform_int_distribution<rank_t> dist(1, static_cast<rank_t>(n));
  std::vector<RankRect> out;
  for (std::size_t i = 0; i < count; ++i) {
    rank_t a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    out.push_back({a, b, c, d, false});
  }
  return out;
}

enum Ball : int { kWalk, kSkip, kFull };

IndexConfig make_config(int ball, int pred, int sub_mode, int eps_percent = 50, long block = 0,
                        long sub = 0) {
  IndexConfig cfg;
  cfg.ball = ball == kWalk ? BallInheritanceConfig::walk()
             : ball == kFull ? BallInheritanceConfig::full()
                             : BallInheritanceConfig::skip();
  cfg.successor.pred_mode = pred ? PredMode::StoreY : PredMode::Probe;
  cfg.successor.subblock_mode = sub_mode ? SubblockMode::Table : SubblockMode::Scan;
  cfg.successor.epsilon = eps_percent / 100.0;
  if (block > 0) cfg.successor.block_size = static_cast<std::size_t>(block);
  if (sub > 0) cfg.successor.sub_block_size = static_cast<std::size_t>(sub);
  return cfg;
}

// Indexes are cached across benchmark runs with the same parameters.
const SrrIndex& cached_index(std::size_t n, const IndexConfig& cfg) {
  using Key = std::tuple<std::size_t, int, unsigned, int, int, int, std::size_t, std::size_t>;
  static std::map<Key, std::unique_ptr<SrrIndex>> cache;
  const Key key{n,
                static_cast<int>(cfg.ball.mode),
                cfg.ball.stride,
                static_cast<int>(cfg.successor.pred_mode),
                static_cast<int>(cfg.successor.subblock_mode),
                static_cast<int>(cfg.successor.epsilon * 100),
                cfg.successor.block_size.value_or(0),
                cfg.successor.sub_block_size.value_or(0)};
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<SrrIndex>(permutation(n), cfg);
  return *slot;
}

void report_counters(benchmark::State& state, const QueryStats& total, std::size_t queries) {
  const double q = static_cast<double>(std::max<std::size_t>(queries, 1));
  state.counters["rmq_probes"] = static_cast<double>(total.rmq_probes) / q;
  state.counters["point_res"] = static_cast<double>(total.point_resolutions) / q;
  state.counters["descent_ops"] = static_cast<double>(total.descent_rank_ops) / q;
  state.counters["block_q"] = static_cast<double>(total.block_queries) / q;
  state.counters["pred_probes"] = static_cast<double>(total.predecessor_probes) / q;
  state.counters["emptiness"] = static_cast<double>(total.emptiness_queries) / q;
}

template <typename Query>
void run_queries(benchmark::State& state, const SrrIndex& ix, Query&& query) {
  const auto qs = rects(ix.size(), 1024);
  QueryStats total;
  std::size_t i = 0;
  std::size_t done = 0;
  for (auto _ : state) {
    QueryStats st;
    benchmark::DoNotOptimize(query(ix, qs[i], st));
    total += st;
    i = (i + 1) % qs.size();
    ++done;
  }
  report_counters(state, total, done);
  state.SetItemsProcessed(static_cast<std::int64_t>(done));
}

// Args: lg n, ball mode, pred mode, sub-block mode.
void BM_Leftmost(benchmark::State& state) {
  const auto cfg = make_config(static_cast<int>(state.range(1)), static_cast<int>(state.range(2)),
                               static_cast<int>(state.range(3)));
  const auto& ix = cached_index(std::size_t{1} << state.range(0), cfg);
  run_queries(state, ix, [](const SrrIndex& x, const RankRect& q, QueryStats& st) { return x.leftmost(q, st); });
}

void BM_LowestBaseline(benchmark::State& state) {
  const auto cfg = make_config(static_cast<int>(state.range(1)), 0, 0);
  const auto& ix = cached_index(std::size_t{1} << state.range(0), cfg);
  run_queries(state, ix, [](const SrrIndex& x, const RankRect& q, QueryStats& st) { return x.lowest(q, st); });
}

// Args: lg n, k.
void BM_SortedPrefix(benchmark::State& state) {
  const auto& ix = cached_index(std::size_t{1} << state.range(0), IndexConfig{});
  const auto k = static_cast<std::size_t>(state.range(1));
  run_queries(state, ix, [k](const SrrIndex& x, const RankRect& q, QueryStats& st) {
    return x.report_sorted(q, st, k).size();
  });
}

void BM_ReportUnsorted(benchmark::State& state) {
  const auto& ix = cached_index(std::size_t{1} << state.range(0), IndexConfig{});
  const auto k = static_cast<std::size_t>(state.range(1));
  run_queries(state, ix, [k](const SrrIndex& x, const RankRect& q, QueryStats& st) {
    return x.report(q, st, k).size();
  });
}

// Args: lg n, epsilon in percent.
void BM_EpsilonSweep(benchmark::State& state) {
  const auto cfg = make_config(kSkip, 0, 1, static_cast<int>(state.range(1)));
  const auto& ix = cached_index(std::size_t{1} << state.range(0), cfg);
  state.counters["sub_block"] = static_cast<double>(ix.successor_config().sub_block_size);
  run_queries(state, ix, [](const SrrIndex& x, const RankRect& q, QueryStats& st) { return x.leftmost(q, st); });
}

// Args: lg n, block size, sub-block size.
void BM_BlockSizes(benchmark::State& state) {
  const auto cfg = make_config(kSkip, 0, 1, 50, static_cast<long>(state.range(1)),
                               static_cast<long>(state.range(2)));
  const auto& ix = cached_index(std::size_t{1} << state.range(0), cfg);
  state.counters["words_ratio"] = ix.space().words_ratio();
  run_queries(state, ix, [](const SrrIndex& x, const RankRect& q, QueryStats& st) { return x.leftmost(q, st); });
}

void BM_Build(benchmark::State& state) {
  const auto ps = permutation(std::size_t{1} << state.range(0));
  for (auto _ : state) {
    SrrIndex ix(ps, IndexConfig{});
    benchmark::DoNotOptimize(ix.size());
    state.counters["words_ratio"] = ix.space().words_ratio();
  }
}

}  // namespace

BENCHMARK(BM_Leftmost)
    ->ArgNames({"lgn", "ball", "store_y", "table"})
    ->ArgsProduct({{12, 16}, {kWalk, kSkip, kFull}, {0, 1}, {0, 1}});
BENCHMARK(BM_LowestBaseline)->ArgNames({"lgn", "ball"})->ArgsProduct({{12, 16}, {kWalk, kSkip, kFull}});
BENCHMARK(BM_SortedPrefix)->ArgNames({"lgn", "k"})->ArgsProduct({{16}, {1, 10, 100}});
BENCHMARK(BM_ReportUnsorted)->ArgNames({"lgn", "k"})->ArgsProduct({{16}, {1, 10, 100}});
BENCHMARK(BM_EpsilonSweep)->ArgNames({"lgn", "eps_pct"})->ArgsProduct({{16}, {25, 50, 75, 90}});
BENCHMARK(BM_BlockSizes)
    ->ArgNames({"lgn", "B", "s"})
    ->Args({16, 64, 4})
    ->Args({16, 256, 4})
    ->Args({16, 1024, 8})
    ->Args({16, 4096, 4});
BENCHMARK(BM_Build)->ArgNames({"lgn"})->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
