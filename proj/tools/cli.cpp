#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "srr/index.hpp"
#include "srr/text_io.hpp"

namespace srr::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kRectHelp =
    "Rectangles are given in original coordinates, one per line as 'a b c d' for\n"
    "[a..b] x [c..d], bounds inclusive; a > b or c > d is an error. Each bound is\n"
    "snapped to the stored coordinates: a and c to the smallest stored value >= the\n"
    "bound, b and d to the largest stored value <= the bound. A rectangle holding\n"
    "no stored x or no stored y answers 'none' (or an empty line).";

struct BuildOptions {
  std::string points;
  std::string out;
  std::optional<std::size_t> block_size;
  std::optional<std::size_t> sub_block;
  std::string ball = "SKIP";
  std::string subblock_mode = "table";
  std::string pred_mode = "probe";
};

struct QueryOptions {
  std::string index;
  std::string rects;
  std::string mode;
  std::optional<std::size_t> limit;
};

struct BenchOptions {
  std::string index;
  std::string rects;
  std::size_t repeat = 1;
  std::string out;
  std::vector<std::string> modes = {"leftmost", "lowest", "report", "report-sorted"};
  std::optional<std::size_t> limit;
};

const char* to_string(SubblockMode m) { return m == SubblockMode::Table ? "table" : "scan"; }
const char* to_string(PredMode m) { return m == PredMode::StoreY ? "store-y" : "probe"; }

IndexConfig make_config(const BuildOptions& o) {
  IndexConfig cfg;
  cfg.ball = BallInheritanceConfig::parse(o.ball);
  cfg.successor.block_size = o.block_size;
  cfg.successor.sub_block_size = o.sub_block;
  cfg.successor.subblock_mode = o.subblock_mode == "scan" ? SubblockMode::Scan : SubblockMode::Table;
  cfg.successor.pred_mode = o.pred_mode == "store-y" ? PredMode::StoreY : PredMode::Probe;
  return cfg;
}

void print_summary(const SrrIndex& ix, std::ostream& out) {
  const auto sp = ix.space();
  const auto& sc = ix.successor_config();
  out << "n=" << sp.n << " n_hat=" << sp.n_hat << " height=" << ix.tree().height() << '\n';
  out << "ball=" << ix.ball_config().to_string() << " stride=" << ix.tree().stride()
      << " block_size=" << sc.block_size << " sub_block=" << sc.sub_block_size
      << " subblock_mode=" << to_string(sc.subblock_mode) << " pred_mode=" << to_string(sc.pred_mode)
      << '\n';
  out << "bits rank_map=" << sp.rank_map_bits << " tree_levels=" << sp.tree.level_bits
      << " materialized=" << sp.tree.materialized_bits << " point_table=" << sp.tree.point_table_bits
      << " rmq=" << sp.rmq_bundle_bits << " block_summary=" << sp.aux.block_summary_bits
      << " local_rank=" << sp.aux.local_rank_bits << " subblock_summary=" << sp.aux.subblock_summary_bits
      << " stored_y=" << sp.aux.stored_y_bits << " table=" << sp.aux.table_bits << '\n';
  const auto total = sp.total_bits();
  out << "total_bits=" << total << " total_words=" << (total + 63) / 64 << '\n';
  out << "ratio=" << sp.words_ratio() << " (total_bits / (n * " << sp.lglg() << " * 64))\n";
}

int cmd_build(const BuildOptions& o, std::ostream& out, std::ostream& err) {
  const IndexConfig cfg = make_config(o);
  const auto raw = read_points_file(o.points);
  const SrrIndex ix(reduce_to_rank(raw), cfg);
  for (const auto& w : ix.warnings()) err << "warning: " << w << '\n';
  ix.save_file(o.out);
  print_summary(ix, out);
  return 0;
}

using Restored = std::pair<coord_t, coord_t>;

std::vector<Restored> restore_all(const SrrIndex& ix, const std::vector<Point>& pts) {
  std::vector<Restored> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back(ix.restore(p));
  return out;
}

std::optional<Restored> restore_opt(const SrrIndex& ix, const OptPoint& p) {
  if (!p) return std::nullopt;
  return ix.restore(*p);
}

int cmd_query(const QueryOptions& o, std::ostream& out) {
  const SrrIndex ix = SrrIndex::load_file(o.index);
  const auto rects = read_rects_file(o.rects);
  const std::size_t limit = o.limit.value_or(kNoLimit);
  const bool oracle_mode = o.mode.rfind("oracle-", 0) == 0;
  const PointSet ps = oracle_mode ? ix.point_set() : PointSet{};

  std::string buf;
  for (const auto& r : rects) {
    const RankRect q = ix.to_rank(r.rect);
    QueryStats st;
    if (o.mode == "leftmost") {
      buf += format_point(restore_opt(ix, ix.leftmost(q, st)));
    } else if (o.mode == "lowest") {
      buf += format_point(restore_opt(ix, ix.lowest(q, st)));
    } else if (o.mode == "report") {
      buf += format_points(restore_all(ix, ix.report(q, st, limit)));
    } else if (o.mode == "report-sorted") {
      buf += format_points(restore_all(ix, ix.report_sorted(q, st, limit)));
    } else if (o.mode == "oracle-leftmost") {
      buf += format_point(restore_opt(ix, oracle::leftmost(ps, q)));
    } else if (o.mode == "oracle-lowest") {
      buf += format_point(restore_opt(ix, oracle::lowest(ps, q)));
    } else {
      buf += format_points(restore_all(ix, oracle::report_sorted(ps, q, limit)));
    }
    buf += '\n';
  }
  out << buf;
  return 0;
}

double percentile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const double rank = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = static_cast<std::size_t>(std::ceil(rank));
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - static_cast<double>(lo));
}

Json counter_summary(const std::vector<QueryStats>& all) {
  struct Field {
    const char* name;
    std::uint64_t QueryStats::*member;
  };
  static constexpr Field kFields[] = {
      {"emptiness_queries", &QueryStats::emptiness_queries},
      {"block_queries", &QueryStats::block_queries},
      {"subblock_scans", &QueryStats::subblock_scans},
      {"predecessor_probes", &QueryStats::predecessor_probes},
      {"rmq_probes", &QueryStats::rmq_probes},
      {"point_resolutions", &QueryStats::point_resolutions},
      {"descent_rank_ops", &QueryStats::descent_rank_ops},
      {"successor_calls", &QueryStats::successor_calls},
  };
  Json j = Json::object();
  for (const auto& f : kFields) {
    std::uint64_t max = 0;
    double sum = 0;
    for (const auto& s : all) {
      max = std::max(max, s.*f.member);
      sum += static_cast<double>(s.*f.member);
    }
    j[f.name] = {{"mean", all.empty() ? 0.0 : sum / static_cast<double>(all.size())}, {"max", max}};
  }
  return j;
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  if (o.repeat < 1) {
    err << "error: --repeat must be at least 1\n";
    return 1;
  }
  const SrrIndex ix = SrrIndex::load_file(o.index);
  const auto rects = read_rects_file(o.rects);
  std::vector<RankRect> queries;
  queries.reserve(rects.size());
  for (const auto& r : rects) queries.push_back(ix.to_rank(r.rect));
  const std::size_t limit = o.limit.value_or(kNoLimit);

  using Runner = std::function<std::size_t(const RankRect&, QueryStats&)>;
  const std::vector<std::pair<std::string, Runner>> runners = {
      {"leftmost", [&](const RankRect& q, QueryStats& st) { return ix.leftmost(q, st) ? 1u : 0u; }},
      {"lowest", [&](const RankRect& q, QueryStats& st) { return ix.lowest(q, st) ? 1u : 0u; }},
      {"report", [&](const RankRect& q, QueryStats& st) { return ix.report(q, st, limit).size(); }},
      {"report-sorted",
       [&](const RankRect& q, QueryStats& st) { return ix.report_sorted(q, st, limit).size(); }},
  };

  const auto sp = ix.space();
  const auto& sc = ix.successor_config();
  Json report;
  report["n"] = sp.n;
  report["n_hat"] = sp.n_hat;
  report["height"] = ix.tree().height();
  report["config"] = {{"ball", ix.ball_config().to_string()},
                      {"stride", ix.tree().stride()},
                      {"block_size", sc.block_size},
                      {"sub_block", sc.sub_block_size},
                      {"subblock_mode", to_string(sc.subblock_mode)},
                      {"pred_mode", to_string(sc.pred_mode)}};
  report["space"] = {{"total_bits", sp.total_bits()}, {"ratio", sp.words_ratio()}};
  report["queries"] = queries.size();
  report["repeat"] = o.repeat;
  report["modes"] = Json::object();

  for (const auto& [name, run] : runners) {
    if (std::find(o.modes.begin(), o.modes.end(), name) == o.modes.end()) continue;
    std::vector<double> wall_ns;
    wall_ns.reserve(queries.size() * o.repeat);
    std::vector<QueryStats> stats;
    stats.reserve(queries.size());
    std::size_t answers = 0;
    for (std::size_t rep = 0; rep < o.repeat; ++rep) {
      for (const auto& q : queries) {
        QueryStats st;
        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t got = run(q, st);
        const auto t1 = std::chrono::steady_clock::now();
        wall_ns.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
        // Counters are deterministic, so one repetition is enough.
        if (rep == 0) {
          stats.push_back(st);
          answers += got;
        }
      }
    }
    std::sort(wall_ns.begin(), wall_ns.end());
    double sum = 0;
    for (double w : wall_ns) sum += w;
    Json m;
    m["wall_ns"] = {{"p50", percentile(wall_ns, 50)},
                    {"p90", percentile(wall_ns, 90)},
                    {"p99", percentile(wall_ns, 99)},
                    {"max", wall_ns.empty() ? 0.0 : wall_ns.back()},
                    {"mean", wall_ns.empty() ? 0.0 : sum / static_cast<double>(wall_ns.size())}};
    m["counters"] = counter_summary(stats);
    m["points_returned"] = answers;
    report["modes"][name] = std::move(m);
  }

  const std::string text = report.dump(2) + "\n";
  if (o.out.empty() || o.out == "-") {
    out << text;
  } else {
    std::ofstream f(o.out);
    if (!f) throw FormatError("cannot open '" + o.out + "' for writing");
    f << text;
    if (!f) throw FormatError("write to '" + o.out + "' failed");
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Static range successor index over 2-D points"};
  app.name("srr");
  app.require_subcommand(1);

  BuildOptions bo;
  auto* build = app.add_subcommand("build", "Build an index from a points file");
  build->add_option("--points", bo.points, "Points file: two integers per line, '#' comments")
      ->required();
  build->add_option("--out", bo.out, "Index file to write")->required();
  build->add_option("--block-size", bo.block_size, "Block size (default ceil(lg^3 n_hat))")
      ->check(CLI::PositiveNumber);
  build->add_option("--sub-block", bo.sub_block, "Sub-block size (default ceil(lg^0.5 n_hat), min 2)")
      ->check(CLI::PositiveNumber);
  build->add_option("--ball", bo.ball, "Point resolution mode: WALK, SKIP, SKIP:t or FULL")
      ->capture_default_str();
  build->add_option("--subblock-mode", bo.subblock_mode, "scan or table")
      ->check(CLI::IsMember({"scan", "table"}))
      ->capture_default_str();
  build->add_option("--pred-mode", bo.pred_mode, "probe or store-y")
      ->check(CLI::IsMember({"probe", "store-y"}))
      ->capture_default_str();

  QueryOptions qo;
  auto* query = app.add_subcommand("query", "Answer queries from a rectangles file");
  query->add_option("--index", qo.index, "Index file")->required();
  query->add_option("--rects", qo.rects, "Rectangles file")->required();
  query->add_option("--mode", qo.mode, "Query type")
      ->required()
      ->check(CLI::IsMember({"leftmost", "lowest", "report", "report-sorted", "oracle-leftmost",
                             "oracle-lowest", "oracle-report-sorted"}));
  query->add_option("--limit", qo.limit, "Maximum points per line for report modes");
  query->footer(kRectHelp);

  BenchOptions bn;
  auto* bench = app.add_subcommand("bench", "Time queries and summarize probe counters as JSON");
  bench->add_option("--index", bn.index, "Index file")->required();
  bench->add_option("--rects", bn.rects, "Rectangles file")->required();
  bench->add_option("--repeat", bn.repeat, "Timed passes over the query file")->required();
  bench->add_option("--out", bn.out, "JSON output file ('-' for standard output)")->required();
  bench->add_option("--modes", bn.modes, "Subset of leftmost, lowest, report, report-sorted")
      ->check(CLI::IsMember({"leftmost", "lowest", "report", "report-sorted"}));
  bench->add_option("--limit", bn.limit, "Maximum points per query for report modes");
  bench->footer(kRectHelp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build(bo, out, err);
    if (query->parsed()) return cmd_query(qo, out);
    return cmd_bench(bn, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace srr::cli
