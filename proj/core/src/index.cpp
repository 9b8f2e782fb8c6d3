#include "srr/index.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

namespace srr {

namespace {

enum class Section : std::uint32_t {
  RankMap = 1,
  RangeTree = 2,
  RmqBundle = 3,
  NodeAux = 4,
};

template <typename Fn>
void write_section(BinaryWriter& out, std::ostream& os, Section tag, Fn&& body) {
  std::ostringstream buf(std::ios::binary);
  BinaryWriter w(buf);
  body(w);
  out.put<std::uint32_t>(static_cast<std::uint32_t>(tag));
  out.put<std::uint64_t>(w.bytes_written());
  const std::string bytes = buf.str();
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// Reads one section header and returns its payload as a stream.
std::istringstream read_section(BinaryReader& in, Section expected) {
  const auto tag = in.get<std::uint32_t>();
  const auto len = in.get<std::uint64_t>();
  if (tag != static_cast<std::uint32_t>(expected)) {
    throw FormatError("index file: expected section " +
                      std::to_string(static_cast<std::uint32_t>(expected)) + ", found " +
                      std::to_string(tag));
  }
  if (len > (std::uint64_t{1} << 40)) throw FormatError("index file: implausible section length");
  return std::istringstream(in.get_bytes(static_cast<std::size_t>(len)), std::ios::binary);
}

}  // namespace

std::uint64_t IndexSpaceReport::total_bits() const {
  return rank_map_bits + tree.level_bits + tree.materialized_bits + tree.point_table_bits +
         rmq_bundle_bits + aux.total();
}

unsigned IndexSpaceReport::lglg() const {
  const auto lg = static_cast<unsigned>(std::countr_zero(std::max<std::size_t>(n_hat, 1)));
  const unsigned v = lg <= 1 ? 0 : static_cast<unsigned>(std::bit_width(lg - 1));
  return std::max(1u, v);
}

double IndexSpaceReport::words_ratio() const {
  if (n == 0) return 0.0;
  return static_cast<double>(total_bits()) / (static_cast<double>(n) * lglg() * 64.0);
}

SrrIndex::SrrIndex(ReducedPoints reduced, const IndexConfig& cfg) : map_(std::move(reduced.map)) {
  build(reduced.points, cfg);
}

SrrIndex::SrrIndex(const PointSet& ps, const IndexConfig& cfg) {
  std::vector<coord_t> ids(ps.size());
  std::iota(ids.begin(), ids.end(), coord_t{1});
  map_ = RankSpaceMap(ids, ids);
  build(ps, cfg);
}

void SrrIndex::build(const PointSet& ps, const IndexConfig& cfg) {
  const auto resolved = resolve_config(cfg.successor, padded_size(ps.size()), ps.size(), &warnings_);
  tree_ = RangeTree(ps, cfg.ball);
  bundle_ = NodeRmqBundle(ps, tree_.height());
  aux_ = NodeAux(ps, tree_.height(), resolved);
}

PointSet SrrIndex::point_set() const {
  std::vector<rank_t> y_of_x(size());
  for (std::size_t x = 1; x <= size(); ++x) y_of_x[x - 1] = tree_.point_by_x(static_cast<rank_t>(x)).y;
  return PointSet(std::move(y_of_x));
}

OptPoint SrrIndex::leftmost(const RankRect& q, QueryStats& stats) const {
  ++stats.successor_calls;
  return leftmost_in_rect(tree_, aux_, q, stats);
}

OptPoint SrrIndex::lowest(const RankRect& q, QueryStats& stats) const {
  return lowest_in_rect_baseline(tree_, bundle_, q, stats);
}

std::vector<Point> SrrIndex::report(const RankRect& q, QueryStats& stats, std::size_t limit) const {
  std::vector<Point> out;
  report_rect(tree_, bundle_, q, [&](Point p) { out.push_back(p); }, limit, stats);
  return out;
}

std::vector<Point> SrrIndex::report_sorted(const RankRect& q, QueryStats& stats, std::size_t k) const {
  return collect_sorted(tree_, aux_, q, k, &stats);
}

IndexSpaceReport SrrIndex::space() const {
  IndexSpaceReport r;
  r.n = tree_.n();
  r.n_hat = tree_.n_hat();
  r.rank_map_bits = (map_.xs_sorted().size() + map_.ys_sorted().size()) * 64;
  r.tree = tree_.space();
  r.rmq_bundle_bits = bundle_.size_in_bits();
  r.aux = aux_.space();
  return r;
}

void SrrIndex::save(std::ostream& os) const {
  BinaryWriter w(os);
  os.write(kMagic, 4);
  w.put<std::uint16_t>(kFormatVersion);
  // Header: sizes and configuration.
  w.put<std::uint64_t>(tree_.n());
  w.put<std::uint64_t>(tree_.n_hat());
  w.put<std::uint8_t>(static_cast<std::uint8_t>(tree_.config().mode));
  w.put<std::uint32_t>(tree_.stride());
  const auto& sc = aux_.config();
  w.put<std::uint64_t>(sc.block_size);
  w.put<std::uint64_t>(sc.sub_block_size);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(sc.subblock_mode));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(sc.pred_mode));

  write_section(w, os, Section::RankMap, [&](BinaryWriter& s) {
    s.put_vector(map_.xs_sorted());
    s.put_vector(map_.ys_sorted());
  });
  write_section(w, os, Section::RangeTree, [&](BinaryWriter& s) { tree_.save(s); });
  write_section(w, os, Section::RmqBundle, [&](BinaryWriter& s) { bundle_.save(s); });
  write_section(w, os, Section::NodeAux, [&](BinaryWriter& s) { aux_.save(s); });
  if (!os) throw FormatError("index file: write failed");
}

SrrIndex SrrIndex::load(std::istream& is) {
  BinaryReader r(is);
  const std::string magic = r.get_bytes(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("index file: bad magic");
  const auto version = r.get<std::uint16_t>();
  if (version != kFormatVersion) {
    throw FormatError("index file: unsupported format version " + std::to_string(version));
  }
  const auto n = r.get<std::uint64_t>();
  const auto n_hat = r.get<std::uint64_t>();
  const auto ball_mode = r.get<std::uint8_t>();
  const auto stride = r.get<std::uint32_t>();
  const auto block_size = r.get<std::uint64_t>();
  const auto sub_block_size = r.get<std::uint64_t>();
  const auto sub_mode = r.get<std::uint8_t>();
  const auto pred_mode = r.get<std::uint8_t>();

  SrrIndex ix;
  {
    auto sec = read_section(r, Section::RankMap);
    BinaryReader s(sec);
    auto xs = s.get_vector<coord_t>();
    auto ys = s.get_vector<coord_t>();
    ix.map_ = RankSpaceMap(std::move(xs), std::move(ys));
  }
  {
    auto sec = read_section(r, Section::RangeTree);
    BinaryReader s(sec);
    ix.tree_ = RangeTree::load(s);
  }
  {
    auto sec = read_section(r, Section::RmqBundle);
    BinaryReader s(sec);
    ix.bundle_ = NodeRmqBundle::load(s);
  }
  {
    auto sec = read_section(r, Section::NodeAux);
    BinaryReader s(sec);
    ix.aux_ = NodeAux::load(s);
  }

  const auto& sc = ix.aux_.config();
  if (ix.tree_.n() != n || ix.tree_.n_hat() != n_hat || ix.map_.size() != n ||
      static_cast<std::uint8_t>(ix.tree_.config().mode) != ball_mode || ix.tree_.stride() != stride ||
      sc.block_size != block_size || sc.sub_block_size != sub_block_size ||
      static_cast<std::uint8_t>(sc.subblock_mode) != sub_mode ||
      static_cast<std::uint8_t>(sc.pred_mode) != pred_mode) {
    throw FormatError("index file: header does not match contents");
  }
  return ix;
}

void SrrIndex::save_file(const std::string& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  save(os);
}

SrrIndex SrrIndex::load_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open '" + path + "'");
  return load(is);
}

}  // namespace srr
