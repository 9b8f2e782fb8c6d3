#include "srr/successor.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace srr {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::size_t ceil_pow(unsigned base, double exponent) {
  if (base == 0) return 0;
  return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(base), exponent) - 1e-9));
}

unsigned table_key_bits(std::size_t s, unsigned rank_bits) {
  return static_cast<unsigned>(s) * rank_bits + rank_bits + 2 * PackedArray::bits_for(s - 1) + 1;
}

unsigned rank_bits_for(std::size_t block_size, std::size_t n) {
  const std::size_t largest = std::min(block_size, n);
  return largest == 0 ? 0 : PackedArray::bits_for(largest - 1);
}

}  // namespace

ResolvedSuccessorConfig resolve_config(const SuccessorConfig& cfg, std::size_t n_hat, std::size_t n,
                                       std::vector<std::string>* warnings) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
    throw InvalidConfig("epsilon must lie in (0, 1)");
  }
  const auto lg = static_cast<unsigned>(std::countr_zero(std::max<std::size_t>(n_hat, 1)));

  ResolvedSuccessorConfig out;
  if (cfg.block_size) {
    if (*cfg.block_size < 1) throw InvalidConfig("block size must be at least 1");
    out.block_size = *cfg.block_size;
  } else {
    out.block_size = std::max<std::size_t>(1, ceil_pow(lg, 3.0));
    // An explicit sub-block size lifts a smaller default block size.
    if (cfg.sub_block_size) out.block_size = std::max(out.block_size, *cfg.sub_block_size);
  }
  if (cfg.sub_block_size) {
    if (*cfg.sub_block_size < 1) throw InvalidConfig("sub-block size must be at least 1");
    if (*cfg.sub_block_size > out.block_size) {
      throw InvalidConfig("sub-block size " + std::to_string(*cfg.sub_block_size) +
                          " exceeds block size " + std::to_string(out.block_size));
    }
    out.sub_block_size = *cfg.sub_block_size;
  } else {
    out.sub_block_size =
        std::min(out.block_size, std::max<std::size_t>(2, ceil_pow(lg, cfg.epsilon)));
  }

  out.pred_mode = cfg.pred_mode;
  out.subblock_mode = SubblockMode::Scan;
  if (cfg.subblock_mode == SubblockMode::Table) {
    const unsigned key = table_key_bits(out.sub_block_size, rank_bits_for(out.block_size, n));
    if (key <= kMaxTableKeyBits) {
      out.subblock_mode = SubblockMode::Table;
      out.table_key_bits = key;
    } else if (warnings != nullptr) {
      warnings->push_back("sub-block table key needs " + std::to_string(key) + " bits (limit " +
                          std::to_string(kMaxTableKeyBits) + "); using scan mode");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// NodeAux construction and layout

NodeAux::NodeAux(const PointSet& ps, unsigned height, const ResolvedSuccessorConfig& cfg)
    : cfg_(cfg), n_(ps.size()), rank_bits_(rank_bits_for(cfg.block_size, ps.size())) {
  const std::size_t n = n_;
  const std::size_t n_hat = std::size_t{1} << height;
  const std::size_t B = cfg_.block_size;
  const std::size_t s = cfg_.sub_block_size;
  const unsigned y_bits = PackedArray::bits_for(n);
  levels_.resize(height + 1);

  for_each_level_sequence(ps, height, [&](unsigned level, std::span<const rank_t> ys,
                                          std::span<const rank_t>) {
    const std::size_t w = n_hat >> level;
    // Count blocks and sub-blocks of the level.
    std::size_t nblocks = 0;
    std::size_t nsub = 0;
    for (std::size_t o = 0; o < n; o += w) {
      const std::size_t m = std::min(w, n - o);
      nblocks += ceil_div(m, B);
      nsub += subblocks_in_length(m);
    }

    Level& L = levels_[level];
    std::vector<std::uint32_t> dmin(nblocks);
    std::vector<std::uint32_t> dmax(nblocks);
    std::vector<std::uint32_t> emin(nsub);
    std::vector<std::uint32_t> emax(nsub);
    L.rank = PackedArray(n, rank_bits_);
    L.rank_to_pos = PackedArray(n, rank_bits_);
    if (cfg_.pred_mode == PredMode::StoreY) L.stored_y = PackedArray(n, y_bits);

    std::size_t g_global = 0;
    std::size_t h_global = 0;
    std::vector<std::size_t> order;
    for (std::size_t o = 0; o < n; o += w) {
      const std::size_t m = std::min(w, n - o);
      for (std::size_t start = o; start < o + m; start += B) {
        const std::size_t len = std::min(B, o + m - start);
        order.resize(len);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t l, std::size_t r) { return ys[start + l] < ys[start + r]; });
        for (std::size_t r = 0; r < len; ++r) {
          L.rank.set(start + order[r], r);
          L.rank_to_pos.set(start + r, order[r]);
          if (cfg_.pred_mode == PredMode::StoreY) L.stored_y.set(start + r, ys[start + order[r]]);
        }
        dmin[g_global] = ys[start + order.front()];
        dmax[g_global] = ys[start + order.back()];
        ++g_global;
        for (std::size_t h = 0; h < len; h += s) {
          const std::size_t hend = std::min(len, h + s);
          std::uint32_t lo = std::numeric_limits<std::uint32_t>::max();
          std::uint32_t hi = 0;
          for (std::size_t p = h; p < hend; ++p) {
            const auto r = static_cast<std::uint32_t>(L.rank[start + p]);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
          }
          emin[h_global] = lo;
          emax[h_global] = hi;
          ++h_global;
        }
      }
    }

    L.d_min = PackedArray(nblocks, y_bits);
    L.d_max = PackedArray(nblocks, y_bits);
    for (std::size_t g = 0; g < nblocks; ++g) {
      L.d_min.set(g, dmin[g]);
      L.d_max.set(g, dmax[g]);
    }
    L.d_min_rmq = RmqIndex::build(dmin, true, false);
    L.d_max_rmq = RmqIndex::build(dmax, false, true);
    L.e_min = PackedArray(nsub, rank_bits_);
    L.e_max = PackedArray(nsub, rank_bits_);
    for (std::size_t h = 0; h < nsub; ++h) {
      L.e_min.set(h, emin[h]);
      L.e_max.set(h, emax[h]);
    }
    L.e_min_rmq = RmqIndex::build(emin, true, false);
    L.e_max_rmq = RmqIndex::build(emax, false, true);
  });

  if (cfg_.subblock_mode == SubblockMode::Table) build_table();
}

std::size_t NodeAux::subblocks_in_length(std::size_t len) const {
  const std::size_t B = cfg_.block_size;
  const std::size_t s = cfg_.sub_block_size;
  return (len / B) * ceil_div(B, s) + ceil_div(len % B, s);
}

std::size_t NodeAux::block_base(const RangeTree& t, NodeRef v) const {
  return v.index * ceil_div(t.width(v), cfg_.block_size);
}

std::size_t NodeAux::subblock_base(const RangeTree& t, NodeRef v, std::size_t g) const {
  return v.index * subblocks_in_length(t.width(v)) + g * ceil_div(cfg_.block_size, cfg_.sub_block_size);
}

std::size_t NodeAux::block_count(const RangeTree& t, NodeRef v) const {
  return ceil_div(t.node_size(v), cfg_.block_size);
}

std::size_t NodeAux::block_length(const RangeTree& t, NodeRef v, std::size_t g) const {
  const std::size_t m = t.node_size(v);
  if (g * cfg_.block_size >= m) throw OutOfRange("block index past the end of S(v)");
  return std::min(cfg_.block_size, m - g * cfg_.block_size);
}

std::size_t NodeAux::subblock_count(const RangeTree& t, NodeRef v, std::size_t g) const {
  return ceil_div(block_length(t, v, g), cfg_.sub_block_size);
}

std::size_t NodeAux::local_rank(const RangeTree& t, NodeRef v, std::size_t g, std::size_t p) const {
  return levels_[v.level].rank[t.offset(v) + g * cfg_.block_size + p - 1] + 1;
}

std::size_t NodeAux::position_of_rank(const RangeTree& t, NodeRef v, std::size_t g,
                                      std::size_t r) const {
  return levels_[v.level].rank_to_pos[t.offset(v) + g * cfg_.block_size + r - 1] + 1;
}

rank_t NodeAux::block_min_y(const RangeTree& t, NodeRef v, std::size_t g) const {
  return static_cast<rank_t>(levels_[v.level].d_min[block_base(t, v) + g]);
}

rank_t NodeAux::block_max_y(const RangeTree& t, NodeRef v, std::size_t g) const {
  return static_cast<rank_t>(levels_[v.level].d_max[block_base(t, v) + g]);
}

std::size_t NodeAux::subblock_min_rank(const RangeTree& t, NodeRef v, std::size_t g,
                                       std::size_t h) const {
  return levels_[v.level].e_min[subblock_base(t, v, g) + h] + 1;
}

std::size_t NodeAux::subblock_max_rank(const RangeTree& t, NodeRef v, std::size_t g,
                                       std::size_t h) const {
  return levels_[v.level].e_max[subblock_base(t, v, g) + h] + 1;
}

// Key layout, low bits first: sub-block ranks (s * rank_bits), threshold
// (rank_bits), p and q offsets (bits_for(s - 1) each), sense (1 bit).
void NodeAux::build_table() {
  const std::size_t s = cfg_.sub_block_size;
  const unsigned rb = rank_bits_;
  const unsigned ob = PackedArray::bits_for(s - 1);
  const unsigned key_bits = table_key_bits(s, rb);
  const std::uint64_t rank_mask = (std::uint64_t{1} << rb) - 1;
  const std::uint64_t off_mask = (std::uint64_t{1} << ob) - 1;
  table_.assign(std::size_t{1} << key_bits, 0xFF);
  for (std::uint64_t key = 0; key < table_.size(); ++key) {
    const std::uint64_t slice = key & ((std::uint64_t{1} << (s * rb)) - 1);
    std::uint64_t rest = key >> (s * rb);
    const std::uint64_t thr = rest & rank_mask;
    rest >>= rb;
    const std::uint64_t p = rest & off_mask;
    rest >>= ob;
    const std::uint64_t q = rest & off_mask;
    rest >>= ob;
    const bool ge = (rest & 1u) != 0;
    if (q >= s) continue;
    for (std::uint64_t o = p; o <= q; ++o) {
      const std::uint64_t r = (slice >> (o * rb)) & rank_mask;
      if (ge ? r >= thr : r <= thr) {
        table_[key] = static_cast<std::uint8_t>(o);
        break;
      }
    }
  }
}

std::optional<std::size_t> NodeAux::table_lookup(unsigned level, std::size_t start, std::size_t p,
                                                 std::size_t q, std::size_t threshold0,
                                                 Threshold sense) const {
  const std::size_t s = cfg_.sub_block_size;
  const unsigned rb = rank_bits_;
  const unsigned ob = PackedArray::bits_for(s - 1);
  std::uint64_t key = levels_[level].rank.raw_bits(start * rb, static_cast<unsigned>(s * rb));
  unsigned shift = static_cast<unsigned>(s * rb);
  key |= static_cast<std::uint64_t>(threshold0) << shift;
  shift += rb;
  key |= static_cast<std::uint64_t>(p) << shift;
  shift += ob;
  key |= static_cast<std::uint64_t>(q) << shift;
  shift += ob;
  key |= static_cast<std::uint64_t>(sense == Threshold::GE ? 1 : 0) << shift;
  const std::uint8_t v = table_[key];
  if (v == 0xFF) return std::nullopt;
  return v;
}

NodeAux::SpaceReport NodeAux::space() const {
  SpaceReport r;
  for (const auto& L : levels_) {
    r.block_summary_bits += L.d_min.size_in_bits() + L.d_max.size_in_bits() +
                            L.d_min_rmq.size_in_bits() + L.d_max_rmq.size_in_bits();
    r.local_rank_bits += L.rank.size_in_bits() + L.rank_to_pos.size_in_bits();
    r.subblock_summary_bits += L.e_min.size_in_bits() + L.e_max.size_in_bits() +
                               L.e_min_rmq.size_in_bits() + L.e_max_rmq.size_in_bits();
    r.stored_y_bits += L.stored_y.size_in_bits();
  }
  r.table_bits = table_.size() * 8;
  return r;
}

void NodeAux::save(BinaryWriter& w) const {
  w.put<std::uint64_t>(cfg_.block_size);
  w.put<std::uint64_t>(cfg_.sub_block_size);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(cfg_.subblock_mode));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(cfg_.pred_mode));
  w.put<std::uint32_t>(cfg_.table_key_bits);
  w.put<std::uint64_t>(n_);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(levels_.size()));
  for (const auto& L : levels_) {
    L.d_min.save(w);
    L.d_max.save(w);
    L.d_min_rmq.save(w);
    L.d_max_rmq.save(w);
    L.rank.save(w);
    L.rank_to_pos.save(w);
    L.e_min.save(w);
    L.e_max.save(w);
    L.e_min_rmq.save(w);
    L.e_max_rmq.save(w);
    L.stored_y.save(w);
  }
}

NodeAux NodeAux::load(BinaryReader& r) {
  NodeAux aux;
  aux.cfg_.block_size = r.get<std::uint64_t>();
  aux.cfg_.sub_block_size = r.get<std::uint64_t>();
  const auto sub_mode = r.get<std::uint8_t>();
  const auto pred_mode = r.get<std::uint8_t>();
  if (sub_mode > 1 || pred_mode > 1) throw FormatError("NodeAux: bad mode");
  aux.cfg_.subblock_mode = static_cast<SubblockMode>(sub_mode);
  aux.cfg_.pred_mode = static_cast<PredMode>(pred_mode);
  aux.cfg_.table_key_bits = r.get<std::uint32_t>();
  aux.n_ = r.get<std::uint64_t>();
  if (aux.cfg_.block_size < 1 || aux.cfg_.sub_block_size < 1 ||
      aux.cfg_.sub_block_size > aux.cfg_.block_size || aux.cfg_.table_key_bits > kMaxTableKeyBits) {
    throw FormatError("NodeAux: bad block configuration");
  }
  aux.rank_bits_ = rank_bits_for(aux.cfg_.block_size, aux.n_);
  const auto count = r.get<std::uint32_t>();
  if (count > 65) throw FormatError("NodeAux: too many levels");
  aux.levels_.resize(count);
  for (auto& L : aux.levels_) {
    L.d_min = PackedArray::load(r);
    L.d_max = PackedArray::load(r);
    L.d_min_rmq = RmqIndex::load(r);
    L.d_max_rmq = RmqIndex::load(r);
    L.rank = PackedArray::load(r);
    L.rank_to_pos = PackedArray::load(r);
    L.e_min = PackedArray::load(r);
    L.e_max = PackedArray::load(r);
    L.e_min_rmq = RmqIndex::load(r);
    L.e_max_rmq = RmqIndex::load(r);
    L.stored_y = PackedArray::load(r);
  }
  if (aux.cfg_.subblock_mode == SubblockMode::Table) {
    if (table_key_bits(aux.cfg_.sub_block_size, aux.rank_bits_) != aux.cfg_.table_key_bits) {
      throw FormatError("NodeAux: table key width mismatch");
    }
    aux.build_table();
  }
  return aux;
}

// ---------------------------------------------------------------------------
// Queries

std::size_t pred_rank_in_block(const RangeTree& t, const NodeAux& aux, NodeRef v, std::size_t g,
                               std::uint64_t d, QueryStats& stats) {
  const std::size_t len = aux.block_length(t, v, g);
  if (d < aux.block_min_y(t, v, g)) return 0;
  if (d >= aux.block_max_y(t, v, g)) return len;

  const std::size_t B = aux.config().block_size;
  const auto& L = aux.level(v.level);
  const std::size_t block_start = t.offset(v) + g * B;
  auto y_of_rank = [&](std::size_t r) -> std::uint64_t {
    ++stats.predecessor_probes;
    if (aux.config().pred_mode == PredMode::StoreY) return L.stored_y[block_start + r - 1];
    const std::size_t pos = g * B + L.rank_to_pos[block_start + r - 1] + 1;
    return t.resolve_point(v, pos, stats).y;
  };
  // Rank 1 (the block minimum) qualifies and rank len does not.
  std::size_t lo = 1;
  std::size_t hi = len - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (y_of_rank(mid) <= d) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::optional<std::size_t> leftmost_in_block(const RangeTree& t, const NodeAux& aux, NodeRef v,
                                             std::size_t g, std::size_t p, std::size_t q,
                                             std::size_t rank_threshold, Threshold sense,
                                             QueryStats& stats, BlockQueryTrace* trace) {
  const std::size_t len = aux.block_length(t, v, g);
  if (p < 1 || p > q || q > len) throw OutOfRange("leftmost_in_block: invalid local range");
  if (sense == Threshold::LE && rank_threshold == 0) return std::nullopt;
  if (sense == Threshold::GE && rank_threshold > len) return std::nullopt;
  // Thresholds on rank - 1, the stored form.
  const std::size_t thr0 = rank_threshold == 0 ? 0 : rank_threshold - 1;

  const auto& cfg = aux.config();
  const std::size_t s = cfg.sub_block_size;
  const auto& L = aux.level(v.level);
  const std::size_t block_start = t.offset(v) + g * cfg.block_size;
  auto qualifies = [&](std::uint64_t r0) { return sense == Threshold::LE ? r0 <= thr0 : r0 >= thr0; };

  auto scan_sub = [&](std::size_t h, std::size_t from, std::size_t to) -> std::optional<std::size_t> {
    ++stats.subblock_scans;
    if (cfg.subblock_mode == SubblockMode::Table) {
      const auto o = aux.table_lookup(v.level, block_start + h * s, from - h * s - 1, to - h * s - 1,
                                      thr0, sense);
      if (!o) return std::nullopt;
      return h * s + *o + 1;
    }
    for (std::size_t pos = from; pos <= to; ++pos) {
      if (qualifies(L.rank[block_start + pos - 1])) return pos;
    }
    return std::nullopt;
  };

  const std::size_t hp = (p - 1) / s;
  const std::size_t hq = (q - 1) / s;
  if (trace != nullptr) trace->subblock_count = ceil_div(len, s);

  if (trace != nullptr) ++trace->boundary_subblocks;
  if (hp == hq) return scan_sub(hp, p, q);
  if (auto hit = scan_sub(hp, p, (hp + 1) * s)) return hit;

  if (hq > hp + 1) {
    const std::size_t base = aux.subblock_base(t, v, g);
    const auto& arr = sense == Threshold::LE ? L.e_min : L.e_max;
    const auto& rmq = sense == Threshold::LE ? L.e_min_rmq : L.e_max_rmq;
    const std::uint64_t probes_before = stats.rmq_probes;
    const auto found = leftmost_beyond(
        rmq, base + hp + 2, base + hq, thr0, sense, [&](std::size_t i) { return arr[i - 1]; }, &stats);
    if (trace != nullptr) trace->e_probes += stats.rmq_probes - probes_before;
    if (found) {
      const std::size_t h = *found - 1 - base;
      if (trace != nullptr) ++trace->middle_subblocks;
      auto hit = scan_sub(h, h * s + 1, (h + 1) * s);
      if (!hit) throw std::logic_error("sub-block selected by its summary holds no qualifying entry");
      return hit;
    }
  }

  if (trace != nullptr) ++trace->boundary_subblocks;
  return scan_sub(hq, hq * s + 1, q);
}

std::optional<NodeHit> leftmost_halfplane_in_node(const RangeTree& t, const NodeAux& aux,
                                                  NodeRef v, rank_t a, rank_t b,
                                                  std::uint64_t threshold, HalfPlane side,
                                                  QueryStats& stats, HalfplaneTrace* trace) {
  const auto range = t.noderange(v, a, b, stats);
  if (!range) return std::nullopt;

  const std::size_t B = aux.config().block_size;
  const auto [first, last] = *range;
  const std::size_t i = (first - 1) / B;
  const std::size_t j = (last - 1) / B;
  if (trace != nullptr) trace->block_count = aux.block_count(t, v);

  // Leftmost hit among node positions [from..to] inside block g.
  auto query_block = [&](std::size_t g, std::size_t from, std::size_t to) -> std::optional<NodeHit> {
    ++stats.block_queries;
    BlockQueryTrace bt;
    bt.block_length = aux.block_length(t, v, g);
    const std::uint64_t pred_before = stats.predecessor_probes;
    std::optional<std::size_t> local;
    if (side == HalfPlane::Below) {
      const std::size_t d_local = pred_rank_in_block(t, aux, v, g, threshold, stats);
      bt.predecessor_probes = stats.predecessor_probes - pred_before;
      if (d_local > 0) {
        local = leftmost_in_block(t, aux, v, g, from - g * B, to - g * B, d_local, Threshold::LE,
                                  stats, &bt);
      }
    } else {
      const std::size_t below = threshold == 0 ? 0 : pred_rank_in_block(t, aux, v, g, threshold - 1, stats);
      bt.predecessor_probes = stats.predecessor_probes - pred_before;
      if (below < bt.block_length) {
        local = leftmost_in_block(t, aux, v, g, from - g * B, to - g * B, below + 1, Threshold::GE,
                                  stats, &bt);
      }
    }
    if (trace != nullptr) trace->blocks.push_back(bt);
    if (!local) return std::nullopt;
    const std::size_t pos = g * B + *local;
    return NodeHit{t.resolve_point(v, pos, stats), pos};
  };

  if (auto hit = query_block(i, first, i == j ? last : (i + 1) * B)) return hit;
  if (i == j) return std::nullopt;

  if (j > i + 1) {
    const std::size_t base = aux.block_base(t, v);
    const auto& L = aux.level(v.level);
    const bool below = side == HalfPlane::Below;
    const auto& arr = below ? L.d_min : L.d_max;
    const std::uint64_t probes_before = stats.rmq_probes;
    const auto found = leftmost_beyond(below ? L.d_min_rmq : L.d_max_rmq, base + i + 2, base + j,
                                       threshold, below ? Threshold::LE : Threshold::GE,
                                       [&](std::size_t k) { return arr[k - 1]; }, &stats);
    if (trace != nullptr) trace->d_probes += stats.rmq_probes - probes_before;
    if (found) {
      const std::size_t l = *found - 1 - base;
      auto hit = query_block(l, l * B + 1, (l + 1) * B);
      if (!hit) throw std::logic_error("block selected by its summary holds no qualifying point");
      return hit;
    }
  }
  return query_block(j, j * B + 1, last);
}

OptPoint leftmost_in_rect(const RangeTree& t, const NodeAux& aux, const RankRect& q,
                          QueryStats& stats, SuccessorTrace* trace) {
  if (!check_rank_rect(t, q)) return std::nullopt;
  const NodeRef v = t.lca_node(q.c, q.d);
  if (t.is_leaf(v)) {
    const Point p = t.point_by_y(q.c);
    if (p.x < q.a || p.x > q.b) return std::nullopt;
    return p;
  }
  const auto left = leftmost_halfplane_in_node(t, aux, v.left(), q.a, q.b, q.c, HalfPlane::Above,
                                               stats, trace != nullptr ? &trace->left : nullptr);
  const auto right = leftmost_halfplane_in_node(t, aux, v.right(), q.a, q.b, q.d, HalfPlane::Below,
                                                stats, trace != nullptr ? &trace->right : nullptr);
  if (!left && !right) return std::nullopt;
  if (!left) return right->point;
  if (!right) return left->point;
  const auto pl = t.translate_edge(v, left->position, EdgeDirection::FromLeftChild);
  const auto pr = t.translate_edge(v, right->position, EdgeDirection::FromRightChild);
  return *pl < *pr ? left->point : right->point;
}

OptPoint lowest_in_rect_baseline(const RangeTree& t, const NodeRmqBundle& bundle,
                                 const RankRect& q, QueryStats& stats) {
  if (!check_rank_rect(t, q)) return std::nullopt;
  const NodeRef v = t.lca_node(q.c, q.d);
  if (t.is_leaf(v)) {
    const Point p = t.point_by_y(q.c);
    if (p.x < q.a || p.x > q.b) return std::nullopt;
    return p;
  }

  const unsigned height = t.height();
  auto on_path = [&](unsigned level) {
    return NodeRef{level, static_cast<std::size_t>(q.c - 1) >> (height - level)};
  };
  // Below the LCA every path node's range holds c but not d, so only the
  // lower bound of Q constrains it.
  auto nonempty = [&](unsigned level) {
    return !emptiness(t, bundle, on_path(level), q.a, q.b, q.c, HalfPlane::Above, stats);
  };

  const bool left_nonempty = nonempty(v.level + 1);
  const bool right_nonempty =
      !emptiness(t, bundle, v.right(), q.a, q.b, q.d, HalfPlane::Below, stats);
  if (!left_nonempty && !right_nonempty) return std::nullopt;

  // Deepest nonempty node on the path; nonemptiness is monotone in depth.
  unsigned lo = left_nonempty ? v.level + 1 : v.level;
  unsigned hi = left_nonempty ? height : v.level;
  while (lo < hi) {
    const unsigned mid = lo + (hi - lo + 1) / 2;
    if (nonempty(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }

  const NodeRef vf = on_path(lo);
  if (t.is_leaf(vf)) return t.point_by_y(q.c);
  if (((q.c - 1) >> (height - lo - 1)) & 1u) {
    throw std::logic_error("deepest nonempty path node continues to its right child");
  }
  const NodeRef r = vf.right();
  const auto range = t.noderange(r, q.a, q.b, stats);
  if (!range) throw std::logic_error("deepest nonempty path node has an empty right child");
  OptPoint best;
  report_halfplane(t, bundle, r, range->first, range->second, q.d, HalfPlane::Below,
                   [&](Point p) { best = p; }, 1, stats);
  if (!best) throw std::logic_error("right child of the deepest nonempty node reported nothing");
  return best;
}

}  // namespace srr
