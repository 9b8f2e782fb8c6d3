#include "srr/rmq.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <string>

namespace srr {

namespace {

// Per-byte excess summaries for bits read LSB first, 1 = +1, 0 = -1.
struct ByteExcess {
  std::array<std::int8_t, 256> total{};
  std::array<std::int8_t, 256> min_prefix{};
  std::array<std::uint8_t, 256> last_min{};

  constexpr ByteExcess() {
    for (int v = 0; v < 256; ++v) {
      int e = 0;
      int best = std::numeric_limits<int>::max();
      int at = 0;
      for (int b = 0; b < 8; ++b) {
        e += ((v >> b) & 1) ? 1 : -1;
        if (e <= best) {
          best = e;
          at = b;
        }
      }
      total[v] = static_cast<std::int8_t>(e);
      min_prefix[v] = static_cast<std::int8_t>(best);
      last_min[v] = static_cast<std::uint8_t>(at);
    }
  }
};

constexpr ByteExcess kByte{};

constexpr std::size_t kSuperWords = 8;
constexpr std::size_t kSuperBits = 64 * kSuperWords;

}  // namespace

CartesianRmq::CartesianRmq(std::span<const std::uint32_t> values, Sense sense)
    : size_(values.size()), sense_(sense) {
  std::vector<std::uint64_t> words((2 * values.size() + 63) / 64, 0);
  std::size_t nbits = 0;
  std::vector<std::uint32_t> stack;
  stack.reserve(64);
  auto beaten = [&](std::uint32_t top, std::uint32_t incoming) {
    return sense == Sense::Min ? top > incoming : top < incoming;
  };
  for (std::uint32_t v : values) {
    while (!stack.empty() && beaten(stack.back(), v)) {
      stack.pop_back();
      ++nbits;  // a 0 bit
    }
    stack.push_back(v);
    words[nbits >> 6] |= std::uint64_t{1} << (nbits & 63);
    ++nbits;
  }
  bp_ = BitVector(std::move(words), nbits);
  build_summaries();
}

CartesianRmq::CartesianRmq(BitVector bp, std::size_t size, Sense sense)
    : bp_(std::move(bp)), size_(size), sense_(sense) {
  if (bp_.count_ones() != size_) throw FormatError("CartesianRmq: parentheses do not match size");
  build_summaries();
}

void CartesianRmq::build_summaries() {
  const std::size_t nbits = bp_.size();
  const auto& words = bp_.words();
  const std::size_t nwords = words.size();
  const std::size_t nsuper = (nwords + kSuperWords - 1) / kSuperWords;

  word_min_.assign(nwords, 0);
  super_min_.assign(nsuper, std::numeric_limits<std::int32_t>::max());
  std::int64_t e = 0;
  for (std::size_t w = 0; w < nwords; ++w) {
    const std::size_t valid = std::min<std::size_t>(64, nbits - w * 64);
    std::int64_t rel = 0;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t b = 0; b < valid; ++b) {
      rel += ((words[w] >> b) & 1u) ? 1 : -1;
      best = std::min(best, rel);
    }
    word_min_[w] = static_cast<std::int8_t>(best);
    auto& sm = super_min_[w / kSuperWords];
    sm = static_cast<std::int32_t>(std::min<std::int64_t>(sm, e + best));
    e += rel;
  }

  sparse_.clear();
  if (nsuper == 0) return;
  std::vector<std::uint32_t> level0(nsuper);
  for (std::size_t s = 0; s < nsuper; ++s) level0[s] = static_cast<std::uint32_t>(s);
  sparse_.push_back(std::move(level0));
  for (std::size_t k = 1; (std::size_t{1} << k) <= nsuper; ++k) {
    const auto& prev = sparse_.back();
    const std::size_t half = std::size_t{1} << (k - 1);
    std::vector<std::uint32_t> cur(nsuper - (std::size_t{1} << k) + 1);
    for (std::size_t s = 0; s < cur.size(); ++s) {
      const auto l = prev[s];
      const auto r = prev[s + half];
      cur[s] = super_min_[r] <= super_min_[l] ? r : l;
    }
    sparse_.push_back(std::move(cur));
  }
}

// Last position of the minimum excess over bits [lo..hi]; e_before is the
// excess just before bit lo.
CartesianRmq::MinAt CartesianRmq::scan(std::size_t lo, std::size_t hi,
                                       std::int64_t e_before) const noexcept {
  const auto& words = bp_.words();
  MinAt best{std::numeric_limits<std::int64_t>::max(), -1};
  std::int64_t e = e_before;
  std::size_t p = lo;
  while (p <= hi) {
    if ((p & 7) == 0 && p + 7 <= hi) {
      const unsigned byte = static_cast<unsigned>((words[p >> 6] >> (p & 63)) & 0xFFu);
      const std::int64_t cand = e + kByte.min_prefix[byte];
      if (cand <= best.value) best = {cand, static_cast<std::int64_t>(p + kByte.last_min[byte])};
      e += kByte.total[byte];
      p += 8;
    } else {
      e += bp_.bit_at(p) ? 1 : -1;
      if (e <= best.value) best = {e, static_cast<std::int64_t>(p)};
      ++p;
    }
  }
  return best;
}

std::size_t CartesianRmq::best_super(std::size_t s1, std::size_t s2) const noexcept {
  const std::size_t len = s2 - s1 + 1;
  const auto k = static_cast<std::size_t>(std::bit_width(len) - 1);
  const auto l = sparse_[k][s1];
  const auto r = sparse_[k][s2 + 1 - (std::size_t{1} << k)];
  if (super_min_[r] <= super_min_[l]) return std::max(l, r);
  return l;
}

CartesianRmq::MinAt CartesianRmq::last_min(std::size_t lo, std::size_t hi) const noexcept {
  const std::size_t wl = lo >> 6;
  const std::size_t wh = hi >> 6;
  if (wh - wl <= 1) return scan(lo, hi, excess_before(lo));

  enum class Unit { Bit, Word, Super };
  MinAt best = scan(lo, wl * 64 + 63, excess_before(lo));
  Unit unit = Unit::Bit;
  auto consider_word = [&](std::size_t w) {
    const std::int64_t cand = excess_before(w * 64) + word_min_[w];
    if (cand <= best.value) {
      best = {cand, static_cast<std::int64_t>(w)};
      unit = Unit::Word;
    }
  };

  const std::size_t sl = wl / kSuperWords;
  const std::size_t sh = wh / kSuperWords;
  if (sl == sh) {
    for (std::size_t w = wl + 1; w < wh; ++w) consider_word(w);
  } else {
    for (std::size_t w = wl + 1; w < (sl + 1) * kSuperWords; ++w) consider_word(w);
    if (sl + 1 < sh) {
      const std::size_t s = best_super(sl + 1, sh - 1);
      if (super_min_[s] <= best.value) {
        best = {super_min_[s], static_cast<std::int64_t>(s)};
        unit = Unit::Super;
      }
    }
    for (std::size_t w = sh * kSuperWords; w < wh; ++w) consider_word(w);
  }

  const MinAt tail = scan(wh * 64, hi, excess_before(wh * 64));
  if (tail.value <= best.value) return tail;

  if (unit == Unit::Super) {
    const auto s = static_cast<std::size_t>(best.pos);
    for (std::size_t w = (s + 1) * kSuperWords; w-- > s * kSuperWords;) {
      if (excess_before(w * 64) + word_min_[w] == best.value) {
        best = {best.value, static_cast<std::int64_t>(w)};
        unit = Unit::Word;
        break;
      }
    }
  }
  if (unit == Unit::Word) {
    const auto w = static_cast<std::size_t>(best.pos);
    return scan(w * 64, w * 64 + 63, excess_before(w * 64));
  }
  return best;
}

std::size_t CartesianRmq::argopt(std::size_t i, std::size_t j) const {
  if (i == j) return i;
  const std::size_t open_i = bp_.select1(i) - 1;
  const std::size_t open_j = bp_.select1(j) - 1;
  const MinAt m = last_min(open_i, open_j);
  if (m.value == excess_before(open_i + 1)) return i;
  return bp_.rank1_unchecked(static_cast<std::size_t>(m.pos) + 2);
}

std::uint64_t CartesianRmq::size_in_bits() const noexcept {
  std::uint64_t bits = bp_.size_in_bits() + word_min_.size() * 8 + super_min_.size() * 32;
  for (const auto& lvl : sparse_) bits += lvl.size() * 32;
  return bits;
}

void CartesianRmq::save(BinaryWriter& w) const {
  w.put<std::uint64_t>(size_);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(sense_));
  bp_.save(w);
}

CartesianRmq CartesianRmq::load(BinaryReader& r) {
  auto size = r.get<std::uint64_t>();
  auto sense = r.get<std::uint8_t>();
  if (sense > 1) throw FormatError("CartesianRmq: bad sense");
  return CartesianRmq(BitVector::load(r), size, static_cast<Sense>(sense));
}

RmqIndex RmqIndex::build(std::span<const std::uint32_t> values, bool with_min, bool with_max) {
  RmqIndex ix;
  ix.size_ = values.size();
  ix.has_min_ = with_min;
  ix.has_max_ = with_max;
  if (with_min) ix.min_ = CartesianRmq(values, Sense::Min);
  if (with_max) ix.max_ = CartesianRmq(values, Sense::Max);
  return ix;
}

std::size_t RmqIndex::argopt(std::size_t i, std::size_t j, Sense sense) const {
  if (i < 1 || i > j || j > size_) {
    throw OutOfRange("RmqIndex::argopt: range [" + std::to_string(i) + ".." + std::to_string(j) +
                     "] invalid for length " + std::to_string(size_));
  }
  if (!has(sense)) throw InvalidConfig("RmqIndex::argopt: sense not built");
  return argopt_unchecked(i, j, sense);
}

std::uint64_t RmqIndex::size_in_bits() const noexcept {
  return (has_min_ ? min_.size_in_bits() : 0) + (has_max_ ? max_.size_in_bits() : 0);
}

void RmqIndex::save(BinaryWriter& w) const {
  w.put<std::uint64_t>(size_);
  w.put<std::uint8_t>(static_cast<std::uint8_t>((has_min_ ? 1 : 0) | (has_max_ ? 2 : 0)));
  if (has_min_) min_.save(w);
  if (has_max_) max_.save(w);
}

RmqIndex RmqIndex::load(BinaryReader& r) {
  RmqIndex ix;
  ix.size_ = r.get<std::uint64_t>();
  const auto flags = r.get<std::uint8_t>();
  ix.has_min_ = (flags & 1) != 0;
  ix.has_max_ = (flags & 2) != 0;
  if (ix.has_min_) ix.min_ = CartesianRmq::load(r);
  if (ix.has_max_) ix.max_ = CartesianRmq::load(r);
  if ((ix.has_min_ && ix.min_.size() != ix.size_) || (ix.has_max_ && ix.max_.size() != ix.size_)) {
    throw FormatError("RmqIndex: size mismatch");
  }
  return ix;
}

}  // namespace srr
