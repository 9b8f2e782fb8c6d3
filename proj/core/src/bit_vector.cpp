#include "srr/bit_vector.hpp"

#include <bit>
#include <string>

namespace srr {

namespace {

// Position (0-based) of the j-th set bit of `word`, j >= 1.
unsigned select_in_word(std::uint64_t word, std::size_t j) {
  for (std::size_t k = 1; k < j; ++k) word &= word - 1;
  return static_cast<unsigned>(std::countr_zero(word));
}

}  // namespace

BitVector::BitVector(std::vector<std::uint64_t> words, std::size_t size)
    : words_(std::move(words)), size_(size) {
  const std::size_t need = (size + 63) / 64;
  if (words_.size() < need) throw InvalidConfig("BitVector: not enough words for size");
  words_.resize(need);
  if (size % 64 != 0 && need > 0) words_.back() &= (std::uint64_t{1} << (size % 64)) - 1;
  build_directory();
}

BitVector BitVector::from_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint64_t> words((bits.size() + 63) / 64, 0);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != 0) words[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
  return BitVector(std::move(words), bits.size());
}

void BitVector::build_directory() {
  const std::size_t nwords = words_.size();
  super_.assign(nwords / kWordsPerSuper + 1, 0);
  block_.assign(nwords + 1, 0);
  select_samples_[0].clear();
  select_samples_[1].clear();

  std::size_t total = 0;
  std::size_t in_super = 0;
  for (std::size_t w = 0; w <= nwords; ++w) {
    if (w % kWordsPerSuper == 0) {
      super_[w / kWordsPerSuper] = total;
      in_super = 0;
    }
    block_[w] = static_cast<std::uint16_t>(in_super);
    if (w == nwords) break;
    const auto pc = static_cast<std::size_t>(std::popcount(words_[w]));
    total += pc;
    in_super += pc;
  }
  ones_ = total;

  // Sample the superblock of every 512th occurrence of each bit value.
  const std::size_t nsuper = super_.size();
  for (int bit = 0; bit < 2; ++bit) {
    const std::size_t occurrences = bit ? ones_ : size_ - ones_;
    auto& samples = select_samples_[bit];
    std::size_t sb = 0;
    for (std::size_t j = 1; j <= occurrences; j += kSelectSample) {
      while (sb + 1 < nsuper && ones_before_super(bit != 0, sb + 1) < j) ++sb;
      samples.push_back(static_cast<std::uint32_t>(sb));
    }
  }
}

void BitVector::check_rank_arg(std::size_t i) const {
  if (i > size_) {
    throw OutOfRange("BitVector::rank: position " + std::to_string(i) + " exceeds length " +
                     std::to_string(size_));
  }
}

bool BitVector::access(std::size_t pos) const {
  if (pos < 1 || pos > size_) {
    throw OutOfRange("BitVector::access: position " + std::to_string(pos) + " outside [1.." +
                     std::to_string(size_) + "]");
  }
  return bit_at(pos - 1);
}

std::size_t BitVector::select1(std::size_t j) const { return select_impl(true, j); }
std::size_t BitVector::select0(std::size_t j) const { return select_impl(false, j); }

std::size_t BitVector::select_impl(bool bit, std::size_t j) const {
  if (j < 1 || j > count(bit)) {
    throw OutOfRange("BitVector::select: occurrence " + std::to_string(j) + " of bit " +
                     std::to_string(bit ? 1 : 0) + " outside [1.." + std::to_string(count(bit)) +
                     "]");
  }
  const auto& samples = select_samples_[bit ? 1 : 0];
  const std::size_t k = (j - 1) / kSelectSample;
  std::size_t lo = samples[k];
  std::size_t hi = k + 1 < samples.size() ? samples[k + 1] : super_.size() - 1;
  // Last superblock with fewer than j occurrences before it.
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (ones_before_super(bit, mid) < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  std::size_t remaining = j - ones_before_super(bit, lo);
  std::size_t w = lo * kWordsPerSuper;
  for (;; ++w) {
    const std::uint64_t word = bit ? words_[w] : ~words_[w];
    const auto pc = static_cast<std::size_t>(std::popcount(word));
    if (pc >= remaining) return w * 64 + select_in_word(word, remaining) + 1;
    remaining -= pc;
  }
}

std::uint64_t BitVector::directory_bits() const noexcept {
  return super_.size() * 64 + block_.size() * 16 +
         (select_samples_[0].size() + select_samples_[1].size()) * 32;
}

void BitVector::save(BinaryWriter& w) const {
  w.put<std::uint64_t>(size_);
  w.put_vector(words_);
}

BitVector BitVector::load(BinaryReader& r) {
  auto size = r.get<std::uint64_t>();
  auto words = r.get_vector<std::uint64_t>();
  if (words.size() != (size + 63) / 64) throw FormatError("BitVector: word count mismatch");
  return BitVector(std::move(words), size);
}

}  // namespace srr
