#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "srr/serialize.hpp"
#include "srr/types.hpp"

namespace srr {

/// Static bit sequence with rank and select.
///
/// Positions are 1-based: rank(bit, i) counts occurrences of `bit` among
/// positions 1..i and select(bit, j) returns the position of the j-th
/// occurrence. Layout is a two-level rank directory (512-bit superblocks with
/// absolute counts, 64-bit words with 16-bit relative counts) plus one select
/// sample per 512 occurrences of each bit value.
class BitVector {
 public:
  BitVector() { build_directory(); }
  /// `words` holds bit k of the sequence at words[k / 64] >> (k % 64).
  BitVector(std::vector<std::uint64_t> words, std::size_t size);
  static BitVector from_bits(std::span<const std::uint8_t> bits);

  std::size_t size() const noexcept { return size_; }
  std::size_t count_ones() const noexcept { return ones_; }
  std::size_t count(bool bit) const noexcept { return bit ? ones_ : size_ - ones_; }

  bool access(std::size_t pos) const;

  std::size_t rank1(std::size_t i) const {
    check_rank_arg(i);
    return rank1_unchecked(i);
  }
  std::size_t rank0(std::size_t i) const { return i - rank1(i); }
  std::size_t rank(bool bit, std::size_t i) const { return bit ? rank1(i) : rank0(i); }

  std::size_t select1(std::size_t j) const;
  std::size_t select0(std::size_t j) const;
  std::size_t select(bool bit, std::size_t j) const { return bit ? select1(j) : select0(j); }

  /// Raw 0-based bit read, no bounds check.
  bool bit_at(std::size_t k) const noexcept { return (words_[k >> 6] >> (k & 63)) & 1u; }
  std::size_t rank1_unchecked(std::size_t i) const noexcept {
    const std::size_t w = i >> 6;
    std::size_t r = super_[i >> 9] + block_[w];
    if (const unsigned off = i & 63; off != 0) {
      r += static_cast<std::size_t>(std::popcount(words_[w] & ((std::uint64_t{1} << off) - 1)));
    }
    return r;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::uint64_t raw_bits() const noexcept { return words_.size() * 64; }
  std::uint64_t directory_bits() const noexcept;
  std::uint64_t size_in_bits() const noexcept { return raw_bits() + directory_bits(); }

  /// Only the raw words are stored; the directory is rebuilt on load.
  void save(BinaryWriter& w) const;
  static BitVector load(BinaryReader& r);

 private:
  static constexpr std::size_t kWordsPerSuper = 8;
  static constexpr std::size_t kSuperBits = 64 * kWordsPerSuper;
  static constexpr std::size_t kSelectSample = 512;

  void build_directory();
  void check_rank_arg(std::size_t i) const;
  std::size_t select_impl(bool bit, std::size_t j) const;
  std::size_t ones_before_super(bool bit, std::size_t sb) const noexcept {
    return bit ? super_[sb] : sb * kSuperBits - super_[sb];
  }

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
  std::size_t ones_ = 0;
  std::vector<std::uint64_t> super_;   // ones before each superblock
  std::vector<std::uint16_t> block_;   // ones before each word, relative to its superblock
  std::vector<std::uint32_t> select_samples_[2];  // superblock holding occurrence k*512+1
};

}  // namespace srr
