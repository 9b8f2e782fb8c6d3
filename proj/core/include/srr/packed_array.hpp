#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srr/serialize.hpp"

namespace srr {

/// Fixed-width unsigned integer array packed into 64-bit words.
class PackedArray {
 public:
  PackedArray() = default;
  PackedArray(std::size_t size, unsigned width);
  static PackedArray from_values(std::span<const std::uint64_t> values, unsigned width);

  std::uint64_t operator[](std::size_t i) const {
    if (width_ == 0) return 0;
    const std::size_t bit = i * width_;
    const std::size_t w = bit >> 6;
    const unsigned off = bit & 63;
    std::uint64_t v = words_[w] >> off;
    if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
    return v & mask_;
  }
  void set(std::size_t i, std::uint64_t value);
  /// `nbits` (<= 64) raw bits starting at bit `bit_offset`; bits past the end read as 0.
  std::uint64_t raw_bits(std::size_t bit_offset, unsigned nbits) const;

  std::size_t size() const noexcept { return size_; }
  unsigned width() const noexcept { return width_; }
  std::uint64_t size_in_bits() const noexcept { return words_.size() * 64; }

  void save(BinaryWriter& w) const;
  static PackedArray load(BinaryReader& r);

  /// Bits needed to store any value in [0..max_value].
  static unsigned bits_for(std::uint64_t max_value);

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
  unsigned width_ = 0;
  std::uint64_t mask_ = 0;
};

}  // namespace srr
