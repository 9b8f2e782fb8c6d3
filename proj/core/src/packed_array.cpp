#include "srr/packed_array.hpp"

#include <bit>

namespace srr {

PackedArray::PackedArray(std::size_t size, unsigned width)
    : words_((size * width + 63) / 64, 0),
      size_(size),
      width_(width),
      mask_(width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1) {
  if (width > 64) throw InvalidConfig("PackedArray: width above 64");
}

PackedArray PackedArray::from_values(std::span<const std::uint64_t> values, unsigned width) {
  PackedArray a(values.size(), width);
  for (std::size_t i = 0; i < values.size(); ++i) a.set(i, values[i]);
  return a;
}

void PackedArray::set(std::size_t i, std::uint64_t value) {
  if (width_ == 0) return;
  value &= mask_;
  const std::size_t bit = i * width_;
  const std::size_t w = bit >> 6;
  const unsigned off = bit & 63;
  words_[w] = (words_[w] & ~(mask_ << off)) | (value << off);
  if (off + width_ > 64) {
    const unsigned spill = off + width_ - 64;
    const std::uint64_t hi_mask = (std::uint64_t{1} << spill) - 1;
    words_[w + 1] = (words_[w + 1] & ~hi_mask) | (value >> (64 - off));
  }
}

std::uint64_t PackedArray::raw_bits(std::size_t bit_offset, unsigned nbits) const {
  if (nbits == 0) return 0;
  const std::size_t w = bit_offset >> 6;
  const unsigned off = bit_offset & 63;
  if (w >= words_.size()) return 0;
  std::uint64_t v = words_[w] >> off;
  if (off != 0 && off + nbits > 64 && w + 1 < words_.size()) v |= words_[w + 1] << (64 - off);
  return nbits >= 64 ? v : v & ((std::uint64_t{1} << nbits) - 1);
}

unsigned PackedArray::bits_for(std::uint64_t max_value) {
  return max_value == 0 ? 0 : static_cast<unsigned>(std::bit_width(max_value));
}

void PackedArray::save(BinaryWriter& w) const {
  w.put<std::uint64_t>(size_);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(width_));
  w.put_vector(words_);
}

PackedArray PackedArray::load(BinaryReader& r) {
  auto size = r.get<std::uint64_t>();
  auto width = r.get<std::uint8_t>();
  PackedArray a(size, width);
  auto words = r.get_vector<std::uint64_t>();
  if (words.size() != a.words_.size()) throw FormatError("PackedArray: word count mismatch");
  a.words_ = std::move(words);
  return a;
}

}  // namespace srr
