#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "srr/types.hpp"

namespace srr {

// Little-endian binary stream helpers used by the index file format.

class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& os) : os_(os) {}

  template <typename T>
    requires std::is_integral_v<T>
  void put(T value) {
    using U = std::make_unsigned_t<T>;
    U u = static_cast<U>(value);
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf[i] = static_cast<unsigned char>(u & 0xFFu);
      if constexpr (sizeof(T) > 1) u = static_cast<U>(u >> 8);
    }
    os_.write(reinterpret_cast<const char*>(buf), sizeof(T));
    bytes_ += sizeof(T);
  }

  template <typename T>
  void put_vector(const std::vector<T>& v) {
    put<std::uint64_t>(v.size());
    for (const T& x : v) put<T>(x);
  }

  void put_bytes(const std::string& s) {
    os_.write(s.data(), static_cast<std::streamsize>(s.size()));
    bytes_ += s.size();
  }

  std::uint64_t bytes_written() const noexcept { return bytes_; }
  bool good() const { return os_.good(); }

 private:
  std::ostream& os_;
  std::uint64_t bytes_ = 0;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::istream& is) : is_(is) {}

  template <typename T>
    requires std::is_integral_v<T>
  T get() {
    using U = std::make_unsigned_t<T>;
    unsigned char buf[sizeof(T)];
    is_.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (is_.gcount() != static_cast<std::streamsize>(sizeof(T))) {
      throw FormatError("index file truncated");
    }
    U u = 0;
    for (std::size_t i = sizeof(T); i-- > 0;) {
      if constexpr (sizeof(T) > 1) u = static_cast<U>(u << 8);
      u = static_cast<U>(u | buf[i]);
    }
    return static_cast<T>(u);
  }

  template <typename T>
  std::vector<T> get_vector(std::uint64_t max_len = std::uint64_t{1} << 40) {
    auto len = get<std::uint64_t>();
    if (len > max_len) throw FormatError("index file: implausible vector length");
    std::vector<T> v;
    v.reserve(len);
    for (std::uint64_t i = 0; i < len; ++i) v.push_back(get<T>());
    return v;
  }

  std::string get_bytes(std::size_t count) {
    std::string s(count, '\0');
    is_.read(s.data(), static_cast<std::streamsize>(count));
    if (is_.gcount() != static_cast<std::streamsize>(count)) throw FormatError("index file truncated");
    return s;
  }

 private:
  std::istream& is_;
};

}  // namespace srr
