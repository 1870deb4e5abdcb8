#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace transteg {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline std::uint16_t load_be16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

inline std::uint32_t load_be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
         std::uint32_t{p[3]};
}

inline void store_be16(std::uint8_t* p, std::uint16_t v) {
  p[0] = static_cast<std::uint8_t>(v >> 8);
  p[1] = static_cast<std::uint8_t>(v);
}

inline void store_be32(std::uint8_t* p, std::uint32_t v) {
  p[0] = static_cast<std::uint8_t>(v >> 24);
  p[1] = static_cast<std::uint8_t>(v >> 16);
  p[2] = static_cast<std::uint8_t>(v >> 8);
  p[3] = static_cast<std::uint8_t>(v);
}

inline void append_be16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void append_be32(Bytes& out, std::uint32_t v) {
  append_be16(out, static_cast<std::uint16_t>(v >> 16));
  append_be16(out, static_cast<std::uint16_t>(v));
}

/// MSB-first bit packer. Trailing bits of the last byte stay zero.
class BitWriter {
 public:
  void put(std::uint32_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) put_bit((value >> i) & 1u);
  }

  void put_bit(unsigned bit) {
    if (bit_len_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bit_len_ % 8));
    ++bit_len_;
  }

  std::size_t bit_length() const { return bit_len_; }
  const Bytes& bytes() const { return bytes_; }
  Bytes take() { return std::move(bytes_); }

 private:
  Bytes bytes_;
  std::size_t bit_len_ = 0;
};

/// MSB-first bit reader over a bounded bit range. Reading past the end sets
/// `exhausted()` and yields zeros.
class BitReader {
 public:
  BitReader(ByteView data, std::size_t bit_length) : data_(data), limit_(bit_length) {}

  unsigned get_bit() {
    if (pos_ >= limit_) {
      exhausted_ = true;
      return 0;
    }
    const unsigned bit = (data_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return bit;
  }

  std::uint32_t get(unsigned width) {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | get_bit();
    return v;
  }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return pos_ < limit_ ? limit_ - pos_ : 0; }
  bool exhausted() const { return exhausted_; }

 private:
  ByteView data_;
  std::size_t limit_;
  std::size_t pos_ = 0;
  bool exhausted_ = false;
};

}  // namespace transteg
