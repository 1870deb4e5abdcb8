#pragma once

#include <cstdint>

#include "transteg/bytes.hpp"

namespace transteg {

/// Running RFC 1071 one's-complement accumulator. Segments may have odd
/// lengths; byte parity is carried across `add` calls.
class OnesComplementSum {
 public:
  void add(ByteView data);
  void add16(std::uint16_t word);

  /// Folded 16-bit one's-complement sum (not complemented).
  std::uint16_t folded() const;
  /// Complement of the folded sum, i.e. the value placed in a checksum field.
  std::uint16_t checksum() const { return static_cast<std::uint16_t>(~folded()); }

 private:
  std::uint64_t acc_ = 0;
  bool odd_ = false;
};

/// Internet checksum of a single contiguous buffer.
std::uint16_t internet_checksum(ByteView data);

}  // namespace transteg
