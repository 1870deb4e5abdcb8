#include "transteg/checksum.hpp"

namespace transteg {

void OnesComplementSum::add(ByteView data) {
  std::size_t i = 0;
  if (odd_ && !data.empty()) {
    acc_ += data[0];
    odd_ = false;
    i = 1;
  }
  for (; i + 1 < data.size(); i += 2) acc_ += load_be16(&data[i]);
  if (i < data.size()) {
    acc_ += std::uint64_t{data[i]} << 8;
    odd_ = true;
  }
}

void OnesComplementSum::add16(std::uint16_t word) {
  std::uint8_t b[2];
  store_be16(b, word);
  add(b);
}

std::uint16_t OnesComplementSum::folded() const {
  std::uint64_t s = acc_;
  while (s >> 16) s = (s & 0xFFFF) + (s >> 16);
  return static_cast<std::uint16_t>(s);
}

std::uint16_t internet_checksum(ByteView data) {
  OnesComplementSum sum;
  sum.add(data);
  return sum.checksum();
}

}  // namespace transteg
