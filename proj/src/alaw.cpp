#include "transteg/alaw.hpp"

#include <string>

#include "transteg/error.hpp"

namespace transteg {
namespace {

// Upper bound (13-bit magnitude) of each of the eight segments.
constexpr int kSegmentEnd[8] = {0x1F, 0x3F, 0x7F, 0xFF, 0x1FF, 0x3FF, 0x7FF, 0xFFF};

}  // namespace

std::uint8_t alaw_compress(std::int16_t sample) {
  int pcm = sample >> 3;
  std::uint8_t mask;
  if (pcm >= 0) {
    mask = 0xD5;
  } else {
    mask = 0x55;
    pcm = -pcm - 1;
  }
  int seg = 0;
  while (seg < 8 && pcm > kSegmentEnd[seg]) ++seg;
  if (seg >= 8) return static_cast<std::uint8_t>(0x7F ^ mask);
  int aval = seg << 4;
  aval |= (seg < 2 ? pcm >> 1 : pcm >> seg) & 0x0F;
  return static_cast<std::uint8_t>(aval ^ mask);
}

std::int16_t alaw_expand(std::uint8_t code) {
  code ^= 0x55;
  int t = (code & 0x0F) << 4;
  const int seg = (code & 0x70) >> 4;
  switch (seg) {
    case 0:
      t += 8;
      break;
    case 1:
      t += 0x108;
      break;
    default:
      t += 0x108;
      t <<= seg - 1;
  }
  return static_cast<std::int16_t>((code & 0x80) ? t : -t);
}

EncodedFrame alaw_encode(const PcmFrame& frame) {
  EncodedFrame out{CodecId::G711, Bytes(kFrameSamples), kFrameSamples * 8};
  for (std::size_t i = 0; i < kFrameSamples; ++i) out.bytes[i] = alaw_compress(frame[i]);
  return out;
}

PcmFrame alaw_decode(const EncodedFrame& frame) {
  if (frame.bytes.size() != kFrameSamples || frame.bit_length != kFrameSamples * 8) {
    throw Error(Errc::WrongLength,
                "A-law frame of " + std::to_string(frame.bytes.size()) + " bytes");
  }
  PcmFrame out;
  for (std::size_t i = 0; i < kFrameSamples; ++i) out[i] = alaw_expand(frame.bytes[i]);
  return out;
}

}  // namespace transteg
