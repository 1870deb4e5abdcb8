#pragma once

#include <array>
#include <cstdint>

#include "transteg/bytes.hpp"
#include "transteg/codec_registry.hpp"

namespace transteg {

/// 20 ms of 8 kHz, 16-bit mono audio.
using PcmFrame = std::array<std::int16_t, kFrameSamples>;

/// One coded frame. Bits are packed MSB-first into `bytes`; any pad bits in
/// the final byte are zero.
struct EncodedFrame {
  CodecId codec_id = CodecId::G711;
  Bytes bytes;
  std::size_t bit_length = 0;

  std::size_t byte_length() const { return (bit_length + 7) / 8; }

  friend bool operator==(const EncodedFrame&, const EncodedFrame&) = default;
};

}  // namespace transteg
